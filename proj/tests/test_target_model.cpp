#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gospa/target_model.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>

using namespace gospa;

namespace {

/// Linear-domain likelihood written out case by case.
double likelihood_oracle(const MeasurementScan& scan, const Point* x, const Action& a, const SensorModel& s) {
    const bool visible = x && a.is_observe() && (*x - a.center).norm() <= s.fov_radius();
    if (scan.points.empty()) return visible ? 1.0 - s.p_d() : 1.0;
    if (!visible) return s.clutter_rate();
    double sum = 0.0;
    const Covariance inv = s.meas_cov().inverse();
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(s.meas_cov().determinant()));
    for (const auto& z : scan.points) {
        const Point d = z - *x;
        sum += norm * std::exp(-0.5 * d.dot(inv * d));
    }
    return s.clutter_rate() * (1.0 - s.p_d()) + s.p_d() * sum;
}

/// Direct Bayes: p(x_i | Z) proportional to p(x_i) times the likelihood product.
std::vector<double> bayes_oracle(const BernoulliDiracPrior& prior, const History& h, const SensorModel& s) {
    std::vector<double> mass(prior.size() + 1);
    for (std::size_t i = 0; i <= prior.size(); ++i) {
        double m = prior_probability(prior, i);
        for (const auto& [a, z] : h) m *= likelihood_oracle(z, i == 0 ? nullptr : &prior.location(i), a, s);
        mass[i] = m;
    }
    double total = 0.0;
    for (double m : mass) total += m;
    for (double& m : mass) m /= total;
    return mass;
}

struct RandomCase {
    BernoulliDiracPrior prior;
    SensorModel sensor;
    History history;
};

RandomCase random_case(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coord(-12.0, 12.0);
    std::uniform_int_distribution<int> count(1, 6);
    const int n = count(gen);
    BernoulliDiracPrior prior;
    prior.r = 0.05 + 0.9 * unit(gen);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        prior.hypotheses.push_back({unit(gen) + 0.05, Point(coord(gen), coord(gen))});
        total += prior.hypotheses.back().weight;
    }
    for (auto& h : prior.hypotheses) h.weight /= total;
    RandomCase rc{prior, SensorModel::isotropic(8.0, 0.3 + 0.6 * unit(gen), 0.01, 3.0), {}};
    for (int t = 0; t < 3; ++t) {
        Action a = unit(gen) < 0.2 ? Action::no_observation() : Action::observe(Point(coord(gen), coord(gen)));
        MeasurementScan z;
        if (a.is_observe()) {
            const int m = count(gen) - 1;
            for (int k = 0; k < m; ++k) z.points.emplace_back(a.center.x() + coord(gen) / 2, a.center.y());
        }
        rc.history.emplace_back(a, z);
    }
    return rc;
}

}  // namespace

TEST_CASE("prior probabilities") {
    const auto one = BernoulliDiracPrior::uniform(0.8, {Point(0, 0)});
    CHECK(prior_probability(one, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(prior_probability(one, 0) == doctest::Approx(0.2).epsilon(1e-15));
    std::vector<Point> pts(100, Point(1, 2));
    const auto many = BernoulliDiracPrior::uniform(0.8, pts);
    CHECK(prior_probability(many, 5) == doctest::Approx(0.008).epsilon(1e-13));
    CHECK_THROWS_AS((void)prior_probability(many, 101), Error);
}

TEST_CASE("prior validation") {
    BernoulliDiracPrior p;
    p.r = 0.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p.hypotheses = {{0.4, Point(0, 0)}, {0.4, Point(1, 0)}};
    CHECK_THROWS_AS(p.validate(), Error);
    p.hypotheses[1].weight = 0.6;
    CHECK_NOTHROW(p.validate());
    p.r = 1.2;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("ELPF likelihood examples") {
    const auto prior = BernoulliDiracPrior::uniform(0.8, {Point(0, 0), Point(30, 0)});
    const auto s = SensorModel::isotropic(10.0, 0.6, 0.0, 0.5);
    const auto a = Action::observe(Point(0, 0));
    CHECK(elpf_likelihood({}, 2, a, s, prior) == 1.0);
    CHECK(elpf_likelihood({}, 0, a, s, prior) == 1.0);
    CHECK(elpf_likelihood({}, 1, a, s, prior) == doctest::Approx(0.4).epsilon(1e-14));
    const double peak = 0.6 / (2.0 * std::numbers::pi * 0.25);
    CHECK(elpf_likelihood({{Point(0, 0)}}, 1, a, s, prior) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(elpf_likelihood({{Point(0, 0)}}, 2, a, s, prior) == 0.0);
    CHECK_THROWS_AS((void)elpf_likelihood({}, 3, a, s, prior), Error);
}

TEST_CASE("likelihood matches the linear-domain oracle") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rc = random_case(gen);
        for (const auto& [a, z] : rc.history) {
            for (std::size_t i = 0; i <= rc.prior.size(); ++i) {
                const double expected =
                    likelihood_oracle(z, i == 0 ? nullptr : &rc.prior.location(i), a, rc.sensor);
                CHECK(elpf_likelihood(z, i, a, rc.sensor, rc.prior) ==
                      doctest::Approx(expected).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("single missed detection") {
    const auto prior = BernoulliDiracPrior::uniform(0.8, {Point(0, 0)});
    const auto s = SensorModel::isotropic(10.0, 0.6, 0.0, 1e-5);
    const auto post = update_posterior(prior, {{Action::observe(Point(0, 0)), {}}}, s);
    CHECK(post.p_hyp(0) == doctest::Approx(0.2 / (0.2 + 0.8 * 0.4)).epsilon(1e-13));
    CHECK(post.p_hyp(0) == doctest::Approx(0.3846).epsilon(1e-4));
}

TEST_CASE("empty history returns the prior") {
    BernoulliDiracPrior prior{0.7, {{0.25, Point(0, 0)}, {0.75, Point(4, 0)}}};
    const auto post = initial_posterior(prior);
    CHECK(post.p_hyp(0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(post.p_hyp(1) == doctest::Approx(0.175).epsilon(1e-14));
    CHECK(post.estimate_e.x() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(update_posterior(prior, {}, SensorModel::isotropic(5.0, 0.5, 0.1, 1.0)).p_hyp(2) ==
          doctest::Approx(0.525).epsilon(1e-14));
}

TEST_CASE("empty scan away from all hypotheses leaves the prior unchanged") {
    BernoulliDiracPrior prior{0.6, {{0.5, Point(0, 0)}, {0.5, Point(4, 0)}}};
    const auto s = SensorModel::isotropic(2.0, 0.9, 0.0, 1.0);
    const auto post = update_posterior(prior, {{Action::observe(Point(50, 50)), {}}}, s);
    CHECK(post.p_hyp(0) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(post.w_post[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("posterior matches direct Bayes and is normalised") {
    std::mt19937_64 gen(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto rc = random_case(gen);
        const auto post = update_posterior(rc.prior, rc.history, rc.sensor);
        const auto oracle = bayes_oracle(rc.prior, rc.history, rc.sensor);
        double total = 0.0, w_total = 0.0;
        Point e = Point::Zero();
        for (std::size_t i = 0; i <= rc.prior.size(); ++i) {
            CHECK(std::abs(post.p_hyp(i) - oracle[i]) <= 1e-10);
            total += post.p_hyp(i);
        }
        for (std::size_t k = 0; k < post.size(); ++k) {
            w_total += post.w_post[k];
            e += post.w_post[k] * rc.prior.hypotheses[k].location;
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
        CHECK(std::abs(w_total - 1.0) <= 1e-10);
        CHECK((e - post.estimate_e).norm() <= 1e-10);
        for (std::size_t i = 1; i <= post.size(); ++i) {
            for (std::size_t j = 1; j <= post.size(); ++j) {
                if (post.p_hyp(j) <= 1e-300 || post.w_post[j - 1] <= 1e-300) continue;
                CHECK(post.p_hyp(i) / post.p_hyp(j) ==
                      doctest::Approx(post.w_post[i - 1] / post.w_post[j - 1]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("sequential updates compose to the batch update") {
    std::mt19937_64 gen(33);
    for (int trial = 0; trial < 200; ++trial) {
        const auto rc = random_case(gen);
        auto state = initial_posterior(rc.prior);
        for (const auto& [a, z] : rc.history) state = update_posterior(state, a, z, rc.sensor);
        const auto batch = update_posterior(rc.prior, rc.history, rc.sensor);
        for (std::size_t i = 0; i <= batch.size(); ++i)
            CHECK(state.p_hyp(i) == doctest::Approx(batch.p_hyp(i)).epsilon(1e-10));
    }
}

TEST_CASE("a measurement without clutter implies existence") {
    const auto prior = BernoulliDiracPrior::uniform(0.3, {Point(0, 0), Point(3, 0)});
    const auto s = SensorModel::isotropic(10.0, 0.6, 0.0, 1.0);
    const auto post = update_posterior(prior, {{Action::observe(Point(0, 0)), {{Point(2.9, 0)}}}}, s);
    CHECK(post.p_hyp(0) == 0.0);
    CHECK(post.w_post[1] > post.w_post[0]);
}

TEST_CASE("long histories do not underflow") {
    const auto prior = BernoulliDiracPrior::uniform(0.5, {Point(0, 0), Point(1, 0)});
    const auto s = SensorModel::isotropic(10.0, 0.9, 0.0, 0.01);
    History h(400, {Action::observe(Point(0, 0)), {{Point(0.001, 0)}}});
    const auto post = update_posterior(prior, h, s);
    CHECK(post.p_hyp(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("impossible history is reported") {
    const auto prior = BernoulliDiracPrior::uniform(0.5, {Point(0, 0)});
    const auto s = SensorModel::isotropic(1.0, 0.6, 0.0, 1.0);
    try {
        (void)update_posterior(prior, {{Action::observe(Point(20, 0)), {{Point(20, 0)}}}}, s);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegeneratePosterior);
    }
}
