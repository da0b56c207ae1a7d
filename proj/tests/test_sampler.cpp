#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gospa/sampler.hpp"

#include <cmath>
#include <memory>
#include <random>

using namespace gospa;

namespace {

/// Closed form for one hypothesis with exact measurements: a detection
/// reveals the target (cost 0), a missed detection leaves r'.
double demo_observe_oracle(double r, double p_d, double c) {
    const double miss = 1.0 - r * p_d;
    if (miss <= 0.0) return 0.0;
    const double r_post = r * (1.0 - p_d) / miss;
    return miss * c * c / 2.0 * std::min(r_post, 1.0 - r_post);
}

std::vector<BranchNode> leaves(const BernoulliDiracPrior& prior, const std::vector<Action>& actions,
                               const SensorModel& sensor, int n_h, bool absorb) {
    ExpandContext ctx{&sensor, GospaParams{}, 5, absorb};
    std::vector<BranchNode> nodes{
        make_root(std::make_shared<const PosteriorState>(initial_posterior(prior)), n_h, ctx.params)};
    for (std::size_t t = 0; t < actions.size(); ++t) {
        std::vector<BranchNode> next;
        for (const auto& node : nodes) {
            auto children = expand(node, actions[t], static_cast<int>(t + 1), ctx);
            next.insert(next.end(), children.begin(), children.end());
        }
        nodes = std::move(next);
    }
    return nodes;
}

}  // namespace

TEST_CASE("one step with one hypothesis has three weighted branches") {
    const auto prior = BernoulliDiracPrior::uniform(0.5, {Point(0, 0)});
    const auto sensor = SensorModel::isotropic(10.0, 0.6, 0.0, 1e-10);
    const auto nodes = leaves(prior, {Action::observe(Point(0, 0))}, sensor, 1, false);
    std::size_t particles = 0;
    double mass = 0.0;
    for (const auto& n : nodes) {
        particles += n.particles.size();
        for (const auto& p : n.particles) mass += p.weight;
    }
    CHECK(particles == 3);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("positive-probability sequences match direct enumeration") {
    std::mt19937_64 gen(51);
    std::uniform_real_distribution<double> coord(-12.0, 12.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 4; ++k) pts.emplace_back(coord(gen), coord(gen));
        const auto prior = BernoulliDiracPrior::uniform(0.7, pts);
        const auto sensor = SensorModel::isotropic(8.0, 0.6, 0.0, 1e-3);
        const int t = 1 + trial % 3;
        std::vector<Action> actions;
        for (int k = 0; k < t; ++k) actions.push_back(Action::observe(Point(coord(gen), coord(gen))));
        const int n_h = 2;
        std::size_t expected = 0;
        for (std::size_t i = 0; i <= prior.size(); ++i) {
            for (int code = 0; code < (1 << t); ++code) {
                DetectionSequence seq;
                for (int k = 0; k < t; ++k) seq.push_back((code >> k) & 1);
                if (detection_seq_prob(seq, i, actions, sensor, prior) > 0.0) expected += n_h;
            }
        }
        std::size_t particles = 0;
        for (const auto& n : leaves(prior, actions, sensor, n_h, false)) particles += n.particles.size();
        CHECK(particles == expected);
    }
}

TEST_CASE("no observation gives the prior cost exactly") {
    BernoulliDiracPrior prior{0.6, {{0.3, Point(0, 0)}, {0.7, Point(5, 1)}}};
    const auto sensor = SensorModel::isotropic(10.0, 0.6, 0.01, 1.0);
    const double expected = mms_gospa(initial_posterior(prior), {}).mms;
    SamplerConfig cfg{3, 7, 9};
    CHECK(amms_gospa_efficient(prior, {Action::no_observation()}, sensor, {}, cfg).value ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(amms_gospa_general(prior, {Action::no_observation()}, sensor, {}, cfg).value ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(conditional_amms_gospa(initial_posterior(prior), 0, Action::no_observation(), sensor, {}, cfg).value ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("blind sensor reproduces the prior cost for any sample count") {
    BernoulliDiracPrior prior{0.6, {{0.3, Point(0, 0)}, {0.7, Point(5, 1)}}};
    const auto sensor = SensorModel::isotropic(10.0, 0.0, 0.0, 1.0);
    const double expected = mms_gospa(initial_posterior(prior), {}).mms;
    const std::vector<Action> a{Action::observe(Point(0, 0)), Action::observe(Point(4, 0))};
    for (int m : {1, 5, 50})
        CHECK(amms_gospa_general(prior, a, sensor, {}, {1, m, 3}).value == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("exact measurements reproduce the single-hypothesis closed form") {
    for (double r : {0.0, 0.1, 0.5, 0.7, 0.95, 1.0}) {
        const auto prior = BernoulliDiracPrior::uniform(r, {Point(0, 0)});
        const auto sensor = SensorModel::isotropic(10.0, 0.6, 0.0, 1e-10);
        const double expected = demo_observe_oracle(r, 0.6, 10.0);
        const auto eff = amms_gospa_efficient(prior, {Action::observe(Point(0, 0))}, sensor, {}, {1, 1, 1});
        CHECK(eff.value == doctest::Approx(expected).epsilon(1e-12));
        const auto gen = amms_gospa_general(prior, {Action::observe(Point(0, 0))}, sensor, {}, {1, 100000, 2});
        CHECK(std::abs(gen.value - expected) <= 3.0 * gen.std_error + 1e-12);
    }
}

TEST_CASE("perfect detection of a covered target") {
    const auto prior = BernoulliDiracPrior::uniform(0.5, {Point(0, 0)});
    const auto sensor = SensorModel::isotropic(10.0, 1.0, 0.0, 1e-10);
    CHECK(amms_gospa_efficient(prior, {Action::observe(Point(1, 1))}, sensor, {}, {}).value == 0.0);
}

TEST_CASE("general and efficient estimators agree statistically") {
    BernoulliDiracPrior prior{0.8, {{0.2, Point(0, 0)}, {0.3, Point(6, 0)}, {0.5, Point(3, 8)}}};
    const std::vector<Action> a{Action::observe(Point(0, 0)), Action::observe(Point(6, 4))};
    for (double rate : {0.0, 0.01}) {
        const auto sensor = SensorModel::isotropic(7.0, 0.7, rate, 1.0);
        const auto eff = amms_gospa_efficient(prior, a, sensor, {}, {1000, 1, 11});
        const auto gen = amms_gospa_general(prior, a, sensor, {}, {1, 100000, 12});
        const double se = std::sqrt(eff.std_error * eff.std_error + gen.std_error * gen.std_error);
        CHECK(eff.std_error > 0.0);
        CHECK(std::abs(eff.value - gen.value) <= 3.0 * se);
    }
}

TEST_CASE("general estimator via the metric equals the closed form") {
    BernoulliDiracPrior prior{0.8, {{0.5, Point(0, 0)}, {0.5, Point(6, 0)}}};
    const auto sensor = SensorModel::isotropic(7.0, 0.7, 0.01, 1.0);
    const std::vector<Action> a{Action::observe(Point(0, 0)), Action::observe(Point(6, 4))};
    const SamplerConfig cfg{1, 200, 4};
    CHECK(amms_gospa_general(prior, a, sensor, {}, cfg, true).value ==
          doctest::Approx(amms_gospa_general(prior, a, sensor, {}, cfg, false).value).epsilon(1e-10));
}

TEST_CASE("estimators are deterministic for a fixed seed") {
    BernoulliDiracPrior prior{0.8, {{0.5, Point(0, 0)}, {0.5, Point(6, 0)}}};
    const auto sensor = SensorModel::isotropic(7.0, 0.7, 0.01, 1.0);
    const std::vector<Action> a{Action::observe(Point(0, 0)), Action::observe(Point(6, 4))};
    const SamplerConfig cfg{4, 50, 8};
    CHECK(amms_gospa_efficient(prior, a, sensor, {}, cfg).value ==
          amms_gospa_efficient(prior, a, sensor, {}, cfg).value);
    CHECK(amms_gospa_general(prior, a, sensor, {}, cfg).value == amms_gospa_general(prior, a, sensor, {}, cfg).value);
    const auto quiet = SensorModel::isotropic(7.0, 0.7, 0.0, 1e-10);
    CHECK(amms_gospa_efficient(prior, a, quiet, {}, {1, 1, 1}).value ==
          amms_gospa_efficient(prior, a, quiet, {}, {1, 1, 99}).value);
}

TEST_CASE("absorbing collapsed branches does not change the estimate") {
    std::mt19937_64 gen(52);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 5; ++k) pts.emplace_back(coord(gen), coord(gen));
        const auto prior = BernoulliDiracPrior::uniform(0.8, pts);
        const auto sensor = SensorModel::isotropic(8.0, 0.8, 0.0, 1e-5);
        std::vector<Action> a;
        for (int k = 0; k < 3; ++k) a.push_back(Action::observe(Point(coord(gen), coord(gen))));
        const SamplerConfig cfg{2, 1, 17};
        CHECK(amms_gospa_efficient(prior, a, sensor, {}, cfg, true).value ==
              doctest::Approx(amms_gospa_efficient(prior, a, sensor, {}, cfg, false).value).epsilon(1e-12));
    }
}

TEST_CASE("conditional estimate at the first step equals the efficient one") {
    BernoulliDiracPrior prior{0.8, {{0.2, Point(0, 0)}, {0.3, Point(6, 0)}, {0.5, Point(3, 8)}}};
    const auto sensor = SensorModel::isotropic(7.0, 0.7, 0.01, 1.0);
    const auto a = Action::observe(Point(2, 2));
    const SamplerConfig cfg{5, 1, 21};
    CHECK(conditional_amms_gospa(initial_posterior(prior), 0, a, sensor, {}, cfg).value ==
          doctest::Approx(amms_gospa_efficient(prior, {a}, sensor, {}, cfg).value).epsilon(1e-12));
}

TEST_CASE("conditional estimate for a certainly absent target is zero") {
    BernoulliDiracPrior prior{0.0, {{1.0, Point(0, 0)}}};
    const auto sensor = SensorModel::isotropic(7.0, 0.7, 0.0, 1.0);
    CHECK(conditional_amms_gospa(initial_posterior(prior), 2, Action::observe(Point(0, 0)), sensor, {}, {}).value ==
          0.0);
}

TEST_CASE("estimates are bounded") {
    std::mt19937_64 gen(53);
    std::uniform_real_distribution<double> coord(-15.0, 15.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 4; ++k) pts.emplace_back(coord(gen), coord(gen));
        const auto prior = BernoulliDiracPrior::uniform(unit(gen), pts);
        const auto sensor = SensorModel::isotropic(8.0, unit(gen), 0.01 * unit(gen), 2.0);
        const std::vector<Action> a{Action::observe(Point(coord(gen), coord(gen))),
                                    Action::observe(Point(coord(gen), coord(gen)))};
        const auto est = amms_gospa_efficient(prior, a, sensor, {}, {3, 1, 5});
        CHECK(est.value >= 0.0);
        CHECK(est.value <= 50.0 + 1e-9);
    }
}

TEST_CASE("horizon and configuration limits") {
    const auto prior = BernoulliDiracPrior::uniform(0.5, {Point(0, 0)});
    const auto sensor = SensorModel::isotropic(10.0, 0.6, 0.0, 1.0);
    const std::vector<Action> five(5, Action::observe(Point(0, 0)));
    try {
        (void)amms_gospa_efficient(prior, five, sensor, {}, {});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HorizonCap);
    }
    CHECK_THROWS_AS((void)amms_gospa_efficient(prior, {}, sensor, {}, {}), Error);
    CHECK_THROWS_AS((void)amms_gospa_efficient(prior, {Action::no_observation()}, sensor, {}, {0, 1, 1}), Error);
    CHECK_THROWS_AS((void)amms_gospa_general(prior, {Action::no_observation()}, sensor, {}, {1, 0, 1}), Error);
}
