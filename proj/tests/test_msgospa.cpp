#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gospa/msgospa.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace gospa;
using gospa::testing::random_posterior;

namespace {

PosteriorState make_post(double p_absent, const std::vector<double>& w, const std::vector<Point>& pts) {
    PosteriorState post;
    post.p_absent = p_absent;
    post.w_post = w;
    auto locs = std::make_shared<std::vector<Point>>(pts);
    post.estimate_e = Point::Zero();
    for (std::size_t k = 0; k < w.size(); ++k) post.estimate_e += w[k] * pts[k];
    post.locations = locs;
    return post;
}

/// Expected squared GOSPA to a fixed estimate, summed hypothesis by hypothesis.
double brute_expected(const PosteriorState& post, const TargetSet& estimate, double c) {
    const GospaParams params{2.0, c};
    double sum = 0.0;
    for (std::size_t i = 0; i <= post.size(); ++i) {
        TargetSet truth;
        if (i > 0) truth.push_back((*post.locations)[i - 1]);
        const double d = gospa::gospa(truth, estimate, params).total;
        sum += post.p_hyp(i) * d * d;
    }
    return sum;
}

}  // namespace

TEST_CASE("phi branch examples") {
    const GospaParams params;
    CHECK(ms_gospa_phi(make_post(1.0, {1.0}, {Point(0, 0)}), params) == 0.0);
    CHECK(ms_gospa_phi(make_post(0.0, {1.0}, {Point(0, 0)}), params) == 50.0);
    const double p0 = 0.2 / 0.52;
    CHECK(ms_gospa_phi(make_post(p0, {1.0}, {Point(0, 0)}), params) == doctest::Approx(30.77).epsilon(1e-3));
}

TEST_CASE("estimate branch examples") {
    const GospaParams params;
    CHECK(ms_gospa_estimate(make_post(0.3, {0.5, 0.5}, {Point(2, 2), Point(2, 2)}), params) ==
          doctest::Approx(15.0).epsilon(1e-13));
    CHECK(ms_gospa_estimate(make_post(0.0, {0.5, 0.5}, {Point(0, 0), Point(6, 0)}), params) ==
          doctest::Approx(9.0).epsilon(1e-13));
    // Weighted mean at the origin; the hypothesis at 18 km is truncated to c.
    const auto far = make_post(0.0, {0.1, 0.9}, {Point(18, 0), Point(-2, 0)});
    REQUIRE(far.estimate_e.norm() < 1e-12);
    CHECK(ms_gospa_estimate(far, params) == doctest::Approx(100.0 * 0.1 + 4.0 * 0.9).epsilon(1e-13));
}

TEST_CASE("minimum and tie rule") {
    const GospaParams params;
    const auto tight = make_post(0.9, {0.5, 0.5}, {Point(0, 0), Point(0.1, 0)});
    const auto r1 = mms_gospa(tight, params);
    CHECK(r1.chosen == EstimateChoice::Phi);
    CHECK(r1.mms == doctest::Approx(5.0).epsilon(1e-13));

    const auto sure = make_post(0.0, {1.0}, {Point(3, 3)});
    const auto r2 = mms_gospa(sure, params);
    CHECK(r2.mms == 0.0);
    CHECK(r2.chosen == EstimateChoice::Estimate);

    const auto tie = make_post(0.5, {1.0}, {Point(3, 3)});
    const auto r3 = mms_gospa(tie, params);
    CHECK(r3.cost_phi == 25.0);
    CHECK(r3.cost_est == 25.0);
    CHECK(r3.chosen == EstimateChoice::Phi);
}

TEST_CASE("closed forms match brute force through the GOSPA metric") {
    std::mt19937_64 gen(41);
    std::uniform_int_distribution<int> size(1, 20);
    for (int trial = 0; trial < 500; ++trial) {
        const auto post = random_posterior(gen, size(gen));
        for (double c : {10.0, 4.0}) {
            const GospaParams params{2.0, c};
            CHECK(std::abs(ms_gospa_phi(post, params) - brute_expected(post, {}, c)) <= 1e-9);
            CHECK(std::abs(ms_gospa_estimate(post, params) - brute_expected(post, {post.estimate_e}, c)) <= 1e-9);
            const auto r = mms_gospa(post, params);
            const auto fp = mms_gospa_first_principles(post, params);
            CHECK(std::abs(r.mms - fp.mms) <= 1e-9);
            CHECK(r.mms == std::min(r.cost_phi, r.cost_est));
            CHECK(r.mms <= r.cost_phi);
            CHECK(r.mms <= r.cost_est);
            CHECK(r.mms >= 0.0);
            CHECK(r.cost_phi <= c * c / 2.0 + 1e-12);
            CHECK(r.cost_est <= c * c + 1e-9);
        }
    }
}

TEST_CASE("permutation of hypotheses leaves the minimum unchanged") {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 100; ++trial) {
        auto post = random_posterior(gen, 8);
        const double before = mms_gospa(post, {}).mms;
        std::vector<std::size_t> order(post.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::shuffle(order.begin(), order.end(), gen);
        PosteriorState perm = post;
        auto locs = std::make_shared<std::vector<Point>>();
        for (std::size_t k = 0; k < order.size(); ++k) {
            perm.w_post[k] = post.w_post[order[k]];
            locs->push_back((*post.locations)[order[k]]);
        }
        perm.locations = locs;
        CHECK(mms_gospa(perm, {}).mms == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("moment expansion of the estimate branch") {
    std::mt19937_64 gen(43);
    int truncated_cases = 0;
    int literal_mismatches = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto post = random_posterior(gen, 10);
        const GospaParams params;
        const double direct = ms_gospa_estimate(post, params);
        CHECK(ms_gospa_estimate_moments(post, params, false) == doctest::Approx(direct).epsilon(1e-9));
        bool any_far = false;
        for (const auto& x : *post.locations) any_far = any_far || (x - post.estimate_e).norm() > params.c;
        const double literal = ms_gospa_estimate_moments(post, params, true);
        if (!any_far) {
            CHECK(literal == doctest::Approx(direct).epsilon(1e-9));
        } else {
            ++truncated_cases;
            if (std::abs(literal - direct) > 1e-6) ++literal_mismatches;
        }
    }
    // The literal form drops the retained-mass factor, which shows up only
    // when some hypothesis is truncated.
    CHECK(truncated_cases > 0);
    CHECK(literal_mismatches == truncated_cases);
}

TEST_CASE("only p equal to two is supported") {
    const auto post = make_post(0.5, {1.0}, {Point(0, 0)});
    CHECK_THROWS_AS((void)mms_gospa(post, {1.0, 10.0}), Error);
}
