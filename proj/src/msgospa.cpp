#include "gospa/msgospa.hpp"

namespace gospa {

namespace {

void check_params(const GospaParams& params) {
    params.validate();
    require(params.p == 2.0, "MS-GOSPA is defined for p = 2");
}

MsGospaResult pick(double phi, double est) {
    MsGospaResult out;
    out.cost_phi = phi;
    out.cost_est = est;
    if (est < phi) {
        out.mms = est;
        out.chosen = EstimateChoice::Estimate;
    } else {
        out.mms = phi;
        out.chosen = EstimateChoice::Phi;
    }
    return out;
}

}  // namespace

double ms_gospa_phi(const PosteriorState& post, const GospaParams& params) {
    check_params(params);
    return 0.5 * params.c * params.c * (1.0 - post.p_absent);
}

double ms_gospa_estimate(const PosteriorState& post, const GospaParams& params) {
    check_params(params);
    const double c2 = params.c * params.c;
    const auto& locs = *post.locations;
    double spread = 0.0;
    for (std::size_t k = 0; k < post.size(); ++k) {
        const double w = post.w_post[k];
        if (w == 0.0) continue;
        const double d2 = (locs[k] - post.estimate_e).squaredNorm();
        spread += w * (d2 <= c2 ? d2 : c2);
    }
    return 0.5 * c2 * post.p_absent + (1.0 - post.p_absent) * spread;
}

MsGospaResult mms_gospa(const PosteriorState& post, const GospaParams& params) {
    return pick(ms_gospa_phi(post, params), ms_gospa_estimate(post, params));
}

MsGospaResult mms_gospa_first_principles(const PosteriorState& post, const GospaParams& params) {
    check_params(params);
    const TargetSet empty;
    const TargetSet estimate{post.estimate_e};
    auto squared = [&](const TargetSet& x, const TargetSet& y) {
        const double d = gospa(x, y, params).total;
        return d * d;
    };
    double phi = post.p_absent * squared(empty, empty);
    double est = post.p_absent * squared(empty, estimate);
    const auto& locs = *post.locations;
    for (std::size_t i = 1; i <= post.size(); ++i) {
        const double p = post.p_hyp(i);
        if (p == 0.0) continue;
        const TargetSet truth{locs[i - 1]};
        phi += p * squared(truth, empty);
        est += p * squared(truth, estimate);
    }
    return pick(phi, est);
}

double ms_gospa_estimate_moments(const PosteriorState& post, const GospaParams& params, bool literal) {
    check_params(params);
    const double c = params.c;
    const auto& locs = *post.locations;
    double retained = 0.0;
    Point e_under = Point::Zero();
    Point e2_under = Point::Zero();
    Point e_all = Point::Zero();
    for (std::size_t k = 0; k < post.size(); ++k) {
        const double w = post.w_post[k];
        const Point& x = locs[k];
        e_all += w * x;
        if ((x - post.estimate_e).norm() <= c) {
            retained += w;
            e_under += w * x;
            e2_under += w * x.cwiseProduct(x);
        }
    }
    const double truncated = 1.0 - retained;
    const double cross_scale = literal ? 1.0 : retained;
    double spread = 0.0;
    for (int l = 0; l < 2; ++l)
        spread += e2_under[l] + cross_scale * e_all[l] * e_all[l] - 2.0 * e_under[l] * e_all[l];
    return 0.5 * c * c * post.p_absent + (1.0 - post.p_absent) * (spread + c * c * truncated);
}

}  // namespace gospa
