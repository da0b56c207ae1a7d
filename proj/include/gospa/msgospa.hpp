#pragma once

#include "gospa/gospa_metric.hpp"
#include "gospa/target_model.hpp"

namespace gospa {

enum class EstimateChoice { Phi, Estimate };

/// Mean squared GOSPA (p = 2) of the two candidate estimates, in km^2.
struct MsGospaResult {
    double cost_phi = 0.0;
    double cost_est = 0.0;
    double mms = 0.0;
    EstimateChoice chosen = EstimateChoice::Phi;
};

/// Cost of reporting no target: (c^2/2)(1 - p_0).
double ms_gospa_phi(const PosteriorState& post, const GospaParams& params);

/// Cost of reporting X_e, using the truncated squared distance per hypothesis.
double ms_gospa_estimate(const PosteriorState& post, const GospaParams& params);

/// Minimum of the two; ties resolve to Phi.
MsGospaResult mms_gospa(const PosteriorState& post, const GospaParams& params);

/// Same quantity evaluated hypothesis by hypothesis through gospa().
MsGospaResult mms_gospa_first_principles(const PosteriorState& post, const GospaParams& params);

/// Estimate-branch cost written with weighted coordinate moments.
/// With `literal` the cross term E_w[x]^2 is not scaled by the retained
/// mass (1 - T_w); that form only agrees with ms_gospa_estimate when no
/// hypothesis lies beyond c of the estimate.
double ms_gospa_estimate_moments(const PosteriorState& post, const GospaParams& params, bool literal);

}  // namespace gospa
