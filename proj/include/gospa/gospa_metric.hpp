#pragma once

#include "gospa/types.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace gospa {

/// Parameters of the GOSPA metric. The cardinality-mismatch exponent alpha is
/// pinned to 2, which is what allows the localisation / missed / false split.
struct GospaParams {
    double p = 2.0;   ///< metric order, 1 <= p < inf
    double c = 10.0;  ///< cutoff, km
    static constexpr double alpha = 2.0;

    void validate() const;
};

using TargetSet = std::vector<Point>;
using Assignment = std::vector<std::pair<std::size_t, std::size_t>>;

struct GospaBreakdown {
    double total = 0.0;                ///< km
    double localisation_cost_p = 0.0;  ///< sum of assigned d^p, km^p
    int missed_count = 0;              ///< unassigned elements of X
    int false_count = 0;               ///< unassigned elements of Y
    Assignment assignment;             ///< (index in X, index in Y)
};

/// Largest cardinality for which the assignment is found by enumeration.
inline constexpr std::size_t kMaxExhaustiveCardinality = 8;

/// GOSPA distance (alpha = 2) between X (ground truth) and Y (estimates).
/// Exhaustive over all partial assignments; throws SetTooLarge beyond
/// kMaxExhaustiveCardinality elements in either set.
GospaBreakdown gospa(const TargetSet& x, const TargetSet& y, const GospaParams& params);

/// Squared GOSPA with p = 2 between sets of at most one element each. Shares
/// the arithmetic of the general path, so results are bit-identical.
double gospa_squared_singleton(const Point* x, const Point* y, double c);

}  // namespace gospa
