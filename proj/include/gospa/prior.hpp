#pragma once

#include "gospa/types.hpp"

#include <cstddef>
#include <vector>

namespace gospa {

struct Hypothesis {
    double weight = 0.0;  ///< w_i, existence-conditional
    Point location = Point::Zero();
};

/// Bernoulli target with a Dirac-mixture state density. Hypothesis index 0
/// denotes "no target"; indices 1..n map to hypotheses[0..n-1].
struct BernoulliDiracPrior {
    double r = 0.0;
    std::vector<Hypothesis> hypotheses;

    [[nodiscard]] std::size_t size() const { return hypotheses.size(); }
    /// Location of hypothesis i >= 1.
    [[nodiscard]] const Point& location(std::size_t i) const { return hypotheses[i - 1].location; }
    void validate() const;

    /// Equal weights over the given points.
    static BernoulliDiracPrior uniform(double r, const std::vector<Point>& points);
};

/// p(x_i): r*w_i for i > 0 and 1 - r for i = 0.
double prior_probability(const BernoulliDiracPrior& prior, std::size_t i);

}  // namespace gospa
