#include "gospa/prior.hpp"

#include <cmath>
#include <string>

namespace gospa {

void BernoulliDiracPrior::validate() const {
    require(std::isfinite(r) && r >= 0.0 && r <= 1.0, "existence probability r must lie in [0, 1]");
    require(!hypotheses.empty(), "prior needs at least one hypothesis");
    double total = 0.0;
    for (const auto& h : hypotheses) {
        require(std::isfinite(h.weight) && h.weight > 0.0, "hypothesis weights must be positive");
        require(h.location.allFinite(), "hypothesis locations must be finite");
        total += h.weight;
    }
    require(std::abs(total - 1.0) <= 1e-12 * static_cast<double>(hypotheses.size()) + 1e-12,
            "hypothesis weights must sum to 1");
}

BernoulliDiracPrior BernoulliDiracPrior::uniform(double r, const std::vector<Point>& points) {
    require(!points.empty(), "prior needs at least one hypothesis");
    BernoulliDiracPrior prior;
    prior.r = r;
    const double w = 1.0 / static_cast<double>(points.size());
    for (const auto& p : points) prior.hypotheses.push_back({w, p});
    prior.validate();
    return prior;
}

double prior_probability(const BernoulliDiracPrior& prior, std::size_t i) {
    if (i > prior.size())
        throw Error(ErrorKind::IndexOutOfRange, "hypothesis index " + std::to_string(i) + " out of range");
    if (i == 0) return 1.0 - prior.r;
    return prior.r * prior.hypotheses[i - 1].weight;
}

}  // namespace gospa
