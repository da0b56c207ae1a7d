#include "gospa/gospa_metric.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gospa {

void GospaParams::validate() const {
    require(std::isfinite(c) && c > 0.0, "GOSPA cutoff c must be positive");
    require(std::isfinite(p) && p >= 1.0, "GOSPA order p must satisfy 1 <= p < inf");
}

namespace {

double distance_pow(const Point& a, const Point& b, double p) {
    const double sq = (a - b).squaredNorm();
    if (p == 2.0) return sq;
    return std::pow(std::sqrt(sq), p);
}

double combine(double localisation, double half_cp, int unassigned) {
    return localisation + half_cp * static_cast<double>(unassigned);
}

double root(double cost_p, double p) {
    if (p == 2.0) return std::sqrt(cost_p);
    if (p == 1.0) return cost_p;
    return std::pow(cost_p, 1.0 / p);
}

struct Search {
    const TargetSet& x;
    const TargetSet& y;
    double p;
    double half_cp;
    std::vector<std::vector<double>> dist_p;
    std::vector<bool> used;
    Assignment current;
    Assignment best;
    double best_cost = std::numeric_limits<double>::infinity();

    void run(std::size_t i, double localisation) {
        if (i == x.size()) {
            const int matched = static_cast<int>(current.size());
            const int unassigned = static_cast<int>(x.size() + y.size()) - 2 * matched;
            const double cost = combine(localisation, half_cp, unassigned);
            if (cost < best_cost) {
                best_cost = cost;
                best = current;
            }
            return;
        }
        // Leaving x_i unassigned is explored first, so exact ties keep the
        // smaller assignment.
        run(i + 1, localisation);
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.emplace_back(i, j);
            run(i + 1, localisation + dist_p[i][j]);
            current.pop_back();
            used[j] = false;
        }
    }
};

}  // namespace

GospaBreakdown gospa(const TargetSet& x, const TargetSet& y, const GospaParams& params) {
    params.validate();
    if (x.size() > kMaxExhaustiveCardinality || y.size() > kMaxExhaustiveCardinality) {
        throw Error(ErrorKind::SetTooLarge,
                    "GOSPA set too large for exhaustive assignment (max " +
                        std::to_string(kMaxExhaustiveCardinality) + " elements)");
    }

    Search search{x, y, params.p, 0.5 * std::pow(params.c, params.p), {}, {}, {}, {}};
    search.dist_p.assign(x.size(), std::vector<double>(y.size(), 0.0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            search.dist_p[i][j] = distance_pow(x[i], y[j], params.p);
    search.used.assign(y.size(), false);
    search.run(0, 0.0);

    GospaBreakdown out;
    out.assignment = search.best;
    const int matched = static_cast<int>(out.assignment.size());
    out.missed_count = static_cast<int>(x.size()) - matched;
    out.false_count = static_cast<int>(y.size()) - matched;
    for (const auto& [i, j] : out.assignment) out.localisation_cost_p += search.dist_p[i][j];
    out.total = root(search.best_cost, params.p);
    return out;
}

double gospa_squared_singleton(const Point* x, const Point* y, double c) {
    const double half_cp = 0.5 * std::pow(c, 2.0);
    const int cardinality = (x ? 1 : 0) + (y ? 1 : 0);
    const double unassigned = combine(0.0, half_cp, cardinality);
    if (!x || !y) return unassigned;
    const double assigned = combine(0.0 + distance_pow(*x, *y, 2.0), half_cp, 0);
    return assigned < unassigned ? assigned : unassigned;
}

}  // namespace gospa
