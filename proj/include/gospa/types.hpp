#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gospa {

/// Planar position in km (eastings, northings).
using Point = Eigen::Vector2d;
/// 2x2 covariance in km^2.
using Covariance = Eigen::Matrix2d;

enum class ErrorKind {
    InvalidArgument,
    SetTooLarge,
    DegeneratePosterior,
    HorizonCap,
    BudgetExceeded,
    IndexOutOfRange,
    Config,
    Io,
};

/// Domain error raised by every module of the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, const std::string& what,
                    ErrorKind kind = ErrorKind::InvalidArgument) {
    if (!condition) throw Error(kind, what);
}

/// True when `candidate` beats `incumbent` by more than the tie tolerance.
/// Every argmin in the planners uses this so that numerically tied costs
/// resolve to the lowest index independent of rounding.
inline bool strictly_less(double candidate, double incumbent) {
    constexpr double kTieTolerance = 1e-9;
    if (std::isinf(incumbent)) return candidate < incumbent;
    const double scale = std::max(1.0, std::abs(incumbent));
    return candidate < incumbent - kTieTolerance * scale;
}

}  // namespace gospa
