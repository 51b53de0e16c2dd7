#ifndef SITEPI_COMMON_HPP
#define SITEPI_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitepi {

/// Relative tolerance used to decide whether an input sits exactly on a
/// branch boundary (threshold equality, discriminant at zero, ...).
inline constexpr double kBranchTol = 1e-12;

/// Raised when a parameter set violates its invariants.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation is called outside the branch it is defined on.
class BranchError : public std::runtime_error {
public:
    explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the adaptive integrator cannot make progress; carries the
/// time and state it last accepted.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t_last, std::vector<double> y_last = {})
        : std::runtime_error(what), t_last(t_last), y_last(std::move(y_last)) {}
    double t_last;
    std::vector<double> y_last;
};

/// |a - b| <= tol * max(|a|, |b|, 1)
inline bool nearly_equal(double a, double b, double tol = kBranchTol) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1.0) scale = 1.0;
    return std::abs(a - b) <= tol * scale;
}

} // namespace sitepi

#endif
