#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bcva/errors.hpp"

namespace bcva {

/// Absolute error bound every quadrature in the engine must certify.
inline constexpr double kQuadratureTolerance = 1e-10;

/// Adaptive 21-point Gauss-Kronrod on [a, b]. Throws NumericalFailure when the
/// estimated error exceeds kQuadratureTolerance or the result is not finite.
template <class F>
double integrate(F&& f, double a, double b) {
    if (a == b) return 0.0;
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        f, a, b, /*max_depth=*/15, /*tol=*/1e-12, &error);
    if (!std::isfinite(value) || !(error <= kQuadratureTolerance)) {
        char message[160];
        std::snprintf(message, sizeof message,
                      "quadrature on [%g, %g] did not converge (value %.6e, error estimate %.3e)", a, b,
                      value, error);
        throw NumericalFailure(message);
    }
    return value;
}

/// Integral of f over [0, upper] after the substitution t = s^2. Option values behave
/// like sqrt(t) near t = 0 at the money; in s the integrand is smooth.
template <class F>
double integrate_from_zero(F&& f, double upper) {
    return integrate(
        [&f](double s) {
            const double t = s * s;
            return 2.0 * s * f(t);
        },
        0.0, std::sqrt(upper));
}

}  // namespace bcva
