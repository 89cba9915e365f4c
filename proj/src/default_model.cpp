#include "bcva/default_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcva/errors.hpp"
#include "bcva/quadrature.hpp"

namespace bcva {

using detail::require;

namespace {

// (own / s)^(theta - 1) with s = (own^theta + other^theta)^(1/theta), own, other >= 0.
// This is the factor linking dG/dx_own to the marginal-density form -lambda_own * G.
double partial_factor(double own, double other, double theta, bool comonotone) {
    if (other == 0.0) return 1.0;
    if (own == 0.0) return theta == 1.0 ? 1.0 : 0.0;
    if (theta == 1.0) return 1.0;
    if (comonotone) {
        if (own > other) return 1.0;
        return own < other ? 0.0 : 0.5;
    }
    double log_ratio;  // log(own / s)
    if (own >= other) {
        log_ratio = -std::log1p(std::exp(theta * std::log(other / own))) / theta;
    } else {
        const double log_own_other = std::log(own / other);
        log_ratio = log_own_other - std::log1p(std::exp(theta * log_own_other)) / theta;
    }
    return std::exp((theta - 1.0) * log_ratio);
}

// s = (a^theta + b^theta)^(1/theta), a, b >= 0, without overflow for large theta.
double power_norm(double a, double b, double theta, bool comonotone) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi == 0.0) return 0.0;
    if (theta == 1.0) return a + b;
    if (comonotone || lo == 0.0) return hi;
    return hi * std::exp(std::log1p(std::exp(theta * std::log(lo / hi))) / theta);
}

}  // namespace

GumbelBivariateExponential::GumbelBivariateExponential(double lambda_a, double lambda_b, double theta)
    : lambda_a_(lambda_a), lambda_b_(lambda_b), theta_(theta) {
    require(lambda_a > 0.0 && std::isfinite(lambda_a), "lambda_a must be positive");
    require(lambda_b > 0.0 && std::isfinite(lambda_b), "lambda_b must be positive");
    require(theta >= 1.0, "theta must be >= 1 (only positive dependence is representable)");
}

double GumbelBivariateExponential::theta_from_kendall_tau(double tau) {
    require(tau >= 0.0, "kendall tau must be non-negative");
    require(tau < 1.0, "kendall tau must be below 1 (comonotone limit is not attainable)");
    return 1.0 / (1.0 - tau);
}

GumbelBivariateExponential GumbelBivariateExponential::from_kendall_tau(double lambda_a, double lambda_b,
                                                                        double tau) {
    return GumbelBivariateExponential(lambda_a, lambda_b, theta_from_kendall_tau(tau));
}

double GumbelBivariateExponential::joint_survival(double x1, double x2) const {
    require(x1 >= 0.0 && x2 >= 0.0, "joint_survival: negative argument");
    return std::exp(-power_norm(lambda_a_ * x1, lambda_b_ * x2, theta_, comonotone()));
}

double GumbelBivariateExponential::survival_partial_x1(double x1, double x2) const {
    require(x1 >= 0.0 && x2 >= 0.0, "survival_partial_x1: negative argument");
    const double own = lambda_a_ * x1;
    const double other = lambda_b_ * x2;
    return -lambda_a_ * joint_survival(x1, x2) * partial_factor(own, other, theta_, comonotone());
}

double GumbelBivariateExponential::survival_partial_x2(double x1, double x2) const {
    require(x1 >= 0.0 && x2 >= 0.0, "survival_partial_x2: negative argument");
    const double own = lambda_b_ * x2;
    const double other = lambda_a_ * x1;
    return -lambda_b_ * joint_survival(x1, x2) * partial_factor(own, other, theta_, comonotone());
}

double GumbelBivariateExponential::marginal_density(Party p, double t) const {
    require(t >= 0.0, "marginal_density: negative time");
    const double rate = lambda(p);
    return rate * std::exp(-rate * t);
}

double GumbelBivariateExponential::first_to_default_density(Party p, double t) const {
    require(t >= 0.0, "first_to_default_density: negative time");
    if (t > 0.0) {
        return p == Party::A ? -survival_partial_x1(t, t) : -survival_partial_x2(t, t);
    }
    // The partial jumps at the origin; the diagonal limit depends on lambda_A / lambda_B only.
    return lambda(p) * partial_factor(lambda(p), lambda(other(p)), theta_, comonotone());
}

double GumbelBivariateExponential::second_to_default_density(Party p, double t) const {
    return std::max(0.0, marginal_density(p, t) - first_to_default_density(p, t));
}

double GumbelBivariateExponential::prob_default_before(Party p, double horizon) const {
    require(horizon >= 0.0, "prob_default_before: negative horizon");
    return -std::expm1(-lambda(p) * horizon);
}

double GumbelBivariateExponential::prob_order_before(double horizon, Party first) const {
    require(horizon > 0.0, "prob_order_before: horizon must be positive");
    return integrate_from_zero([&](double t) { return first_to_default_density(first, t); }, horizon);
}

double GumbelBivariateExponential::prob_both_ordered_before(double horizon, Party first) const {
    const Party second = other(first);
    return prob_default_before(second, horizon) - prob_order_before(horizon, second);
}

double scaled_log_positive_stable(double alpha, RandomStream& stream) {
    const double w = M_PI * stream.uniform();
    const double e = stream.exponential();
    if (alpha == 1.0) return 0.0;
    // (1 - alpha) log A(w), Zolotarev's function.
    const double scaled_log_a = alpha * std::log(std::sin(alpha * w)) +
                                (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * w)) -
                                std::log(std::sin(w));
    return scaled_log_a - (1.0 - alpha) * std::log(e);
}

DefaultTimes GumbelBivariateExponential::sample_pair(RandomStream& stream) const {
    if (theta_ == 1.0) {
        return {stream.exponential() / lambda_a_, stream.exponential() / lambda_b_};
    }
    if (comonotone()) {
        const double e = stream.exponential();
        return {e / lambda_a_, e / lambda_b_};
    }
    // Conditionally on the frailty V, tau_i = (E_i / V)^(1/theta) / lambda_i.
    const double alpha = 1.0 / theta_;
    const double alpha_log_v = scaled_log_positive_stable(alpha, stream);
    const double e1 = stream.exponential();
    const double e2 = stream.exponential();
    return {std::exp(alpha * std::log(e1) - alpha_log_v) / lambda_a_,
            std::exp(alpha * std::log(e2) - alpha_log_v) / lambda_b_};
}

}  // namespace bcva
