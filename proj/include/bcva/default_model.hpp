#pragma once

#include "bcva/random.hpp"

namespace bcva {

enum class Party { A, B };

inline constexpr Party other(Party p) noexcept { return p == Party::A ? Party::B : Party::A; }

struct DefaultTimes {
    double a;
    double b;
};

/// Gumbel's type III bivariate exponential law of the default times (tau_A, tau_B):
///
///     Q(tau_A > x1, tau_B > x2) = exp(-((lambda_A x1)^theta + (lambda_B x2)^theta)^(1/theta))
///
/// Marginals are exponential with rates lambda_A and lambda_B, theta >= 1 sets the
/// dependence (Kendall's tau = 1 - 1/theta) and the law has no singular component,
/// so simultaneous defaults have probability zero. Dependence above kMaxTheta is
/// treated as the comonotone limit.
class GumbelBivariateExponential {
public:
    static constexpr double kMaxTheta = 1e6;

    GumbelBivariateExponential(double lambda_a, double lambda_b, double theta);

    /// theta = 1 / (1 - tau); requires tau in [0, 1).
    static double theta_from_kendall_tau(double tau);
    static GumbelBivariateExponential from_kendall_tau(double lambda_a, double lambda_b, double tau);

    double lambda_a() const noexcept { return lambda_a_; }
    double lambda_b() const noexcept { return lambda_b_; }
    double lambda(Party p) const noexcept { return p == Party::A ? lambda_a_ : lambda_b_; }
    double theta() const noexcept { return theta_; }
    bool comonotone() const noexcept { return theta_ > kMaxTheta; }

    double kendall_tau() const noexcept { return 1.0 - 1.0 / theta_; }

    /// Same dependence with the roles of A and B exchanged.
    GumbelBivariateExponential swapped() const {
        return GumbelBivariateExponential(lambda_b_, lambda_a_, theta_);
    }

    double joint_survival(double x1, double x2) const;

    /// dG/dx1 and dG/dx2. -dG/dx2(x1, t) dt = Q(tau_A > x1, tau_B in dt).
    double survival_partial_x1(double x1, double x2) const;
    double survival_partial_x2(double x1, double x2) const;

    /// lambda e^{-lambda t}, the marginal default density of party p.
    double marginal_density(Party p, double t) const;
    /// Q(tau_p in dt, tau_other > t) / dt: party p defaults at t and is first to default.
    double first_to_default_density(Party p, double t) const;
    /// Q(tau_other < t, tau_p in dt) / dt: party p defaults at t after the other party.
    double second_to_default_density(Party p, double t) const;

    /// Q(tau_p < tau_other, tau_p <= horizon), by adaptive quadrature of the
    /// first-to-default density along the diagonal.
    double prob_order_before(double horizon, Party first) const;
    /// Q(tau_first < tau_second <= horizon) = Q(tau_second <= horizon) - Q(tau_second first, before horizon).
    double prob_both_ordered_before(double horizon, Party first) const;
    /// Q(tau_p <= horizon).
    double prob_default_before(Party p, double horizon) const;

    /// One draw of (tau_A, tau_B) via the positive-stable frailty representation of the
    /// Gumbel-Hougaard survival copula.
    DefaultTimes sample_pair(RandomStream& stream) const;

private:
    double lambda_a_;
    double lambda_b_;
    double theta_;
};

/// Positive alpha-stable variate with Laplace transform exp(-s^alpha), alpha in (0, 1],
/// returned as alpha * log(V) (Kanter / Chambers-Mallows-Stuck). The scaled log keeps
/// the result finite for alpha near zero.
double scaled_log_positive_stable(double alpha, RandomStream& stream);

}  // namespace bcva
