#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bcva/default_model.hpp"
#include "bcva/errors.hpp"
#include "bcva/mc_core.hpp"
#include "bcva/statistics.hpp"

using namespace bcva;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Hand-derived: on the diagonal -dG/dx2(t,t) = w_B c e^{-ct} with
// c = (lA^theta + lB^theta)^(1/theta) and w_B = lB^theta / (lA^theta + lB^theta).
double closed_form_b_first(double la, double lb, double theta, double horizon) {
    const double sum = std::pow(la, theta) + std::pow(lb, theta);
    const double c = std::pow(sum, 1.0 / theta);
    return std::pow(lb, theta) / sum * (1.0 - std::exp(-c * horizon));
}

double brute_force_kendall(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += ((x[i] - x[j]) * (y[i] - y[j]) > 0) ? 1.0 : -1.0;
    return s / (0.5 * n * (n - 1));
}

}  // namespace

TEST_CASE("joint survival values", "[default_model]") {
    CHECK_THAT(GumbelBivariateExponential(0.1, 0.05, 1.0).joint_survival(5, 5), WithinAbs(std::exp(-0.75), 1e-16));
    CHECK_THAT(GumbelBivariateExponential(0.1, 0.05, 1.0).joint_survival(5, 5), WithinAbs(0.4723665527410147, 1e-15));
    CHECK_THAT(GumbelBivariateExponential(0.1, 0.1, 2.0).joint_survival(5, 5),
               WithinAbs(std::exp(-0.5 * std::sqrt(2.0)), 1e-15));
    CHECK_THAT(GumbelBivariateExponential(0.1, 0.1, 2.0).joint_survival(5, 5), WithinAbs(0.4930686913952398, 1e-15));
    for (const double theta : {1.0, 3.0, 1e3, 1e7}) {
        CHECK(GumbelBivariateExponential(0.3, 0.2, theta).joint_survival(0, 0) == 1.0);
    }
    CHECK_THROWS_AS(GumbelBivariateExponential(0.1, 0.05, 2.0).joint_survival(-1, 1), InvalidArgument);
}

TEST_CASE("parameters are validated", "[default_model]") {
    CHECK_THROWS_AS(GumbelBivariateExponential(0.0, 0.05, 2.0), InvalidArgument);
    CHECK_THROWS_AS(GumbelBivariateExponential(0.1, -1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(GumbelBivariateExponential(0.1, 0.05, 0.5), InvalidArgument);
}

TEST_CASE("marginals are exponential", "[default_model]") {
    for (const double theta : {1.0, 1.5, 2.0, 10.0, 1e4, 1e7}) {
        const GumbelBivariateExponential m(0.1, 0.05, theta);
        for (const double x : {0.0, 0.1, 1.0, 5.0, 50.0}) {
            CHECK_THAT(m.joint_survival(x, 0.0), WithinAbs(std::exp(-0.1 * x), 1e-14));
            CHECK_THAT(m.joint_survival(0.0, x), WithinAbs(std::exp(-0.05 * x), 1e-14));
        }
    }
}

TEST_CASE("independence factorises", "[default_model]") {
    const GumbelBivariateExponential m(0.1, 0.05, 1.0);
    for (const double x1 : {0.0, 1.0, 7.0})
        for (const double x2 : {0.0, 2.0, 9.0})
            CHECK(m.joint_survival(x1, x2) == std::exp(-(0.1 * x1 + 0.05 * x2)));
    CHECK_THAT(m.survival_partial_x2(5, 5), WithinAbs(-0.05 * 0.4723665527410147, 1e-15));
    CHECK_THAT(m.survival_partial_x2(5, 5), WithinAbs(-0.023618327637050735, 1e-15));
}

TEST_CASE("partials match central finite differences", "[default_model]") {
    constexpr double h = 1e-6;
    for (const double theta : {1.0, 1.3, 2.0, 5.0, 10.0}) {
        for (const auto& [la, lb] : {std::pair{0.1, 0.05}, std::pair{0.4, 0.7}}) {
            const GumbelBivariateExponential m(la, lb, theta);
            for (const double x1 : {0.3, 1.0, 5.0}) {
                for (const double x2 : {0.3, 1.0, 5.0}) {
                    const double fd2 = (m.joint_survival(x1, x2 + h) - m.joint_survival(x1, x2 - h)) / (2 * h);
                    const double fd1 = (m.joint_survival(x1 + h, x2) - m.joint_survival(x1 - h, x2)) / (2 * h);
                    CHECK_THAT(m.survival_partial_x2(x1, x2), WithinAbs(fd2, 1e-6 * std::abs(fd2) + 1e-10));
                    CHECK_THAT(m.survival_partial_x1(x1, x2), WithinAbs(fd1, 1e-6 * std::abs(fd1) + 1e-10));
                    CHECK(m.survival_partial_x2(x1, x2) <= 0.0);
                }
            }
        }
    }
}

TEST_CASE("partials at the axes", "[default_model]") {
    const GumbelBivariateExponential indep(0.1, 0.05, 1.0);
    CHECK_THAT(indep.survival_partial_x2(2.0, 0.0), WithinAbs(-0.05 * std::exp(-0.2), 1e-16));
    const GumbelBivariateExponential dep(0.1, 0.05, 3.0);
    CHECK(dep.survival_partial_x2(2.0, 0.0) == 0.0);
    CHECK(dep.survival_partial_x2(0.0, 0.0) == -0.05);
    CHECK_THAT(dep.survival_partial_x2(0.0, 4.0), WithinAbs(-0.05 * std::exp(-0.2), 1e-16));
}

TEST_CASE("marginal density integrates to one", "[default_model]") {
    const GumbelBivariateExponential m(0.1, 0.05, 4.0);
    // Simpson oracle on [0, 1000] of -dG/dx2(0, t).
    const int n = 200'000;
    const double upper = 1000.0, h = upper / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += -w * m.survival_partial_x2(0.0, i * h);
    }
    CHECK_THAT(sum * h / 3.0, WithinAbs(1.0, 1e-9));
}

TEST_CASE("kendall tau calibration", "[default_model]") {
    CHECK(GumbelBivariateExponential(0.1, 0.05, 1.0).kendall_tau() == 0.0);
    CHECK_THAT(GumbelBivariateExponential(0.1, 0.05, 10.0).kendall_tau(), WithinAbs(0.9, 1e-15));
    CHECK(GumbelBivariateExponential::theta_from_kendall_tau(0.5) == 2.0);
    CHECK(GumbelBivariateExponential::from_kendall_tau(0.1, 0.05, 0.75).theta() == 4.0);
    CHECK_THROWS_AS(GumbelBivariateExponential::theta_from_kendall_tau(1.0), InvalidArgument);
    CHECK_THROWS_AS(GumbelBivariateExponential::theta_from_kendall_tau(-0.1), InvalidArgument);
    for (const double tau : {0.0, 0.25, 0.5, 0.75}) {
        CHECK(GumbelBivariateExponential::from_kendall_tau(1, 1, tau).kendall_tau() == tau);
    }
}

TEST_CASE("order probabilities under independence", "[default_model]") {
    const GumbelBivariateExponential m(0.1, 0.05, 1.0);
    const double expected = (1.0 - std::exp(-0.25)) - (0.05 / 0.15) * (1.0 - std::exp(-0.75));
    CHECK_THAT(expected, WithinAbs(0.045321, 5e-7));
    CHECK_THAT(m.prob_both_ordered_before(5.0, Party::A), WithinAbs(expected, 1e-12));
    CHECK_THROWS_AS(m.prob_order_before(0.0, Party::A), InvalidArgument);
}

TEST_CASE("order probabilities match the diagonal closed form", "[default_model]") {
    for (const double theta : {1.0, 1.7, 2.0, 10.0, 100.0}) {
        for (const double horizon : {0.5, 1.0, 5.0, 30.0}) {
            const GumbelBivariateExponential m(0.1, 0.05, theta);
            CHECK_THAT(m.prob_order_before(horizon, Party::B),
                       WithinAbs(closed_form_b_first(0.1, 0.05, theta, horizon), 1e-12));
            CHECK_THAT(m.prob_order_before(horizon, Party::A),
                       WithinAbs(closed_form_b_first(0.05, 0.1, theta, horizon), 1e-12));
            // Partition of {tau_B <= T}.
            CHECK_THAT(m.prob_order_before(horizon, Party::B) + m.prob_both_ordered_before(horizon, Party::A),
                       WithinAbs(1.0 - std::exp(-0.05 * horizon), 1e-15));
        }
    }
}

TEST_CASE("comonotone limit", "[default_model]") {
    const GumbelBivariateExponential near(0.1, 0.05, 1e4);
    CHECK(near.prob_order_before(5.0, Party::B) < 1e-12);
    const GumbelBivariateExponential limit(0.1, 0.05, 1e7);
    CHECK(limit.comonotone());
    CHECK(limit.prob_order_before(5.0, Party::B) == 0.0);
    CHECK_THAT(limit.prob_both_ordered_before(5.0, Party::A), WithinAbs(1.0 - std::exp(-0.25), 1e-15));
    RandomStream s(3, 0);
    for (int i = 0; i < 100; ++i) {
        const DefaultTimes tau = limit.sample_pair(s);
        CHECK(tau.a < tau.b);
    }
}

TEST_CASE("exchange symmetry", "[default_model]") {
    for (const double theta : {1.0, 2.5, 10.0}) {
        const GumbelBivariateExponential m(0.1, 0.05, theta);
        const GumbelBivariateExponential s = m.swapped();
        CHECK(m.prob_order_before(5.0, Party::A) == s.prob_order_before(5.0, Party::B));
        CHECK(m.prob_order_before(5.0, Party::B) == s.prob_order_before(5.0, Party::A));
    }
}

TEST_CASE("sampler reproduces the law", "[default_model][mc]") {
    for (const double theta : {1.0, 2.0, 10.0}) {
        const GumbelBivariateExponential m(0.1, 0.05, theta);
        McConfig config;
        config.n_paths = 1'000'000;
        config.seed = 100 + static_cast<std::uint64_t>(theta);
        const auto est = estimate_many<4>(
            [&](RandomStream& s) {
                const DefaultTimes tau = m.sample_pair(s);
                return std::array<double, 4>{tau.a, tau.b, tau.b < tau.a && tau.b <= 1.0 ? 1.0 : 0.0,
                                             tau.b < tau.a && tau.b <= 5.0 ? 1.0 : 0.0};
            },
            config);
        CHECK(std::abs(est[0].mean - 10.0) < 3.0 * est[0].std_error);
        CHECK(std::abs(est[1].mean - 20.0) < 3.0 * est[1].std_error);
        for (int i = 0; i < 2; ++i) {
            const double horizon = i == 0 ? 1.0 : 5.0;
            const double p = m.prob_order_before(horizon, Party::B);
            CHECK(std::abs(est[2 + i].mean - p) < 3.0 * std::sqrt(p * (1 - p) / 1e6));
        }
    }
}

TEST_CASE("independent sampler is uncorrelated", "[default_model][mc]") {
    const GumbelBivariateExponential m(0.1, 0.05, 1.0);
    McConfig config;
    config.n_paths = 1'000'000;
    // Standardised product: E[(tau_A/10 - 1)(tau_B/20 - 1)] = 0 with unit-variance factors.
    const McEstimate corr = estimate(
        [&](RandomStream& s) {
            const DefaultTimes tau = m.sample_pair(s);
            return (tau.a * 0.1 - 1.0) * (tau.b * 0.05 - 1.0);
        },
        config);
    CHECK(std::abs(corr.mean) < 3.0 * corr.std_error);
}

TEST_CASE("empirical kendall tau and ties", "[default_model]") {
    for (const double theta : {2.0, 10.0}) {
        const GumbelBivariateExponential m(0.1, 0.05, theta);
        RandomStream s(17, 1);
        std::vector<double> a, b;
        std::size_t ties = 0;
        for (int i = 0; i < 100'000; ++i) {
            const DefaultTimes tau = m.sample_pair(s);
            a.push_back(tau.a);
            b.push_back(tau.b);
            ties += tau.a == tau.b;
        }
        CHECK_THAT(empirical_kendall_tau(a, b), WithinAbs(1.0 - 1.0 / theta, 0.01));
        CHECK(ties == 0);
    }
}

TEST_CASE("fast kendall tau agrees with the quadratic definition", "[statistics]") {
    RandomStream s(4, 4);
    const GumbelBivariateExponential m(1.0, 2.0, 3.0);
    std::vector<double> a, b;
    for (int i = 0; i < 1500; ++i) {
        const DefaultTimes tau = m.sample_pair(s);
        a.push_back(tau.a);
        b.push_back(tau.b);
    }
    CHECK_THAT(empirical_kendall_tau(a, b), WithinAbs(brute_force_kendall(a, b), 1e-12));
}

TEST_CASE("positive stable variate has the right Laplace transform", "[default_model][mc]") {
    // E[exp(-s V)] = exp(-s^alpha).
    const double alpha = 0.5;
    McConfig config;
    config.n_paths = 400'000;
    for (const double s : {0.5, 1.0, 2.0}) {
        const McEstimate lt = estimate(
            [&](RandomStream& r) { return std::exp(-s * std::exp(scaled_log_positive_stable(alpha, r) / alpha)); },
            config);
        CHECK(std::abs(lt.mean - std::exp(-std::pow(s, alpha))) < 3.0 * lt.std_error);
    }
}
