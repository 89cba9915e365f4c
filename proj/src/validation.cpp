#include "bcva/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <ostream>
#include <vector>

#include "bcva/cva_engine.hpp"
#include "bcva/statistics.hpp"

namespace bcva {

namespace {

std::string format(const char* spec, ...) {
    char buffer[256];
    va_list args;
    va_start(args, spec);
    std::vsnprintf(buffer, sizeof buffer, spec, args);
    va_end(args);
    return buffer;
}

// Reference parameter set of the case study.
constexpr double kS0 = 1.0;
constexpr double kSigma = 0.4;
constexpr double kMaturity = 5.0;
constexpr double kLambdaA = 0.1;
constexpr double kLambdaB = 0.05;

Market reference_market(double rate = 0.0) { return Market(GbmEquity(kS0, kSigma), DiscountCurve(rate)); }

class Suite {
public:
    explicit Suite(const ValidationOptions& options) : options_(options) {}

    void run(const std::string& name, const std::function<CheckResult()>& body) {
        CheckResult result;
        try {
            result = body();
        } catch (const std::exception& e) {
            result = {name, false, std::string("exception: ") + e.what()};
        }
        result.name = name;
        results_.push_back(std::move(result));
    }

    const ValidationOptions& options() const { return options_; }
    std::vector<CheckResult> take() { return std::move(results_); }

private:
    ValidationOptions options_;
    std::vector<CheckResult> results_;
};

McConfig desk_config(const ValidationOptions& options, std::uint64_t n_paths, std::uint64_t salt) {
    McConfig config;
    config.n_paths = n_paths;
    config.seed = options.seed + 7919 * salt;
    return config;
}

CheckResult check_discount_curve() {
    double worst = 0.0;
    bool monotone = true;
    for (const double rate : {0.0, 0.03, 0.1}) {
        const DiscountCurve curve(rate);
        for (const double t : {0.0, 0.5, 2.0}) {
            worst = std::max(worst, std::abs(curve.discount_factor(t, t) - 1.0));
            for (const double u : {t, t + 0.7, t + 1.9}) {
                for (const double T : {u, u + 1.3, u + 4.0}) {
                    const double lhs = curve.discount_factor(t, u) * curve.discount_factor(u, T);
                    worst = std::max(worst, std::abs(lhs - curve.discount_factor(t, T)));
                    if (curve.discount_factor(t, T + 0.1) > curve.discount_factor(t, T)) monotone = false;
                }
            }
        }
    }
    return {"", worst <= 1e-15 && monotone, format("max identity error %.3e, monotone=%d", worst, monotone)};
}

CheckResult check_put_call_parity(InjectedFault fault) {
    double worst = 0.0;
    for (const double rate : {0.0, 0.03}) {
        const Market market = reference_market(rate);
        for (const double t : {0.0, 0.25, 1.0, 5.0}) {
            for (const double k : {0.0, 0.5, 0.8, 1.0, 1.5}) {
                double put = market.black_put(t, k);
                if (fault == InjectedFault::PutSign) put = -put;
                const double lhs = market.black_call(t, k) - put;
                const double rhs = kS0 * std::exp(rate * t) - k;
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
        }
    }
    return {"", worst <= 1e-12, format("max relative parity error %.3e", worst)};
}

CheckResult check_black_monotonicity() {
    bool ok = true;
    const Market base = reference_market();
    const Market more_vol(GbmEquity(kS0, kSigma + 0.1));
    for (const double t : {0.5, 1.0, 2.0, 5.0}) {
        double previous = base.black_call(t, 0.0);
        for (const double k : {0.2, 0.5, 0.8, 1.0, 1.3, 2.0}) {
            const double c = base.black_call(t, k);
            ok = ok && c < previous && more_vol.black_call(t, k) > c && base.black_call(t + 0.5, k) >= c;
            previous = c;
        }
    }
    return {"", ok, ok ? "decreasing in K, increasing in sigma and t" : "monotonicity violated"};
}

CheckResult check_black_vs_mc(const ValidationOptions& options) {
    const Market market = reference_market();
    double worst = 0.0;
    std::uint64_t salt = 10;
    for (const double t : {1.0, 5.0}) {
        for (const double k : {0.8, 1.2}) {
            const McEstimate mc = estimate(
                [&](RandomStream& s) {
                    return std::max(market.gbm_terminal(t, s.normal()) - k, 0.0);
                },
                desk_config(options, 1'000'000, salt++), options.threads);
            worst = std::max(worst, std::abs(mc.mean - market.black_call(t, k)) / mc.std_error);
        }
    }
    return {"", worst < 3.0, format("max |closed form - MC| = %.2f standard errors", worst)};
}

CheckResult check_gbm_martingale(const ValidationOptions& options) {
    const Market market = reference_market();
    const McEstimate mc = estimate([&](RandomStream& s) { return market.gbm_terminal(5.0, s.normal()); },
                                   desk_config(options, 1'000'000, 20), options.threads);
    const double z = std::abs(mc.mean - kS0) / mc.std_error;
    return {"", z < 3.0, format("E[S_5] = %.6f (%.2f standard errors from s0)", mc.mean, z)};
}

CheckResult check_marginals() {
    double worst = 0.0;
    for (const double theta : {1.0, 2.0, 10.0, 1e4}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        for (const double x : {0.0, 0.3, 1.0, 5.0, 25.0}) {
            worst = std::max(worst, std::abs(model.joint_survival(x, 0.0) - std::exp(-kLambdaA * x)));
            worst = std::max(worst, std::abs(model.joint_survival(0.0, x) - std::exp(-kLambdaB * x)));
        }
    }
    return {"", worst <= 1e-14, format("max marginal error %.3e", worst)};
}

CheckResult check_partial_finite_difference(InjectedFault fault) {
    double worst = 0.0;
    constexpr double h = 1e-6;
    for (const double theta : {1.0, 1.5, 2.0, 10.0}) {
        for (const auto& [la, lb] : {std::pair{0.1, 0.05}, std::pair{0.5, 0.3}, std::pair{0.02, 0.2}}) {
            const GumbelBivariateExponential model(la, lb, theta);
            for (const double x1 : {0.5, 2.0, 5.0}) {
                for (const double x2 : {0.5, 2.0, 5.0}) {
                    double analytic = model.survival_partial_x2(x1, x2);
                    if (fault == InjectedFault::PartialSign) analytic = -analytic;
                    const double fd = (model.joint_survival(x1, x2 + h) - model.joint_survival(x1, x2 - h)) / (2 * h);
                    const double analytic1 = model.survival_partial_x1(x1, x2);
                    const double fd1 = (model.joint_survival(x1 + h, x2) - model.joint_survival(x1 - h, x2)) / (2 * h);
                    worst = std::max(worst, std::abs(analytic - fd) / (std::abs(fd) + 1e-3));
                    worst = std::max(worst, std::abs(analytic1 - fd1) / (std::abs(fd1) + 1e-3));
                }
            }
        }
    }
    return {"", worst <= 1e-6, format("max relative deviation from central differences %.3e", worst)};
}

CheckResult check_exchange_symmetry() {
    double worst = 0.0;
    for (const double theta : {1.0, 2.0, 10.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        const GumbelBivariateExponential mirror = model.swapped();
        for (const double T : {1.0, 5.0}) {
            worst = std::max(worst, std::abs(model.prob_order_before(T, Party::A) -
                                             mirror.prob_order_before(T, Party::B)));
            worst = std::max(worst, std::abs(model.prob_order_before(T, Party::B) -
                                             mirror.prob_order_before(T, Party::A)));
        }
    }
    return {"", worst == 0.0, format("max asymmetry %.3e", worst)};
}

CheckResult check_sampler_order_probabilities(const ValidationOptions& options) {
    double worst = 0.0;
    std::uint64_t salt = 30;
    for (const double theta : {1.0, 2.0, 10.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        const auto freq = estimate_many<2>(
            [&](RandomStream& s) {
                const DefaultTimes tau = model.sample_pair(s);
                const bool b_first = tau.b < tau.a;
                return std::array<double, 2>{b_first && tau.b <= 1.0 ? 1.0 : 0.0,
                                             b_first && tau.b <= 5.0 ? 1.0 : 0.0};
            },
            desk_config(options, 1'000'000, salt++), options.threads);
        const std::array<double, 2> horizons{1.0, 5.0};
        for (std::size_t i = 0; i < 2; ++i) {
            const double p = model.prob_order_before(horizons[i], Party::B);
            const double binomial_se = std::sqrt(p * (1.0 - p) / static_cast<double>(freq[i].n));
            worst = std::max(worst, std::abs(freq[i].mean - p) / binomial_se);
        }
    }
    return {"", worst < 3.0, format("max |frequency - quadrature| = %.2f binomial standard errors", worst)};
}

CheckResult check_sampler_statistics(const ValidationOptions& options) {
    constexpr std::size_t n = 100'000;
    bool ok = true;
    std::string detail;
    for (const double theta : {2.0, 10.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        RandomStream stream(options.seed, 99);
        std::vector<double> a(n), b(n);
        std::size_t ties = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const DefaultTimes tau = model.sample_pair(stream);
            a[i] = tau.a;
            b[i] = tau.b;
            ties += tau.a == tau.b;
        }
        const double tau_hat = empirical_kendall_tau(a, b);
        double mean_a = 0.0, sq_a = 0.0;
        for (const double x : a) {
            mean_a += x;
            sq_a += x * x;
        }
        mean_a /= n;
        const double se_a = std::sqrt((sq_a / n - mean_a * mean_a) / (n - 1));
        const double z = std::abs(mean_a - 1.0 / kLambdaA) / se_a;
        ok = ok && std::abs(tau_hat - model.kendall_tau()) <= 0.01 && z < 3.0 &&
             static_cast<double>(ties) / n <= 1e-6;
        detail += format("theta=%g: tau %.4f (target %.4f), mean z %.2f, ties %zu; ", theta, tau_hat,
                         model.kendall_tau(), z, ties);
    }
    return {"", ok, detail};
}

CheckResult check_mc_determinism(const ValidationOptions& options) {
    const GumbelBivariateExponential model(kLambdaA, kLambdaB, 2.0);
    const Market market = reference_market();
    McConfig config = desk_config(options, 200'000, 40);
    config.chunk_size = 4096;
    const EquityForward fwd{1.0, kMaturity};
    const McEstimate one = difference_forward(fwd, {}, model, market, MonteCarlo{config, McEstimator::Conditioned, 1});
    const McEstimate many = difference_forward(fwd, {}, model, market, MonteCarlo{config, McEstimator::Conditioned, 4});
    const bool same = one.mean == many.mean && one.std_error == many.std_error && one.n == many.n;
    return {"", same, same ? "1 and 4 workers bitwise identical" : "results depend on worker count"};
}

CheckResult check_mc_error_scaling(const ValidationOptions& options) {
    auto sampler = [](RandomStream& s) { return s.normal() + 0.5 * s.exponential(); };
    const McEstimate small = estimate(sampler, desk_config(options, 250'000, 50), options.threads);
    const McEstimate large = estimate(sampler, desk_config(options, 1'000'000, 51), options.threads);
    const double ratio = small.std_error / large.std_error;
    return {"", std::abs(ratio - 2.0) <= 0.4, format("stderr ratio for 4x paths %.4f (expect 2)", ratio)};
}

CheckResult check_report_identities(const ValidationOptions& options) {
    const Market market = reference_market();
    double worst_analytic = 0.0;
    double worst_mc = 0.0;
    std::uint64_t salt = 60;
    for (const double theta : {1.0, 2.0, 10.0}) {
        for (const double k : {0.8, 1.0}) {
            const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
            const EquityForward fwd{k, kMaturity};
            const BcvaReport semi = bcva_full_forward(fwd, {}, model, market, SemiAnalytic{});
            const McEstimate simplified = bcva_simplified_forward(fwd, {}, model, market, SemiAnalytic{});
            worst_analytic = std::max(worst_analytic, std::abs(semi.full_price - semi.simplified_price - semi.difference));
            worst_analytic = std::max(worst_analytic, std::abs(simplified.mean - semi.simplified_price));

            McConfig config = desk_config(options, 200'000, salt++);
            const BcvaReport mc = bcva_full_forward(fwd, {}, model, market,
                                                    MonteCarlo{config, McEstimator::Conditioned, options.threads});
            const double gap = std::abs(mc.full_price - mc.simplified_price - mc.difference);
            worst_mc = std::max(worst_mc, gap / std::max(mc.std_errors.difference, 1e-300));
            const double vs_semi = std::abs(mc.difference - semi.difference) / mc.std_errors.difference;
            worst_mc = std::max(worst_mc, vs_semi);
        }
    }
    const bool ok = worst_analytic <= 1e-10 && worst_mc < 3.0;
    return {"", ok, format("analytic identity error %.3e, max MC deviation %.2f standard errors", worst_analytic, worst_mc)};
}

CheckResult check_tau_monotonicity() {
    const Market market = reference_market();
    bool ok = true;
    std::string detail;
    for (const double k : {0.8, 1.0}) {
        double previous = -1.0;
        for (const double tau : {0.0, 0.25, 0.5, 0.75, 0.9, 0.95}) {
            const auto model = GumbelBivariateExponential::from_kendall_tau(kLambdaA, kLambdaB, tau);
            const double d = difference_forward({k, kMaturity}, {}, model, market, SemiAnalytic{}).mean;
            ok = ok && d > previous;
            previous = d;
        }
        detail += format("K=%g: D(0.95)=%.6f; ", k, previous);
    }
    return {"", ok, detail};
}

CheckResult check_lambda_asymptote() {
    const Market market = reference_market();
    const EquityForward fwd{0.8, kMaturity};
    double previous = -1.0;
    bool ok = true;
    for (const double la : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const auto model = GumbelBivariateExponential::from_kendall_tau(la, kLambdaB, 0.9);
        const double d = difference_forward(fwd, {}, model, market, SemiAnalytic{}).mean;
        ok = ok && d >= previous;
        previous = d;
    }
    const auto model = GumbelBivariateExponential::from_kendall_tau(kLambdaA, kLambdaB, 0.9);
    const double ucva = ucva_forward(fwd, {}, model, market, SemiAnalytic{}).mean;
    const double rel = std::abs(previous - ucva) / ucva;
    ok = ok && rel <= 0.05;
    return {"", ok, format("D(lambda_A=5)=%.6f, UCVA=%.6f, relative gap %.3e", previous, ucva, rel)};
}

CheckResult check_simplified_theta_independence() {
    const Market market = reference_market();
    double lo = 1e300, hi = -1e300;
    for (const double theta : {1.0, 2.0, 10.0, 100.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        const double v = bcva_simplified_forward({1.0, kMaturity}, {}, model, market, SemiAnalytic{}).mean;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {"", hi - lo <= 1e-12, format("spread across theta %.3e", hi - lo)};
}

CheckResult check_party_symmetry() {
    const Market market = reference_market();
    double worst = 0.0;
    for (const double theta : {1.0, 3.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        const CreditParams credit{0.6, 0.9};
        const EquityForward fwd{0.9, kMaturity};
        const BcvaReport a = bcva_full_forward(fwd, credit, model, market, SemiAnalytic{});
        const BcvaReport b = bcva_full_forward(fwd.mirrored(), credit.swapped(), model.swapped(), market, SemiAnalytic{});
        worst = std::max(worst, std::abs(a.full_price + b.full_price));
        worst = std::max(worst, std::abs(a.udva_a - b.ucva_a));
    }
    return {"", worst <= 1e-12, format("max |V_A + V_B|, |UDVA_A - UCVA_B| = %.3e", worst)};
}

CheckResult check_zcb_identities() {
    const Market market = reference_market(0.02);
    double worst = 0.0;
    for (const double theta : {1.0, 2.0, 10.0}) {
        const GumbelBivariateExponential model(kLambdaA, kLambdaB, theta);
        const BcvaReport r = zcb_report({kMaturity}, {1.0, 0.7}, model, market);
        worst = std::max(worst, std::abs(*r.substitution_closeout_price - r.simplified_price));
        worst = std::max(worst, std::abs(r.full_price - r.simplified_price - r.difference));
    }
    return {"", worst <= 1e-14, format("max identity error %.3e", worst)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    Suite suite(options);
    suite.run("market.discount_curve_identities", check_discount_curve);
    suite.run("market.put_call_parity", [&] { return check_put_call_parity(options.fault); });
    suite.run("market.black_call_monotonicity", check_black_monotonicity);
    suite.run("market.black_call_vs_monte_carlo", [&] { return check_black_vs_mc(options); });
    suite.run("market.gbm_martingale", [&] { return check_gbm_martingale(options); });
    suite.run("default_model.marginal_consistency", check_marginals);
    suite.run("default_model.survival_partial_finite_difference",
              [&] { return check_partial_finite_difference(options.fault); });
    suite.run("default_model.exchange_symmetry", check_exchange_symmetry);
    suite.run("default_model.sampler_vs_quadrature", [&] { return check_sampler_order_probabilities(options); });
    suite.run("default_model.sampler_statistics", [&] { return check_sampler_statistics(options); });
    suite.run("mc_core.determinism_across_workers", [&] { return check_mc_determinism(options); });
    suite.run("mc_core.std_error_scaling", [&] { return check_mc_error_scaling(options); });
    suite.run("cva_engine.report_identities", [&] { return check_report_identities(options); });
    suite.run("cva_engine.monotone_in_kendall_tau", check_tau_monotonicity);
    suite.run("cva_engine.lambda_a_asymptote", check_lambda_asymptote);
    suite.run("cva_engine.simplified_theta_independence", check_simplified_theta_independence);
    suite.run("cva_engine.party_symmetry", check_party_symmetry);
    suite.run("cva_engine.zcb_closeout_identities", check_zcb_identities);
    return suite.take();
}

void write_validation_report(std::ostream& out, const std::vector<CheckResult>& results) {
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        failed += !r.passed;
    }
    out << (failed == 0 ? "all " + std::to_string(results.size()) + " invariants passed"
                        : std::to_string(failed) + " of " + std::to_string(results.size()) + " invariants failed")
        << '\n';
}

}  // namespace bcva
