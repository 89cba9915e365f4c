#pragma once

#include <optional>
#include <variant>

#include "bcva/default_model.hpp"
#include "bcva/market.hpp"
#include "bcva/mc_core.hpp"

namespace bcva {

/// Loss given default (1 - recovery) of each party.
struct CreditParams {
    double lgd_a = 1.0;
    double lgd_b = 1.0;

    double lgd(Party p) const noexcept { return p == Party::A ? lgd_a : lgd_b; }
    CreditParams swapped() const noexcept { return {lgd_b, lgd_a}; }
    void validate() const;
};

enum class Position { Long, Short };

/// Forward on the equity paying S_T - K at maturity to the long side. Party A holds
/// `position`; the mirrored forward is the same contract seen from B.
struct EquityForward {
    double strike = 1.0;
    double maturity = 5.0;
    Position position = Position::Long;

    EquityForward mirrored() const noexcept {
        return {strike, maturity, position == Position::Long ? Position::Short : Position::Long};
    }
    void validate() const;
};

/// Unit-notional zero-coupon bond lent by A to B.
struct ZeroCouponBond {
    double maturity = 5.0;
    void validate() const;
};

/// Deterministic 1D quadrature against the default-time densities with closed-form
/// conditional exposures.
struct SemiAnalytic {};

enum class McEstimator {
    /// Exposure at the default time replaced by its closed-form conditional expectation
    /// (equity is independent of the default times).
    Conditioned,
    /// Equity simulated along the path at the default times; kept as an oracle.
    PathLevel,
};

struct MonteCarlo {
    McConfig config;
    McEstimator estimator = McEstimator::Conditioned;
    unsigned threads = 1;
};

using Method = std::variant<SemiAnalytic, MonteCarlo>;

/// Standard errors of the simulated report fields; all zero for analytic reports.
struct ReportErrors {
    double ucva_a = 0.0;
    double udva_a = 0.0;
    double bilateral_cva = 0.0;
    double bilateral_dva = 0.0;
    double full_price = 0.0;
    double simplified_price = 0.0;
    double difference = 0.0;
};

/// All adjustment figures for one valuation, seen from party A at time 0.
///
///   full_price       = risk_free_value + bilateral_dva - bilateral_cva
///   simplified_price = risk_free_value + udva_a - ucva_a
///   difference       = full_price - simplified_price
struct BcvaReport {
    double risk_free_value = 0.0;
    double ucva_a = 0.0;
    double udva_a = 0.0;  // equals UCVA computed by B
    double bilateral_cva = 0.0;
    double bilateral_dva = 0.0;
    double full_price = 0.0;
    double simplified_price = 0.0;
    double difference = 0.0;
    ReportErrors std_errors;
    /// Only produced where it is computable in closed form (zero-coupon bond).
    std::optional<double> substitution_closeout_price;
    /// Number of simulated paths, 0 for analytic reports.
    std::uint64_t n_paths = 0;
};

/// L_B E[1{tau_B <= T} D(0,tau_B) (V0(tau_B))^+]. Depends on B's marginal only.
McEstimate ucva_forward(const EquityForward& fwd, const CreditParams& credit,
                        const GumbelBivariateExponential& model, const Market& market,
                        const Method& method);

/// L_A E[1{tau_A <= T} D(0,tau_A) (-V0(tau_A))^+].
McEstimate udva_forward(const EquityForward& fwd, const CreditParams& credit,
                        const GumbelBivariateExponential& model, const Market& market,
                        const Method& method);

/// Full bilateral valuation under risk-free closeout, first-to-default indicators.
BcvaReport bcva_full_forward(const EquityForward& fwd, const CreditParams& credit,
                             const GumbelBivariateExponential& model, const Market& market,
                             const Method& method);

/// V0(0) + UDVA_A(0) - UCVA_A(0). This single figure is the simplified bilateral price under
/// both the risk-free and the substitution closeout: with one-name-only universes the
/// surviving party's DVA terms vanish and the two simplified formulas coincide.
McEstimate bcva_simplified_forward(const EquityForward& fwd, const CreditParams& credit,
                                   const GumbelBivariateExponential& model, const Market& market,
                                   const Method& method);

/// D^AB = A1 - A2, the full minus the simplified price:
///   A1 = L_B E[1{tau_A < tau_B <= T} D(0,tau_B) (V0(tau_B))^+]
///   A2 = L_A E[1{tau_B < tau_A <= T} D(0,tau_A) (-V0(tau_A))^+]
/// With Monte Carlo both terms share the default-time draws.
McEstimate difference_forward(const EquityForward& fwd, const CreditParams& credit,
                              const GumbelBivariateExponential& model, const Market& market,
                              const Method& method);

/// Closed-form report for the zero-coupon bond, including the substitution-closeout price.
BcvaReport zcb_report(const ZeroCouponBond& bond, const CreditParams& credit,
                      const GumbelBivariateExponential& model, const Market& market);

}  // namespace bcva
