#include "bcva/cva_engine.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "bcva/errors.hpp"
#include "bcva/quadrature.hpp"

namespace bcva {

using detail::require;

void CreditParams::validate() const {
    require(lgd_a >= 0.0 && lgd_a <= 1.0, "lgd_a must lie in [0, 1]");
    require(lgd_b >= 0.0 && lgd_b <= 1.0, "lgd_b must lie in [0, 1]");
}

void EquityForward::validate() const {
    require(strike >= 0.0 && std::isfinite(strike), "forward strike must be non-negative");
    require(maturity > 0.0 && std::isfinite(maturity), "forward maturity must be positive");
}

void ZeroCouponBond::validate() const {
    require(maturity > 0.0 && std::isfinite(maturity), "bond maturity must be positive");
}

namespace {

/// Exposure profile of a forward seen from A.
class ForwardExposure {
public:
    ForwardExposure(const EquityForward& fwd, const Market& market) : fwd_(fwd), market_(market) {}

    double risk_free_value() const {
        const double long_value = market_.forward_npv(0.0, market_.equity().s0(), fwd_.strike, fwd_.maturity);
        return sign() * long_value;
    }

    /// D(0,t) E[(V0(t))^+].
    double positive(double t) const { return market_.discount_factor(0.0, t) * leg(t, true); }
    /// D(0,t) E[(-V0(t))^+].
    double negative(double t) const { return market_.discount_factor(0.0, t) * leg(t, false); }

    /// D(0,t) (+-V0(t))^+ with the equity at t given.
    double realised(double t, double s_t, bool positive_side) const {
        const double v = sign() * market_.forward_npv(t, s_t, fwd_.strike, fwd_.maturity);
        const double x = positive_side ? v : -v;
        return market_.discount_factor(0.0, t) * (x > 0.0 ? x : 0.0);
    }

    /// Equity price at t given the Brownian value W_t.
    double spot(double t, double brownian) const {
        return t > 0.0 ? market_.gbm_terminal(t, brownian / std::sqrt(t)) : market_.equity().s0();
    }

    double maturity() const { return fwd_.maturity; }

private:
    double sign() const { return fwd_.position == Position::Long ? 1.0 : -1.0; }

    double leg(double t, bool positive_side) const {
        const double strike = market_.curve().zero_bond(t, fwd_.maturity) * fwd_.strike;
        const bool call = (fwd_.position == Position::Long) == positive_side;
        return call ? market_.black_call(t, strike) : market_.black_put(t, strike);
    }

    EquityForward fwd_;
    const Market& market_;
};

void validate_inputs(const EquityForward& fwd, const CreditParams& credit) {
    fwd.validate();
    credit.validate();
}

// Per-path contributions, all sharing one draw of (tau_A, tau_B):
// ucva, udva, bilateral cva, bilateral dva, full and simplified adjustments, difference.
enum Field { kUcva, kUdva, kBcva, kBdva, kFullAdjustment, kSimplifiedAdjustment, kDiff, kFieldCount };
using PathSample = std::array<double, kFieldCount>;

PathSample path_sample(const ForwardExposure& exposure, const CreditParams& credit,
                       const GumbelBivariateExponential& model, McEstimator estimator,
                       RandomStream& stream) {
    const DefaultTimes tau = model.sample_pair(stream);
    const double maturity = exposure.maturity();

    double exposure_at_b = 0.0;  // D(0,tau_B) (V0(tau_B))^+ or its conditional mean
    double exposure_at_a = 0.0;  // D(0,tau_A) (-V0(tau_A))^+
    if (estimator == McEstimator::Conditioned) {
        if (tau.b <= maturity) exposure_at_b = exposure.positive(tau.b);
        if (tau.a <= maturity) exposure_at_a = exposure.negative(tau.a);
    } else {
        // One Brownian path observed at both default times (capped at maturity).
        const double z1 = stream.normal();
        const double z2 = stream.normal();
        const double t_a = std::min(tau.a, maturity);
        const double t_b = std::min(tau.b, maturity);
        const double t_early = std::min(t_a, t_b);
        const double t_late = std::max(t_a, t_b);
        const double w_early = std::sqrt(t_early) * z1;
        const double w_late = w_early + std::sqrt(t_late - t_early) * z2;
        const double w_a = t_a <= t_b ? w_early : w_late;
        const double w_b = t_a <= t_b ? w_late : w_early;
        if (tau.b <= maturity) exposure_at_b = exposure.realised(t_b, exposure.spot(t_b, w_b), true);
        if (tau.a <= maturity) exposure_at_a = exposure.realised(t_a, exposure.spot(t_a, w_a), false);
    }

    PathSample s{};
    s[kUcva] = credit.lgd_b * exposure_at_b;
    s[kUdva] = credit.lgd_a * exposure_at_a;
    s[kBcva] = tau.b < tau.a ? s[kUcva] : 0.0;
    s[kBdva] = tau.a < tau.b ? s[kUdva] : 0.0;
    s[kFullAdjustment] = s[kBdva] - s[kBcva];
    s[kSimplifiedAdjustment] = s[kUdva] - s[kUcva];
    s[kDiff] = (s[kUcva] - s[kBcva]) - (s[kUdva] - s[kBdva]);
    return s;
}

}  // namespace
namespace {

std::array<McEstimate, kFieldCount> simulate(const EquityForward& fwd, const CreditParams& credit,
                                             const GumbelBivariateExponential& model,
                                             const Market& market, const MonteCarlo& mc) {
    const ForwardExposure exposure(fwd, market);
    return estimate_many<kFieldCount>(
        [&](RandomStream& stream) { return path_sample(exposure, credit, model, mc.estimator, stream); },
        mc.config, mc.threads);
}

McEstimate exact(double value) { return {value, 0.0, 0}; }

// L_p * integral_0^T density(t) * exposure(t) dt.
template <class Density, class Exposure>
double integrate_leg(double lgd, double maturity, Density&& density, Exposure&& exposure) {
    if (lgd == 0.0) return 0.0;
    return lgd * integrate_from_zero([&](double t) { return density(t) * exposure(t); }, maturity);
}

}  // namespace

McEstimate ucva_forward(const EquityForward& fwd, const CreditParams& credit,
                        const GumbelBivariateExponential& model, const Market& market,
                        const Method& method) {
    validate_inputs(fwd, credit);
    if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
        return simulate(fwd, credit, model, market, *mc)[kUcva];
    }
    const ForwardExposure exposure(fwd, market);
    return exact(integrate_leg(
        credit.lgd_b, fwd.maturity, [&](double t) { return model.marginal_density(Party::B, t); },
        [&](double t) { return exposure.positive(t); }));
}

McEstimate udva_forward(const EquityForward& fwd, const CreditParams& credit,
                        const GumbelBivariateExponential& model, const Market& market,
                        const Method& method) {
    validate_inputs(fwd, credit);
    if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
        return simulate(fwd, credit, model, market, *mc)[kUdva];
    }
    const ForwardExposure exposure(fwd, market);
    return exact(integrate_leg(
        credit.lgd_a, fwd.maturity, [&](double t) { return model.marginal_density(Party::A, t); },
        [&](double t) { return exposure.negative(t); }));
}

McEstimate difference_forward(const EquityForward& fwd, const CreditParams& credit,
                              const GumbelBivariateExponential& model, const Market& market,
                              const Method& method) {
    validate_inputs(fwd, credit);
    const ForwardExposure exposure(fwd, market);
    if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
        return estimate(
            [&](RandomStream& stream) {
                return path_sample(exposure, credit, model, mc->estimator, stream)[kDiff];
            },
            mc->config, mc->threads);
    }
    const double a1 = integrate_leg(
        credit.lgd_b, fwd.maturity, [&](double t) { return model.second_to_default_density(Party::B, t); },
        [&](double t) { return exposure.positive(t); });
    const double a2 = integrate_leg(
        credit.lgd_a, fwd.maturity, [&](double t) { return model.second_to_default_density(Party::A, t); },
        [&](double t) { return exposure.negative(t); });
    return exact(a1 - a2);
}

BcvaReport bcva_full_forward(const EquityForward& fwd, const CreditParams& credit,
                             const GumbelBivariateExponential& model, const Market& market,
                             const Method& method) {
    validate_inputs(fwd, credit);
    const ForwardExposure exposure(fwd, market);
    BcvaReport report;
    report.risk_free_value = exposure.risk_free_value();

    if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
        const auto est = simulate(fwd, credit, model, market, *mc);
        report.ucva_a = est[kUcva].mean;
        report.udva_a = est[kUdva].mean;
        report.bilateral_cva = est[kBcva].mean;
        report.bilateral_dva = est[kBdva].mean;
        report.difference = est[kDiff].mean;
        report.n_paths = est[kDiff].n;

        auto& se = report.std_errors;
        se.ucva_a = est[kUcva].std_error;
        se.udva_a = est[kUdva].std_error;
        se.bilateral_cva = est[kBcva].std_error;
        se.bilateral_dva = est[kBdva].std_error;
        // The risk-free value is analytic, so the price errors are those of the adjustments.
        se.full_price = est[kFullAdjustment].std_error;
        se.simplified_price = est[kSimplifiedAdjustment].std_error;
        se.difference = est[kDiff].std_error;
    } else {
        const double lgd_a = credit.lgd_a;
        const double lgd_b = credit.lgd_b;
        const double maturity = fwd.maturity;
        auto positive = [&](double t) { return exposure.positive(t); };
        auto negative = [&](double t) { return exposure.negative(t); };
        report.ucva_a = integrate_leg(lgd_b, maturity,
                                      [&](double t) { return model.marginal_density(Party::B, t); }, positive);
        report.udva_a = integrate_leg(lgd_a, maturity,
                                      [&](double t) { return model.marginal_density(Party::A, t); }, negative);
        report.bilateral_cva = integrate_leg(
            lgd_b, maturity, [&](double t) { return model.first_to_default_density(Party::B, t); }, positive);
        report.bilateral_dva = integrate_leg(
            lgd_a, maturity, [&](double t) { return model.first_to_default_density(Party::A, t); }, negative);
        report.difference = difference_forward(fwd, credit, model, market, method).mean;
    }
    report.full_price = report.risk_free_value + report.bilateral_dva - report.bilateral_cva;
    report.simplified_price = report.risk_free_value + report.udva_a - report.ucva_a;
    return report;
}

McEstimate bcva_simplified_forward(const EquityForward& fwd, const CreditParams& credit,
                                   const GumbelBivariateExponential& model, const Market& market,
                                   const Method& method) {
    validate_inputs(fwd, credit);
    const double risk_free = ForwardExposure(fwd, market).risk_free_value();
    if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
        const McEstimate adj = simulate(fwd, credit, model, market, *mc)[kSimplifiedAdjustment];
        return {risk_free + adj.mean, adj.std_error, adj.n};
    }
    const McEstimate ucva = ucva_forward(fwd, credit, model, market, method);
    const McEstimate udva = udva_forward(fwd, credit, model, market, method);
    return exact(risk_free + udva.mean - ucva.mean);
}

BcvaReport zcb_report(const ZeroCouponBond& bond, const CreditParams& credit,
                      const GumbelBivariateExponential& model, const Market& market) {
    bond.validate();
    credit.validate();
    const double maturity = bond.maturity;
    const double bond_price = market.curve().zero_bond(0.0, maturity);
    const double lgd_b = credit.lgd_b;

    // V0(t) = P(t,T) >= 0 and D(0,t) P(t,T) = P(0,T): only B's default costs A, and the
    // discounted exposure at any default time is P(0,T).
    BcvaReport report;
    report.risk_free_value = bond_price;
    report.ucva_a = lgd_b * bond_price * model.prob_default_before(Party::B, maturity);
    report.udva_a = 0.0;
    report.bilateral_cva = lgd_b * bond_price * model.prob_order_before(maturity, Party::B);
    report.bilateral_dva = 0.0;
    report.full_price = report.risk_free_value + report.bilateral_dva - report.bilateral_cva;
    report.simplified_price = report.risk_free_value + report.udva_a - report.ucva_a;
    report.difference = lgd_b * bond_price * model.prob_both_ordered_before(maturity, Party::A);
    // Substitution closeout: P(0,T) - L_B P(0,T) Q(tau_B <= T), the unilateral price.
    report.substitution_closeout_price = report.risk_free_value - report.ucva_a;
    return report;
}

}  // namespace bcva
