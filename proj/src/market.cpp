#include "bcva/market.hpp"

#include <algorithm>
#include <cmath>

#include "bcva/errors.hpp"

namespace bcva {

using detail::require;

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

DiscountCurve::DiscountCurve(double short_rate) : short_rate_(short_rate) {
    require(std::isfinite(short_rate), "short rate must be finite");
}

double DiscountCurve::discount_factor(double t, double maturity) const {
    require(t >= 0.0 && maturity >= 0.0, "discount_factor: negative time");
    require(t <= maturity, "discount_factor: t must not exceed T");
    if (short_rate_ == 0.0) return 1.0;
    return std::exp(-short_rate_ * (maturity - t));
}

GbmEquity::GbmEquity(double s0, double sigma) : s0_(s0), sigma_(sigma) {
    require(s0 > 0.0 && std::isfinite(s0), "GbmEquity: s0 must be positive");
    require(sigma > 0.0 && std::isfinite(sigma), "GbmEquity: sigma must be positive");
}

Market::Market(GbmEquity equity, DiscountCurve curve) : equity_(equity), curve_(curve) {}

double Market::gbm_terminal(double t, double z) const {
    require(t >= 0.0, "gbm_terminal: negative time");
    if (t == 0.0) return equity_.s0();
    const double sigma = equity_.sigma();
    const double drift = (curve_.short_rate() - 0.5 * sigma * sigma) * t;
    return equity_.s0() * std::exp(drift + sigma * std::sqrt(t) * z);
}

namespace {

struct BlackLegs {
    double forward;
    double call;
    double put;
};

BlackLegs black_legs(const GbmEquity& equity, double rate, double t, double strike) {
    require(t >= 0.0, "black: negative time");
    require(strike >= 0.0, "black: negative strike");
    if (t == 0.0) {
        const double s0 = equity.s0();
        return {s0, std::max(s0 - strike, 0.0), std::max(strike - s0, 0.0)};
    }
    const double forward = equity.s0() * std::exp(rate * t);
    if (strike == 0.0) return {forward, forward, 0.0};
    const double stdev = equity.sigma() * std::sqrt(t);
    const double d1 = std::log(forward / strike) / stdev + 0.5 * stdev;
    const double d2 = d1 - stdev;
    return {forward, forward * normal_cdf(d1) - strike * normal_cdf(d2),
            strike * normal_cdf(-d2) - forward * normal_cdf(-d1)};
}

}  // namespace

double Market::black_call(double t, double strike) const {
    return black_legs(equity_, curve_.short_rate(), t, strike).call;
}

double Market::black_put(double t, double strike) const {
    return black_legs(equity_, curve_.short_rate(), t, strike).put;
}

double Market::forward_npv(double t, double s_t, double strike, double maturity) const {
    return s_t - curve_.zero_bond(t, maturity) * strike;
}

}  // namespace bcva
