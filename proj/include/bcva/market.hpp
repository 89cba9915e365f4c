#pragma once

namespace bcva {

/// Standard normal cumulative distribution function, accurate to ~1e-16 relative.
double normal_cdf(double x);

/// Deterministic discounting at a single constant continuously-compounded short rate.
/// With deterministic rates the zero-coupon bond price P(t,T) equals D(t,T).
class DiscountCurve {
public:
    explicit DiscountCurve(double short_rate = 0.0);

    double short_rate() const noexcept { return short_rate_; }

    /// exp(-r (T - t)); requires 0 <= t <= T.
    double discount_factor(double t, double maturity) const;
    double zero_bond(double t, double maturity) const { return discount_factor(t, maturity); }

private:
    double short_rate_;
};

/// Risk-neutral geometric Brownian motion dS = r S dt + sigma S dW.
class GbmEquity {
public:
    GbmEquity(double s0, double sigma);

    double s0() const noexcept { return s0_; }
    double sigma() const noexcept { return sigma_; }

private:
    double s0_;
    double sigma_;
};

/// The market the valuation runs in: one equity and one discount curve. Immutable.
class Market {
public:
    Market(GbmEquity equity, DiscountCurve curve = DiscountCurve{});

    const GbmEquity& equity() const noexcept { return equity_; }
    const DiscountCurve& curve() const noexcept { return curve_; }

    double discount_factor(double t, double maturity) const {
        return curve_.discount_factor(t, maturity);
    }

    /// S_t = s0 exp((r - sigma^2/2) t + sigma sqrt(t) z).
    double gbm_terminal(double t, double z) const;

    /// Undiscounted E[(S_t - K)^+] under the risk-neutral GBM. t = 0 gives the intrinsic value.
    double black_call(double t, double strike) const;
    /// Undiscounted E[(K - S_t)^+].
    double black_put(double t, double strike) const;

    /// Default-free value at t of a long forward struck at K maturing at T: s_t - P(t,T) K.
    double forward_npv(double t, double s_t, double strike, double maturity) const;

private:
    GbmEquity equity_;
    DiscountCurve curve_;
};

}  // namespace bcva
