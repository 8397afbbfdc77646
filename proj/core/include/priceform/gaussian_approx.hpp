#pragma once

#include "priceform/model.hpp"

#include <optional>
#include <span>

namespace priceform {

/// Gaussian posterior N(mean, variance) of the small-spread filter at time t.
struct GaussianState {
    double mean = 0.0;
    double variance = 0.0;
    double t = 0.0;
};

/// Posterior variance of the small-spread filter.
///
/// The variance solves the Riccati equation dV/dt = sigma^2 - c V^2 with
/// c = a^2 / t1, independently of trades and of the quotes' mid. With
/// G(t) = c * int_0^t V(s) ds,
///   sigma = 0:  V = V0 / (1 + c V0 t),              G = log(1 + c V0 t)
///   sigma > 0:  V = v (V0 + v tanh(k t)) / (v + V0 tanh(k t)),
///               G = log(cosh(k t) + (V0 / v) sinh(k t)),
/// where v = sigma / sqrt(c) is the stationary variance and k = sigma sqrt(c).
/// exp(G(s) - G(t)) is the mean-reversion discount between s and t.
class VarianceCurve {
public:
    VarianceCurve(double prior_variance, double learning_rate, double sigma);

    static VarianceCurve make(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                              double sigma);

    double prior_variance() const noexcept { return v0_; }
    /// c = a^2 / t1.
    double learning_rate() const noexcept { return c_; }
    double sigma() const noexcept { return sigma_; }
    /// sigma / sqrt(c); zero when sigma = 0.
    double stationary() const noexcept { return stationary_; }

    double variance(double t) const;
    /// G(t) = c * int_0^t V(s) ds.
    double log_growth(double t) const;
    /// exp(-(G(t) - G(s))).
    double discount(double s, double t) const { return std::exp(log_growth(s) - log_growth(t)); }

private:
    double v0_;
    double c_;
    double sigma_;
    double stationary_;
    double rate_;  // sigma * sqrt(c)
};

/// sigma * sqrt(t1) / a, the long-run posterior variance under a Brownian price.
double stationary_variance(const ExpIntensity& intensity, double half_spread, double sigma);

/// Posterior variance at time t.
double variance_at(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread, double sigma,
                   double t);

/// The alternative closed form
///   v * sqrt(1 +/- exp(-(a sigma / (2 sqrt(t1))) t + C0))
/// with C0 = log(+/-(sigma0^4 a^2 / (sigma^2 t1) - 1)). It has the same
/// endpoints as variance_at but does not solve the variance equation in
/// between; kept for comparison only.
double variance_at_sqrt_form(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                             double sigma, double t);

/// Small-spread filter with exact per-interval integration of
///   dx = V(t) c (mid - x) dt + a V(t) (dN^a - dN^b + dN^beta).
class GaussianApproxFilter {
public:
    GaussianApproxFilter(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                         double sigma);

    const GaussianState& state() const noexcept { return state_; }
    const VarianceCurve& curve() const noexcept { return curve_; }

    /// Advances to t with a constant mid; std::nullopt means the mid tracks
    /// the posterior mean, which removes the drift.
    void advance(double t, std::optional<double> mid = std::nullopt);
    /// Jump of +a V (buy, including meta-order children) or -a V (sell).
    void observe(Side side);

private:
    VarianceCurve curve_;
    double a_;
    GaussianState state_;
};

/// Runs the filter from `state` to `until`. Quotes are read from `quotes` if
/// given, otherwise the mid tracks the posterior mean. Events in
/// (state.t, until] are applied in order; meta events count as buys.
GaussianState evolve_mean(const GaussianState& state, const VarianceCurve& curve, double a,
                          const QuoteHistory* quotes, std::span<const TradeEvent> events, double until);

struct NoInfoImpact {
    double closed_form = 0.0;  ///< (beta t1 / a) G(min(t, T)), the large-beta limit
    double jump_sum = 0.0;     ///< sum over meta children of a V(k / beta)
    bool large_beta = false;   ///< the variance moves by < 1% between children
};

/// x_t - x_0 when the mid tracks the posterior mean and N^a - N^b = 0.
NoInfoImpact impact_no_info(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                            double sigma, double beta, double t, double T);

struct AverageImpact {
    double learning = 0.0;      ///< A_t
    double impact = 0.0;        ///< B_t in the large-beta limit
    double impact_jumps = 0.0;  ///< B_t summed over the actual meta children
};

/// Decomposition E[x_t | S_0] ~ A_t + B_t with the jump processes replaced
/// by their linearized compensators.
AverageImpact average_impact(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                             double sigma, double beta, double s0, double t, double T);

}  // namespace priceform
