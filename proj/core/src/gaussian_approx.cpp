#include "priceform/gaussian_approx.hpp"

#include "priceform/errors.hpp"

#include <algorithm>
#include <cmath>

namespace priceform {

VarianceCurve::VarianceCurve(double prior_variance, double learning_rate, double sigma)
    : v0_(prior_variance), c_(learning_rate), sigma_(sigma)
{
    if (!(prior_variance > 0.0) || !(learning_rate > 0.0) || !(sigma >= 0.0))
        throw InvalidArgument("variance curve: need V0 > 0, c > 0, sigma >= 0");
    stationary_ = sigma > 0.0 ? sigma / std::sqrt(c_) : 0.0;
    rate_ = sigma * std::sqrt(c_);
}

VarianceCurve VarianceCurve::make(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                                  double sigma)
{
    prior.validate();
    const double t1 = characteristic_time(intensity, half_spread);
    return VarianceCurve(prior.variance(), intensity.a() * intensity.a() / t1, sigma);
}

double VarianceCurve::variance(double t) const
{
    if (t < 0.0)
        throw InvalidArgument("variance curve: t must be >= 0");
    if (sigma_ == 0.0)
        return v0_ / (1.0 + c_ * v0_ * t);
    if (v0_ == stationary_)
        return stationary_;
    const double th = std::tanh(rate_ * t);
    return stationary_ * (v0_ + stationary_ * th) / (stationary_ + v0_ * th);
}

double VarianceCurve::log_growth(double t) const
{
    if (t < 0.0)
        throw InvalidArgument("variance curve: t must be >= 0");
    if (sigma_ == 0.0)
        return std::log1p(c_ * v0_ * t);
    const double kt = rate_ * t;
    const double r = v0_ / stationary_;
    // cosh + r sinh = e^{kt} (1 - (1 - r)/2 (1 - e^{-2kt}))
    return kt + std::log1p(-0.5 * (1.0 - r) * -std::expm1(-2.0 * kt));
}

double stationary_variance(const ExpIntensity& intensity, double half_spread, double sigma)
{
    return sigma * std::sqrt(characteristic_time(intensity, half_spread)) / intensity.a();
}

double variance_at(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread, double sigma,
                   double t)
{
    return VarianceCurve::make(prior, intensity, half_spread, sigma).variance(t);
}

double variance_at_sqrt_form(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                             double sigma, double t)
{
    prior.validate();
    const double t1 = characteristic_time(intensity, half_spread);
    const double a = intensity.a();
    if (sigma == 0.0)
        return 1.0 / (1.0 / prior.variance() + a * a * t / t1);
    const double v_inf = sigma * std::sqrt(t1) / a;
    const double s04 = prior.variance() * prior.variance();
    const double q = s04 * a * a / (sigma * sigma * t1);
    if (q == 1.0)
        return v_inf;
    const double decay = -(a * sigma / (2.0 * std::sqrt(t1))) * t;
    if (q > 1.0)
        return v_inf * std::sqrt(1.0 + std::exp(decay + std::log(q - 1.0)));
    return v_inf * std::sqrt(1.0 - std::exp(decay + std::log(1.0 - q)));
}

GaussianApproxFilter::GaussianApproxFilter(const GaussianPrior& prior, const ExpIntensity& intensity,
                                           double half_spread, double sigma)
    : curve_(VarianceCurve::make(prior, intensity, half_spread, sigma)),
      a_(intensity.a()),
      state_{prior.x0, prior.variance(), 0.0}
{
}

void GaussianApproxFilter::advance(double t, std::optional<double> mid)
{
    if (t < state_.t)
        throw InvalidArgument("gaussian filter: cannot move backwards in time");
    if (mid)
        state_.mean = *mid + (state_.mean - *mid) * curve_.discount(state_.t, t);
    state_.t = t;
    state_.variance = curve_.variance(t);
}

void GaussianApproxFilter::observe(Side side)
{
    state_.mean += sign_of(side) * a_ * state_.variance;
}

GaussianState evolve_mean(const GaussianState& state, const VarianceCurve& curve, double a,
                          const QuoteHistory* quotes, std::span<const TradeEvent> events, double until)
{
    if (until < state.t)
        throw InvalidArgument("evolve_mean: until is before the state time");
    GaussianState s = state;

    const auto drift_to = [&](double t) {
        if (quotes) {
            // Split at quote changes; the mid is constant on each piece.
            for (const auto& seg : quotes->segments()) {
                if (seg.start <= s.t || seg.start >= t)
                    continue;
                const double mid = quotes->at(s.t).mid();
                s.mean = mid + (s.mean - mid) * curve.discount(s.t, seg.start);
                s.t = seg.start;
            }
            const double mid = quotes->at(s.t).mid();
            s.mean = mid + (s.mean - mid) * curve.discount(s.t, t);
        }
        s.t = t;
    };

    for (const TradeEvent& event : events) {
        if (!(event.time > state.t) || event.time > until)
            continue;
        drift_to(event.time);
        s.mean += sign_of(event.side) * a * curve.variance(event.time);
    }
    drift_to(until);
    s.variance = curve.variance(until);
    return s;
}

NoInfoImpact impact_no_info(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                            double sigma, double beta, double t, double T)
{
    if (!(beta > 0.0))
        throw InvalidArgument("impact_no_info: beta must be > 0");
    if (t < 0.0)
        throw InvalidArgument("impact_no_info: t must be >= 0");
    const auto curve = VarianceCurve::make(prior, intensity, half_spread, sigma);
    const double a = intensity.a();
    const double t1 = characteristic_time(intensity, half_spread);
    const double stop = std::min(t, T);

    NoInfoImpact out;
    out.closed_form = beta * t1 / a * curve.log_growth(stop);
    const long children = static_cast<long>(std::floor(beta * stop * (1.0 + 1e-12)));
    for (long k = 1; k <= children; ++k)
        out.jump_sum += a * curve.variance(static_cast<double>(k) / beta);
    const double v0 = curve.prior_variance();
    out.large_beta = std::abs(curve.variance(1.0 / beta) - v0) < 0.01 * v0;
    return out;
}

AverageImpact average_impact(const GaussianPrior& prior, const ExpIntensity& intensity, double half_spread,
                             double sigma, double beta, double s0, double t, double T)
{
    if (!(beta >= 0.0))
        throw InvalidArgument("average_impact: beta must be >= 0");
    if (t < 0.0)
        throw InvalidArgument("average_impact: t must be >= 0");
    const auto curve = VarianceCurve::make(prior, intensity, half_spread, sigma);
    const double a = intensity.a();
    const double t1 = characteristic_time(intensity, half_spread);
    const double g_t = curve.log_growth(t);
    const double stop = std::min(t, T);

    AverageImpact out;
    out.learning = prior.x0 + (s0 - prior.x0) * -std::expm1(-g_t);
    out.impact = beta * t1 / a * (std::exp(curve.log_growth(stop) - g_t) - std::exp(-g_t));
    if (beta > 0.0) {
        const long children = static_cast<long>(std::floor(beta * stop * (1.0 + 1e-12)));
        for (long k = 1; k <= children; ++k) {
            const double tk = static_cast<double>(k) / beta;
            out.impact_jumps += a * curve.variance(tk) * std::exp(curve.log_growth(tk) - g_t);
        }
    }
    return out;
}

}  // namespace priceform
