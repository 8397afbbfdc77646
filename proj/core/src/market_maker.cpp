#include "priceform/market_maker.hpp"

#include "priceform/errors.hpp"
#include "priceform/roots.hpp"

#include <cmath>
#include <string>

namespace priceform {

QuotePolicy::QuotePolicy(PolicyKind kind, double half_spread, Quotes fixed)
    : kind_(kind), half_spread_(half_spread), fixed_(fixed)
{
    if (!(half_spread >= 0.0))
        throw InvalidArgument("quote policy: half-spread must be >= 0");
}

QuotePolicy QuotePolicy::fixed(Quotes quotes)
{
    return QuotePolicy(PolicyKind::Fixed, quotes.half_spread(), quotes);
}

QuotePolicy QuotePolicy::mid_at_mean(double half_spread)
{
    return QuotePolicy(PolicyKind::MidAtMean, half_spread, {});
}

QuotePolicy QuotePolicy::mid_at_argmax(double half_spread)
{
    return QuotePolicy(PolicyKind::MidAtArgmax, half_spread, {});
}

QuotePolicy QuotePolicy::parse(std::string_view name, double half_spread, double mid)
{
    if (name == "fixed")
        return fixed(Quotes::centered(mid, half_spread));
    if (name == "mid-mean")
        return mid_at_mean(half_spread);
    if (name == "mid-argmax")
        return mid_at_argmax(half_spread);
    throw InvalidArgument("unknown quote policy '" + std::string(name) +
                          "' (expected fixed, mid-mean or mid-argmax)");
}

std::string_view to_string(PolicyKind kind) noexcept
{
    switch (kind) {
    case PolicyKind::Fixed: return "fixed";
    case PolicyKind::MidAtMean: return "mid-mean";
    case PolicyKind::MidAtArgmax: return "mid-argmax";
    }
    return "?";
}

ArgmaxMMState ArgmaxMMState::start(const GaussianPrior& prior)
{
    prior.validate();
    ArgmaxMMState s;
    s.x0 = prior.x0;
    s.xhat = prior.x0;
    return s;
}

ArgmaxMMState advance_to(ArgmaxMMState state, const ExpIntensity& intensity, double t)
{
    if (t < state.t)
        throw InvalidArgument("argmax state: cannot move backwards in time");
    const double gap = t - state.t;
    const double y = state.xhat - state.x0;
    state.U += gap * std::exp(intensity.a() * y);
    state.V += gap * std::exp(-intensity.a() * y);
    state.t = t;
    return state;
}

Quotes quotes_from_posterior(const QuotePolicy& policy, const PosteriorView& posterior)
{
    const double d = policy.half_spread();
    switch (policy.kind()) {
    case PolicyKind::Fixed:
        return policy.fixed_quotes();
    case PolicyKind::MidAtMean:
        if (const auto* g = std::get_if<FilterDiagnostics>(&posterior))
            return Quotes::centered(g->mean, d);
        if (const auto* g = std::get_if<GaussianState>(&posterior))
            return Quotes::centered(g->mean, d);
        throw PolicyStateMismatch("mid-mean policy needs grid diagnostics or a Gaussian state");
    case PolicyKind::MidAtArgmax:
        if (const auto* g = std::get_if<FilterDiagnostics>(&posterior))
            return Quotes::centered(g->argmax, d);
        if (const auto* g = std::get_if<ArgmaxMMState>(&posterior))
            return Quotes::centered(g->xhat, d);
        throw PolicyStateMismatch("mid-argmax policy needs grid diagnostics or an argmax state");
    }
    throw PolicyStateMismatch("unknown policy");
}

namespace {

// w * e^{s}, with 0 * inf treated as 0.
double weighted_exp(double w, double s)
{
    return w == 0.0 ? 0.0 : w * std::exp(s);
}

}  // namespace

double argmax_jump_slope(const ArgmaxMMState& state, const GaussianPrior& prior,
                         const ExpIntensity& intensity, double half_spread, double y)
{
    const double a = intensity.a();
    const double t1 = characteristic_time(intensity, half_spread);
    return -1.0 / prior.variance() -
           a * a / (2.0 * t1) * (weighted_exp(state.V, a * y) + weighted_exp(state.U, -a * y));
}

ArgmaxMMState argmax_jump(const ArgmaxMMState& state, const GaussianPrior& prior,
                          const ExpIntensity& intensity, double half_spread, double t, int sign)
{
    if (sign != 1 && sign != -1)
        throw InvalidArgument("argmax_jump: sign must be +1 or -1");
    prior.validate();
    ArgmaxMMState s = state.t < t ? advance_to(state, intensity, t) : state;
    const double a = intensity.a();
    const double t1 = characteristic_time(intensity, half_spread);
    const double inv_var = 1.0 / prior.variance();
    const double pull = a * static_cast<double>(s.net_jumps + sign);

    const auto f = [&](double y) {
        return -y * inv_var - a / (2.0 * t1) * (weighted_exp(s.V, a * y) - weighted_exp(s.U, -a * y)) + pull;
    };
    const auto df = [&](double y) { return argmax_jump_slope(s, prior, intensity, half_spread, y); };

    const RootResult r = solve_monotone(f, df, s.xhat - s.x0, 1.0 / a, 1e-12);
    s.xhat = s.x0 + r.root;
    s.net_jumps += sign;
    return s;
}

std::vector<double> impact_recursion(const GaussianPrior& prior, const ExpIntensity& intensity,
                                     double half_spread, double beta, int k_max)
{
    if (!(beta > 0.0))
        throw InvalidArgument("impact_recursion: beta must be > 0");
    prior.validate();
    std::vector<double> out;
    if (k_max <= 0)
        return out;
    const double a = intensity.a();
    const double bt1 = beta * characteristic_time(intensity, half_spread);
    const double prior_term = 1.0 / (a * prior.variance());

    std::vector<double> y{0.0};
    out.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        const auto f = [&](double v) {
            double sum = 0.0;
            for (double yi : y)
                sum += std::sinh(a * (v - yi));
            return v * prior_term + sum / bt1 - k;
        };
        const auto df = [&](double v) {
            double sum = 0.0;
            for (double yi : y)
                sum += std::cosh(a * (v - yi));
            return prior_term + a * sum / bt1;
        };
        const RootResult r = solve_monotone(f, df, y.back(), 1.0 / a, 1e-12);
        y.push_back(r.root);
        out.push_back(prior.x0 + r.root);
    }
    return out;
}

}  // namespace priceform
