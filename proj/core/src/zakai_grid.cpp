#include "priceform/zakai_grid.hpp"

#include "priceform/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>

namespace priceform {

GridSpec GridSpec::around(const GaussianPrior& prior, double sigma, double horizon, std::size_t n)
{
    prior.validate();
    const double half_width = 12.0 * prior.sigma0 + 6.0 * sigma * std::sqrt(std::max(0.0, horizon));
    return GridSpec{prior.x0 - half_width, prior.x0 + half_width, n};
}

GridDensity GridSpec::sample(const GaussianPrior& prior) const
{
    return GridDensity::gaussian(x_min, x_max, n, prior.x0, prior.sigma0);
}

double max_stable_dt(const ExpIntensity& intensity, double half_spread, double dx, double sigma)
{
    double dt = 0.1 * characteristic_time(intensity, half_spread);
    if (sigma > 0.0)
        dt = std::min(dt, dx * dx / (sigma * sigma));
    return dt;
}

double between_trade_potential(const ExpIntensity& intensity, const Quotes& quotes, double x) noexcept
{
    return intensity(quotes.ask() - x) + intensity(x - quotes.bid()) - 2.0;
}

GridDensity step_continuous(const GridDensity& density, const Quotes& quotes, const PriceModel& model,
                            const ExpIntensity& intensity, double dt)
{
    ZakaiGridFilter filter(density, model, intensity, {dt, INT_MAX, false});
    filter.step(quotes, dt);
    GridDensity out = filter.density();
    out.set_normalized(false);
    return out;
}

GridDensity apply_trade(const GridDensity& density, const Quotes& quotes, const ExpIntensity& intensity,
                        Side side)
{
    GridDensity out = density;
    auto v = out.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = out.x(i);
        v[i] *= side == Side::Ask ? intensity(quotes.ask() - x) : intensity(x - quotes.bid());
    }
    out.set_normalized(false);
    return out;
}

namespace {

/// log of the closed-form unnormalized density at every node.
std::vector<double> closed_form_log(const GridDensity& prior, const QuoteHistory& quotes,
                                    std::span<const TradeEvent> trades, const ExpIntensity& intensity, double t)
{
    if (t < 0.0)
        throw InvalidArgument("closed form: t must be >= 0");
    const std::size_t n = prior.size();
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i)
        logs[i] = prior[i] > 0.0 ? std::log(prior[i]) : -std::numeric_limits<double>::infinity();
    if (t == 0.0)
        return logs;

    const auto segments = quotes.segments();
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const double start = k == 0 ? 0.0 : std::max(0.0, segments[k].start);
        const double end = k + 1 < segments.size() ? std::min(t, segments[k + 1].start) : t;
        const double length = end - start;
        if (!(length > 0.0))
            continue;
        const Quotes& q = segments[k].quotes;
        for (std::size_t i = 0; i < n; ++i)
            logs[i] -= length * between_trade_potential(intensity, q, prior.x(i));
    }
    for (const TradeEvent& trade : trades) {
        if (!(trade.time > 0.0) || trade.time > t)
            continue;
        const Quotes& q = quotes.before(trade.time);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = prior.x(i);
            logs[i] += trade.side == Side::Ask ? intensity.log_rate(q.ask() - x) : intensity.log_rate(x - q.bid());
        }
    }
    return logs;
}

}  // namespace

GridDensity closed_form_fixed_price(const GridDensity& prior, const QuoteHistory& quotes,
                                    std::span<const TradeEvent> trades, const ExpIntensity& intensity, double t)
{
    auto logs = closed_form_log(prior, quotes, trades, intensity, t);
    for (double& v : logs)
        v = std::exp(v);
    return GridDensity(prior.x_min(), prior.dx(), std::move(logs), false);
}

GridDensity closed_form_posterior(const GridDensity& prior, const QuoteHistory& quotes,
                                  std::span<const TradeEvent> trades, const ExpIntensity& intensity, double t)
{
    auto logs = closed_form_log(prior, quotes, trades, intensity, t);
    const double top = *std::max_element(logs.begin(), logs.end());
    if (!std::isfinite(top))
        throw ZeroMass("closed form: posterior has no mass on the grid");
    for (double& v : logs)
        v = std::exp(v - top);
    return normalize(GridDensity(prior.x_min(), prior.dx(), std::move(logs), false));
}

GridDensity asymptotic_between_trades(const GridDensity& prior, const Quotes& quotes,
                                      const ExpIntensity& intensity, double t, AsymptoticForm form)
{
    if (!(t > 0.0))
        throw InvalidArgument("asymptotic profile: t must be > 0");
    const double mid = quotes.mid();
    const double prior_at_mid = prior.interpolate(mid);
    if (!(prior_at_mid > 0.0))
        throw InvalidArgument("asymptotic profile: prior must be positive at the mid-price");
    const double t1 = characteristic_time(intensity, quotes.half_spread());
    const double ratio = t / t1;
    const bool scaled = form == AsymptoticForm::Scaled;
    const double a = intensity.a();
    const double amplitude = scaled ? a * std::sqrt(ratio / (2.0 * std::numbers::pi))
                                    : std::sqrt(ratio / std::numbers::pi);
    std::vector<double> values(prior.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double y = prior.x(i) - mid;
        const double arg = scaled ? a * y : y;
        values[i] = amplitude * prior[i] / prior_at_mid * std::exp(-ratio * (std::cosh(arg) - 1.0));
    }
    return GridDensity(prior.x_min(), prior.dx(), std::move(values), false);
}

ZakaiGridFilter::ZakaiGridFilter(GridDensity prior, PriceModel model, ExpIntensity intensity)
    : ZakaiGridFilter(std::move(prior), model, intensity, Options{})
{
}

ZakaiGridFilter::ZakaiGridFilter(GridDensity prior, PriceModel model, ExpIntensity intensity, Options options)
    : density_(std::move(prior)), model_(model), intensity_(intensity), options_(options)
{
    model_.validate();
    if (model_.mu != 0.0)
        throw InvalidArgument("grid filter: only driftless price models are supported");
    if (options_.renormalize_every < 1)
        throw InvalidArgument("grid filter: renormalize_every must be >= 1");
    for (double v : density_.values())
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("grid filter: prior values must be finite and >= 0");
}

GridDensity ZakaiGridFilter::posterior() const
{
    return normalize(density_);
}

FilterDiagnostics ZakaiGridFilter::diagnostics() const
{
    return priceform::diagnostics(density_);
}

double ZakaiGridFilter::dt_limit(const Quotes& quotes) const
{
    if (options_.dt_max > 0.0)
        return options_.dt_max;
    return max_stable_dt(intensity_, quotes.half_spread(), density_.dx(), model_.sigma);
}

void ZakaiGridFilter::diffuse(double dt)
{
    if (!(model_.sigma > 0.0))
        return;
    const std::size_t n = density_.size();
    const double dx = density_.dx();
    const double r = model_.sigma * model_.sigma * dt / (4.0 * dx * dx);

    if (dt != cached_dt_ || upper_.size() != n) {
        // Factor (I - r D) where D is the Neumann second difference.
        upper_.assign(n, 0.0);
        inv_diag_.assign(n, 0.0);
        rhs_.assign(n, 0.0);
        const double diag = 1.0 + 2.0 * r;
        double d = diag;
        inv_diag_[0] = 1.0 / d;
        upper_[0] = -2.0 * r * inv_diag_[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double lower = i + 1 == n ? -2.0 * r : -r;
            d = diag - lower * upper_[i - 1];
            inv_diag_[i] = 1.0 / d;
            upper_[i] = i + 1 < n ? -r * inv_diag_[i] : 0.0;
        }
        cached_dt_ = dt;
    }

    auto u = density_.values();
    const double centre = 1.0 - 2.0 * r;
    rhs_[0] = centre * u[0] + 2.0 * r * u[1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        rhs_[i] = r * (u[i - 1] + u[i + 1]) + centre * u[i];
    rhs_[n - 1] = 2.0 * r * u[n - 2] + centre * u[n - 1];

    rhs_[0] *= inv_diag_[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double lower = i + 1 == n ? -2.0 * r : -r;
        rhs_[i] = (rhs_[i] - lower * rhs_[i - 1]) * inv_diag_[i];
    }
    u[n - 1] = rhs_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        u[i] = rhs_[i] - upper_[i] * u[i + 1];
}

void ZakaiGridFilter::decay(const Quotes& quotes, double dt)
{
    auto u = density_.values();
    const double a = intensity_.a();
    const double lambda0 = intensity_.lambda0();
    const double ask = quotes.ask();
    const double bid = quotes.bid();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0)
            continue;
        const double x = density_.x(i);
        const double potential = lambda0 * (std::exp(-a * (ask - x)) + std::exp(-a * (x - bid))) - 2.0;
        u[i] *= std::exp(-potential * dt);
    }
}

void ZakaiGridFilter::check_underflow() const
{
    const auto v = density_.values();
    if (*std::max_element(v.begin(), v.end()) < 1e-300)
        throw Underflow("grid filter: density underflow at t=" + std::to_string(t_) +
                        "; renormalize more often");
}

void ZakaiGridFilter::step(const Quotes& quotes, double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("grid filter: dt must be > 0");
    if (options_.strang) {
        decay(quotes, 0.5 * dt);
        diffuse(dt);
        decay(quotes, 0.5 * dt);
    } else {
        diffuse(dt);
        decay(quotes, dt);
    }
    t_ += dt;
    density_.set_normalized(false);
    check_underflow();
    if (++steps_since_norm_ >= options_.renormalize_every)
        renormalize();
}

void ZakaiGridFilter::advance(const Quotes& quotes, double t_end)
{
    const double remaining = t_end - t_;
    if (!(remaining > 1e-12 * std::max(1.0, std::abs(t_end))))
        return;
    // Equal sub-steps so the Crank-Nicolson factorization is reused.
    const double pieces = std::max(1.0, std::ceil(remaining / dt_limit(quotes) - 1e-9));
    const double h = remaining / pieces;
    for (long k = 0; k < static_cast<long>(pieces); ++k)
        step(quotes, h);
    t_ = t_end;
}

void ZakaiGridFilter::observe_trade(const Quotes& quotes, Side side)
{
    density_ = apply_trade(density_, quotes, intensity_, side);
    renormalize();
}

void ZakaiGridFilter::renormalize()
{
    const double m = mass(density_);
    if (!(m > 0.0) || !std::isfinite(m))
        throw ZeroMass("grid filter: mass is " + std::to_string(m) + " at t=" + std::to_string(t_));
    log_scale_ += std::log(m);
    normalize_in_place(density_);
    steps_since_norm_ = 0;
}

}  // namespace priceform
