#include "priceform/impact_lab.hpp"

#include "priceform/errors.hpp"
#include "priceform/zakai_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace priceform {

std::string_view to_string(FilterKind kind) noexcept
{
    return kind == FilterKind::Grid ? "grid" : "gaussian";
}

std::string_view to_string(Readout readout) noexcept
{
    switch (readout) {
    case Readout::Auto: return "auto";
    case Readout::Mean: return "mean";
    case Readout::Argmax: return "argmax";
    }
    return "?";
}

void ImpactExperiment::validate() const
{
    (void)intensity();
    prior.validate();
    PriceModel{0.0, sigma, s0}.validate();
    if (!(half_spread >= 0.0))
        throw InvalidArgument("experiment: half_spread must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw InvalidArgument("experiment: beta must be finite and >= 0");
    if (!(T >= 0.0))
        throw InvalidArgument("experiment: T must be >= 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw InvalidArgument("experiment: horizon must be finite and > 0");
    if (std::isfinite(T) && beta > 0.0 && horizon < T)
        throw InvalidArgument("experiment: horizon must be >= T when T is finite");
    if (replicas < 1)
        throw InvalidArgument("experiment: replicas must be >= 1");
    if (grid_n < 3)
        throw InvalidArgument("experiment: grid_n must be >= 3");
    if (!(output_dt > 0.0))
        throw InvalidArgument("experiment: output_dt must be > 0");
    if (grid_half_width < 0.0 || clip_width < 0.0)
        throw InvalidArgument("experiment: grid_half_width and clip_width must be >= 0");
    if (filter == FilterKind::Gaussian && policy == PolicyKind::MidAtArgmax)
        throw InvalidArgument("experiment: mid-argmax quoting needs the grid filter");
    if (filter == FilterKind::Gaussian && effective_readout() == Readout::Argmax)
        throw InvalidArgument("experiment: the argmax readout needs the grid filter");
}

QuotePolicy ImpactExperiment::quote_policy() const
{
    switch (policy) {
    case PolicyKind::Fixed:
        return QuotePolicy::fixed(Quotes::centered(std::isnan(fixed_mid) ? prior.x0 : fixed_mid, half_spread));
    case PolicyKind::MidAtMean:
        return QuotePolicy::mid_at_mean(half_spread);
    case PolicyKind::MidAtArgmax:
        return QuotePolicy::mid_at_argmax(half_spread);
    }
    throw InvalidArgument("experiment: unknown policy");
}

Readout ImpactExperiment::effective_readout() const noexcept
{
    if (readout != Readout::Auto)
        return readout;
    return policy == PolicyKind::MidAtArgmax ? Readout::Argmax : Readout::Mean;
}

std::vector<double> ImpactExperiment::output_times() const
{
    std::vector<double> times;
    const auto count = static_cast<long>(std::floor(horizon / output_dt * (1.0 + 1e-12)));
    for (long k = 0; k <= count; ++k)
        times.push_back(std::min(horizon, static_cast<double>(k) * output_dt));
    if (horizon - times.back() > 1e-12 * horizon)
        times.push_back(horizon);
    return times;
}

double ImpactCurve::max_overlay_deviation() const
{
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
        worst = std::max(worst, std::abs(mean_impact[k] - overlay[k]));
    return worst;
}

double ImpactCurve::max_overlay_zscore() const
{
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
        worst = std::max(worst, std::abs(mean_impact[k] - overlay[k]) / std::max(stderr_impact[k], 1e-300));
    return worst;
}

namespace {

struct Checkpoint {
    double time;
    bool meta = false;
    bool output = false;
};

// Output times and meta-order times, merged; times closer than 1e-12 coincide.
std::vector<Checkpoint> checkpoints(const ImpactExperiment& exp)
{
    std::vector<Checkpoint> cps;
    for (double t : exp.output_times())
        cps.push_back({t, false, true});
    if (exp.beta > 0.0) {
        const MetaOrderSchedule schedule{exp.beta, exp.T};
        for (const auto& e : meta_events(schedule, exp.horizon))
            cps.push_back({e.time, true, false});
    }
    std::stable_sort(cps.begin(), cps.end(), [](const auto& l, const auto& r) { return l.time < r.time; });
    std::vector<Checkpoint> merged;
    for (const auto& cp : cps) {
        if (!merged.empty() && cp.time - merged.back().time <= 1e-12 * std::max(1.0, cp.time)) {
            merged.back().meta = merged.back().meta || cp.meta;
            merged.back().output = merged.back().output || cp.output;
            continue;
        }
        merged.push_back(cp);
    }
    return merged;
}

/// Uniform interface over the grid and Gaussian filters.
class ReplicaFilter {
public:
    explicit ReplicaFilter(const ImpactExperiment& exp) : exp_(exp)
    {
        if (exp.filter == FilterKind::Grid) {
            GridSpec spec = GridSpec::around(exp.prior, exp.sigma, exp.horizon, exp.grid_n);
            if (exp.grid_half_width > 0.0)
                spec = GridSpec{exp.prior.x0 - exp.grid_half_width, exp.prior.x0 + exp.grid_half_width, exp.grid_n};
            grid_.emplace(spec.sample(exp.prior), PriceModel{0.0, exp.sigma, exp.s0}, exp.intensity());
            refresh();
        } else {
            gaussian_.emplace(exp.prior, exp.intensity(), exp.half_spread, exp.sigma);
        }
    }

    PosteriorView view() const
    {
        if (grid_)
            return diag_;
        return gaussian_->state();
    }

    double mean() const { return grid_ ? diag_.mean : gaussian_->state().mean; }
    double variance() const { return grid_ ? diag_.variance : gaussian_->state().variance; }
    double argmax() const { return grid_ ? diag_.argmax : gaussian_->state().mean; }

    /// Longest step the caller may take with frozen quotes.
    double step_limit(const Quotes& quotes) const
    {
        return grid_ ? grid_->dt_limit(quotes) : std::numeric_limits<double>::infinity();
    }

    void advance(const Quotes& quotes, double t)
    {
        if (grid_) {
            grid_->advance(quotes, t);
            refresh();
        } else {
            // Under mid-at-mean the mid tracks the mean exactly and the drift vanishes.
            std::optional<double> mid;
            if (exp_.policy != PolicyKind::MidAtMean)
                mid = quotes.mid();
            gaussian_->advance(t, mid);
        }
    }

    void trade(const Quotes& quotes, Side side)
    {
        if (grid_) {
            grid_->observe_trade(quotes, side);
            refresh();
        } else {
            gaussian_->observe(side);
        }
    }

    std::optional<GridDensity> density() const
    {
        if (grid_)
            return grid_->posterior();
        return std::nullopt;
    }

private:
    void refresh() { diag_ = grid_->diagnostics(); }

    const ImpactExperiment& exp_;
    std::optional<ZakaiGridFilter> grid_;
    std::optional<GaussianApproxFilter> gaussian_;
    FilterDiagnostics diag_;
};

}  // namespace

ReplicaTrace run_replica(const ImpactExperiment& exp, std::uint64_t index, bool trace)
{
    exp.validate();
    const ExpIntensity intensity = exp.intensity();
    const QuotePolicy policy = exp.quote_policy();
    const bool read_argmax = exp.effective_readout() == Readout::Argmax;
    const ClippedIntensity clipped = exp.clip_width > 0.0
                                         ? ClippedIntensity::with_clip_width(intensity, exp.clip_width)
                                         : ClippedIntensity(intensity);
    TradeFlow flow(PriceModel{0.0, exp.sigma, exp.s0}, clipped, RngStream(exp.seed, index), Envelope::Local);
    ReplicaFilter filter(exp);

    ReplicaTrace out;
    const auto record = [&](double t, const Quotes& q, std::string_view event) {
        if (trace)
            out.trajectory.push_back({t, filter.mean(), filter.variance(), filter.argmax(), q, flow.price(), event});
    };

    const auto cps = checkpoints(exp);
    std::size_t ci = 0;
    double t = 0.0;
    Quotes quotes = quotes_from_posterior(policy, filter.view());
    if (!cps.empty() && cps.front().time == 0.0) {
        out.readout.push_back((read_argmax ? filter.argmax() : filter.mean()) - exp.s0);
        record(0.0, quotes, "");
        ++ci;
    }

    while (ci < cps.size()) {
        const Checkpoint& cp = cps[ci];
        quotes = quotes_from_posterior(policy, filter.view());
        const double step_end = std::min(cp.time, t + filter.step_limit(quotes));
        if (auto event = flow.next_until(quotes, step_end)) {
            filter.advance(quotes, event->time);
            filter.trade(quotes, event->side);
            t = event->time;
            if (trace) {
                out.events.push_back(*event);
                record(t, quotes, event->side == Side::Ask ? "ask" : "bid");
            }
            continue;
        }
        filter.advance(quotes, step_end);
        t = step_end;
        if (step_end < cp.time)
            continue;
        if (cp.meta) {
            filter.trade(quotes, Side::Ask);
            if (trace) {
                out.events.push_back({t, Side::Ask, Source::Meta, quotes, flow.price()});
                record(t, quotes, "meta");
            }
        }
        if (cp.output) {
            out.readout.push_back((read_argmax ? filter.argmax() : filter.mean()) - exp.s0);
            if (trace && !cp.meta)
                record(t, quotes_from_posterior(policy, filter.view()), "");
        }
        ++ci;
    }
    if (trace) {
        out.final_density = filter.density();
        out.final_quotes = quotes_from_posterior(policy, filter.view());
    }
    return out;
}

ImpactCurve run_experiment(const ImpactExperiment& exp)
{
    exp.validate();
    const auto replicas = static_cast<std::size_t>(exp.replicas);
    std::vector<std::vector<double>> readouts(replicas);
    std::vector<std::exception_ptr> errors(replicas);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t r = next++; r < replicas; r = next++) {
            try {
                readouts[r] = run_replica(exp, r).readout;
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    unsigned threads = exp.threads > 0 ? static_cast<unsigned>(exp.threads) : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(replicas)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (std::size_t r = 0; r < replicas; ++r) {
        if (!errors[r])
            continue;
        try {
            std::rethrow_exception(errors[r]);
        } catch (const std::exception& e) {
            throw Error("replica " + std::to_string(r) + ": " + e.what());
        }
    }

    ImpactCurve curve;
    curve.times = exp.output_times();
    curve.readout = exp.effective_readout();
    const std::size_t n = curve.times.size();
    curve.mean_impact.assign(n, 0.0);
    curve.stderr_impact.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (const auto& r : readouts)
            sum += r[k];
        const double mean = sum / static_cast<double>(replicas);
        double ss = 0.0;
        for (const auto& r : readouts)
            ss += (r[k] - mean) * (r[k] - mean);
        curve.mean_impact[k] = mean;
        if (replicas > 1)
            curve.stderr_impact[k] = std::sqrt(ss / static_cast<double>(replicas - 1) / static_cast<double>(replicas));
    }
    const auto overlays = analytic_overlays(exp);
    curve.overlay.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        curve.overlay[k] = overlays.learning[k] + overlays.impact_jumps[k];
    return curve;
}

SlowLimit slow_limit_residual(double beta, double t1, double a)
{
    if (!(beta > 0.0) || !(t1 > 0.0) || !(a > 0.0))
        throw InvalidArgument("slow limit: beta, t1 and a must be > 0");
    const double b = beta * t1;
    if (!(b < 1.0))
        throw DomainError("slow limit: needs beta t1 < 1, got " + std::to_string(b));
    const double u = 1.0 + b;
    const double v = 1.0 - b;
    const double du = 0.0;
    const double dv = 0.0;

    SlowLimit out;
    // Everything is multiplied by t1 so the residual is dimensionless.
    for (double t : {0.0, 0.1 * t1, t1, 10.0 * t1, 1e3 * t1}) {
        const double common = b + 0.5 * (v - u);
        const double tail = 0.5 * (v + u) + b * (v - u) / (v + u);
        const double r1 = (u * v + t * du * v) - (common + tail);
        const double r2 = (u * v + t * u * dv) - (-common + tail);
        const double r3 = (u + t * du) - (2.0 * b / (v + u) + 1.0);
        const double r4 = (v + t * dv) - (-2.0 * b / (v + u) + 1.0);
        // (tu)' + (tv)' = 2.
        const double r5 = (u + t * du) + (v + t * dv) - 2.0;
        for (double r : {r1, r2, r3, r4, r5})
            out.residual = std::max(out.residual, std::abs(r));
    }
    out.impact_log = std::log1p(b) / a;
    out.impact_linear = b / a;
    return out;
}

FixedQuoteLimit fixed_quote_limits(const GaussianPrior& prior, const ExpIntensity& intensity,
                                   const Quotes& quotes, double S, double beta, double T)
{
    prior.validate();
    if (!(beta >= 0.0))
        throw InvalidArgument("fixed_quote_limits: beta must be >= 0");
    FixedQuoteLimit out;
    out.infinite_horizon = std::isinf(T);
    if (!out.infinite_horizon) {
        out.limit = S;
        return out;
    }
    const double a = intensity.a();
    const double bt1 = beta * characteristic_time(intensity, quotes.half_spread());
    out.limit = quotes.mid() + std::asinh(std::sinh(a * (S - quotes.mid())) + bt1) / a;
    return out;
}

double diffuse_prior_mode(const ExpIntensity& intensity, const Quotes& quotes, double t, long net_trades,
                          double beta, double T)
{
    if (!(t > 0.0))
        throw InvalidArgument("diffuse_prior_mode: t must be > 0");
    const double t1 = characteristic_time(intensity, quotes.half_spread());
    long children = 0;
    if (beta > 0.0)
        children = MetaOrderSchedule{beta, T}.executed_by(t);
    return quotes.mid() + std::asinh(t1 / t * static_cast<double>(net_trades + children)) / intensity.a();
}

AnalyticOverlays analytic_overlays(const ImpactExperiment& exp)
{
    exp.validate();
    const ExpIntensity intensity = exp.intensity();
    const double t1 = characteristic_time(intensity, exp.half_spread);
    const double a = exp.a;

    AnalyticOverlays out;
    out.times = exp.output_times();
    for (double t : out.times) {
        const auto avg = average_impact(exp.prior, intensity, exp.half_spread, exp.sigma, exp.beta, exp.s0, t, exp.T);
        out.learning.push_back(avg.learning - exp.s0);
        out.impact.push_back(avg.impact);
        out.impact_jumps.push_back(avg.impact_jumps);
        if (exp.beta > 0.0) {
            const auto ni = impact_no_info(exp.prior, intensity, exp.half_spread, exp.sigma, exp.beta, t, exp.T);
            out.no_info.push_back(ni.closed_form);
            out.no_info_jumps.push_back(ni.jump_sum);
        } else {
            out.no_info.push_back(0.0);
            out.no_info_jumps.push_back(0.0);
        }
    }
    if (exp.beta > 0.0) {
        const double bt1 = exp.beta * t1;
        const long k_max = MetaOrderSchedule{exp.beta, exp.T}.executed_by(exp.horizon);
        const auto modes = impact_recursion(exp.prior, intensity, exp.half_spread, exp.beta, static_cast<int>(k_max));
        for (long k = 1; k <= k_max; ++k) {
            out.child_times.push_back(static_cast<double>(k) / exp.beta);
            out.recursion.push_back(modes[static_cast<std::size_t>(k - 1)] - exp.prior.x0);
            out.fast_limit.push_back(std::log(2.0 * static_cast<double>(k) * bt1) / a);
        }
        if (bt1 < 1.0)
            out.slow_limit = bt1 / a;
        out.first_step = std::asinh(bt1) / a;
    }
    return out;
}

}  // namespace priceform
