#include "priceform/flow.hpp"

#include "priceform/errors.hpp"

#include <cmath>
#include <string>

namespace priceform {

PricePath simulate_price(const PriceModel& model, double dt, double horizon, RngStream& rng)
{
    model.validate();
    if (!(dt > 0.0))
        throw InvalidArgument("simulate_price: dt must be > 0");
    if (!(horizon >= dt))
        throw InvalidArgument("simulate_price: horizon must be >= dt");

    const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
    const double sqrt_dt = std::sqrt(dt);
    PricePath path;
    path.times.reserve(steps + 1);
    path.values.reserve(steps + 1);
    double w = 0.0;
    path.push(0.0, model.s0);
    for (std::size_t k = 1; k <= steps; ++k) {
        if (model.sigma > 0.0)
            w += sqrt_dt * rng.normal();
        const double t = static_cast<double>(k) * dt;
        path.push(t, model.s0 + model.mu * t + model.sigma * w);
    }
    return path;
}

void MetaOrderSchedule::validate() const
{
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidArgument("meta-order: beta must be > 0");
    if (!(horizon >= 0.0))
        throw InvalidArgument("meta-order: horizon must be >= 0");
}

long MetaOrderSchedule::executed_by(double t) const
{
    const double until = std::min(t, horizon);
    if (!(until > 0.0))
        return 0;
    // k/beta <= until, tolerant to the rounding of k/beta itself.
    return static_cast<long>(std::floor(beta * until * (1.0 + 1e-12)));
}

std::vector<TradeEvent> meta_events(const MetaOrderSchedule& schedule, double until)
{
    schedule.validate();
    const double stop = std::min(schedule.horizon, until);
    if (!std::isfinite(stop))
        throw InvalidArgument("meta_events: infinite schedule needs a finite truncation time");
    const long count = schedule.executed_by(stop);
    std::vector<TradeEvent> events;
    events.reserve(static_cast<std::size_t>(std::max(0L, count)));
    for (long k = 1; k <= count; ++k)
        events.push_back({static_cast<double>(k) / schedule.beta, Side::Ask, Source::Meta});
    return events;
}

TradeFlow::TradeFlow(PriceModel model, ClippedIntensity intensity, RngStream rng, Envelope envelope)
    : model_(model), intensity_(intensity), rng_(rng), envelope_(envelope), s_(model.s0)
{
    model_.validate();
}

void TradeFlow::advance_price(double t)
{
    const double h = t - t_;
    if (h > 0.0) {
        s_ += model_.mu * h;
        if (model_.sigma > 0.0)
            s_ += model_.sigma * std::sqrt(h) * rng_.normal();
    }
    t_ = t;
}

double TradeFlow::local_bound(const Quotes& quotes, double t_end) const
{
    const double h = std::max(0.0, t_end - t_);
    const double band = std::abs(model_.mu) * h + band_sigmas_ * model_.sigma * std::sqrt(h);
    return intensity_(quotes.ask() - (s_ + band)) + intensity_((s_ - band) - quotes.bid());
}

template <class QuoteAt>
std::optional<TradeEvent> TradeFlow::run(QuoteAt&& quote_at, double rate, double t_end, bool global)
{
    if (t_end < t_)
        throw InvalidArgument("TradeFlow: t_end is before the current time");
    const double ceiling = intensity_.ceiling();
    const auto& base = intensity_.base();
    while (true) {
        const double next = t_ + rng_.exponential(rate);
        if (!(next < t_end)) {
            advance_price(t_end);
            if (path_)
                path_->push(t_, s_);
            return std::nullopt;
        }
        advance_price(next);
        ++proposals_;
        if (path_)
            path_->push(t_, s_);

        const Quotes q = quote_at(t_);
        const double ask_distance = q.ask() - s_;
        const double bid_distance = s_ - q.bid();
        if (base(ask_distance) > ceiling || base(bid_distance) > ceiling)
            throw EnvelopeViolation("TradeFlow: intensity above the clip ceiling at t=" +
                                    std::to_string(t_) + "; increase the clip width");
        const double ask_rate = intensity_(ask_distance);
        const double bid_rate = intensity_(bid_distance);
        const double u = rng_.uniform() * rate;

        if (global) {
            if (u < ask_rate)
                return TradeEvent{t_, Side::Ask, Source::Opportunistic, q, s_};
            if (u >= ceiling && u < ceiling + bid_rate)
                return TradeEvent{t_, Side::Bid, Source::Opportunistic, q, s_};
            continue;
        }
        if (ask_rate + bid_rate > rate * (1.0 + 1e-12))
            throw EnvelopeViolation("TradeFlow: intensity above the local envelope at t=" +
                                    std::to_string(t_));
        if (u < ask_rate)
            return TradeEvent{t_, Side::Ask, Source::Opportunistic, q, s_};
        if (u < ask_rate + bid_rate)
            return TradeEvent{t_, Side::Bid, Source::Opportunistic, q, s_};
    }
}

std::optional<TradeEvent> TradeFlow::next_until(const Quotes& quotes, double t_end)
{
    const auto frozen = [&quotes](double) { return quotes; };
    if (envelope_ == Envelope::Global)
        return run(frozen, 2.0 * intensity_.ceiling(), t_end, true);
    return run(frozen, local_bound(quotes, t_end), t_end, false);
}

std::optional<TradeEvent> TradeFlow::next_until(const std::function<Quotes(double)>& quotes, double t_end)
{
    if (envelope_ != Envelope::Global)
        throw InvalidArgument("TradeFlow: a time-varying quote process needs the global envelope");
    return run(quotes, 2.0 * intensity_.ceiling(), t_end, true);
}

FlowRecord simulate_trades(const PriceModel& model, const std::function<Quotes(double)>& quotes,
                           const ClippedIntensity& intensity, double horizon, RngStream& rng)
{
    if (!(horizon >= 0.0))
        throw InvalidArgument("simulate_trades: horizon must be >= 0");
    FlowRecord record;
    TradeFlow flow(model, intensity, rng, Envelope::Global);
    record.path.push(0.0, model.s0);
    flow.record_path(&record.path);
    while (flow.time() < horizon) {
        auto event = flow.next_until(quotes, horizon);
        if (!event)
            break;
        record.events.push_back(*event);
    }
    rng = flow.rng();
    return record;
}

}  // namespace priceform
