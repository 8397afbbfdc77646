#include "priceform/model.hpp"

#include "priceform/errors.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace priceform {

ExpIntensity::ExpIntensity(double lambda0, double a) : lambda0_(lambda0), a_(a)
{
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw InvalidArgument("intensity: lambda0 must be > 0, got " + std::to_string(lambda0));
    if (!(a > 0.0) || !std::isfinite(a))
        throw InvalidArgument("intensity: a must be > 0, got " + std::to_string(a));
}

double characteristic_time(const ExpIntensity& intensity, double half_spread)
{
    if (half_spread < 0.0)
        throw InvalidArgument("characteristic_time: half_spread must be >= 0");
    return std::exp(intensity.a() * half_spread) / (2.0 * intensity.lambda0());
}

ClippedIntensity::ClippedIntensity(ExpIntensity base)
    : ClippedIntensity(with_clip_width(base, 10.0 / base.a()))
{
}

ClippedIntensity::ClippedIntensity(ExpIntensity base, double floor, double ceiling)
    : base_(base), floor_(floor), ceiling_(ceiling)
{
    if (!(floor >= 0.0) || !(ceiling > floor))
        throw InvalidArgument("clipped intensity: need 0 <= floor < ceiling");
}

ClippedIntensity ClippedIntensity::with_clip_width(ExpIntensity base, double clip_width, double floor)
{
    return ClippedIntensity(base, floor, base.lambda0() * std::exp(base.a() * clip_width));
}

double ClippedIntensity::operator()(double distance) const noexcept
{
    return std::clamp(base_(distance), floor_, ceiling_);
}

void PriceModel::validate() const
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw InvalidArgument("price model: sigma must be >= 0");
    if (!std::isfinite(mu) || !std::isfinite(s0))
        throw InvalidArgument("price model: mu and s0 must be finite");
}

Quotes::Quotes(double bid, double ask) : bid_(bid), ask_(ask)
{
    if (!(ask >= bid))
        throw InvalidArgument("quotes: ask must be >= bid");
}

Quotes Quotes::centered(double mid, double half_spread)
{
    if (half_spread < 0.0)
        throw InvalidArgument("quotes: half_spread must be >= 0");
    return Quotes(mid - half_spread, mid + half_spread);
}

std::string_view to_string(Side side) noexcept
{
    return side == Side::Ask ? "ask" : "bid";
}

std::string_view to_string(Source source) noexcept
{
    return source == Source::Meta ? "meta" : "opportunistic";
}

std::vector<TradeEvent> merge_events(std::span<const TradeEvent> opportunistic,
                                     std::span<const TradeEvent> meta)
{
    std::vector<TradeEvent> merged;
    merged.reserve(opportunistic.size() + meta.size());
    auto o = opportunistic.begin();
    auto m = meta.begin();
    while (o != opportunistic.end() || m != meta.end()) {
        if (m != meta.end() && (o == opportunistic.end() || m->time <= o->time))
            merged.push_back(*m++);
        else
            merged.push_back(*o++);
    }
    return merged;
}

void GaussianPrior::validate() const
{
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw InvalidArgument("prior: sigma0 must be > 0");
    if (!std::isfinite(x0))
        throw InvalidArgument("prior: x0 must be finite");
}

double GaussianPrior::density(double x) const noexcept
{
    const double z = (x - x0) / sigma0;
    return std::exp(-0.5 * z * z) / (sigma0 * std::sqrt(2.0 * std::numbers::pi));
}

QuoteHistory::QuoteHistory(Quotes constant) : segments_{{0.0, constant}} {}

QuoteHistory::QuoteHistory(std::vector<Segment> segments) : segments_(std::move(segments))
{
    for (std::size_t i = 1; i < segments_.size(); ++i)
        if (!(segments_[i].start > segments_[i - 1].start))
            throw InvalidArgument("quote history: segment starts must be strictly increasing");
}

void QuoteHistory::append(double start, Quotes quotes)
{
    if (!segments_.empty() && !(start > segments_.back().start))
        throw InvalidArgument("quote history: segment starts must be strictly increasing");
    segments_.push_back({start, quotes});
}

const Quotes& QuoteHistory::at(double t) const
{
    if (segments_.empty())
        throw InvalidArgument("quote history is empty");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.start; });
    return it == segments_.begin() ? segments_.front().quotes : std::prev(it)->quotes;
}

const Quotes& QuoteHistory::before(double t) const
{
    if (segments_.empty())
        throw InvalidArgument("quote history is empty");
    auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                               [](const Segment& s, double v) { return s.start < v; });
    return it == segments_.begin() ? segments_.front().quotes : std::prev(it)->quotes;
}

}  // namespace priceform
