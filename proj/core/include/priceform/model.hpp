#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace priceform {

/// Arrival intensity of aggressive orders as a function of the signed
/// distance between a quote and the efficient price:
///   lambda(d) = lambda0 * exp(-a * d).
/// Negative distances (quote through the efficient price) are allowed.
class ExpIntensity {
public:
    ExpIntensity(double lambda0, double a);

    double lambda0() const noexcept { return lambda0_; }
    double a() const noexcept { return a_; }

    double operator()(double distance) const noexcept { return lambda0_ * std::exp(-a_ * distance); }
    double log_rate(double distance) const noexcept { return std::log(lambda0_) - a_ * distance; }

private:
    double lambda0_;
    double a_;
};

/// Any positive decreasing intensity, used by the functional checks that
/// compare the exponential family against other shapes.
using IntensityFn = std::function<double(double)>;

inline double evaluate(const ExpIntensity& intensity, double distance) noexcept
{
    return intensity(distance);
}

/// Relaxation time of the posterior toward the mid-price between trades:
/// exp(a * half_spread) / (2 * lambda0).
double characteristic_time(const ExpIntensity& intensity, double half_spread);

/// Intensity clipped to [floor, ceiling]. The default ceiling sits `clip_width`
/// price units into the money, i.e. lambda0 * exp(a * clip_width), with
/// clip_width = 10 / a (ten e-folds).
class ClippedIntensity {
public:
    static constexpr double kDefaultFloor = 1e-8;

    explicit ClippedIntensity(ExpIntensity base);
    ClippedIntensity(ExpIntensity base, double floor, double ceiling);

    /// Ceiling placed `clip_width` price units into the money.
    static ClippedIntensity with_clip_width(ExpIntensity base, double clip_width,
                                            double floor = kDefaultFloor);

    const ExpIntensity& base() const noexcept { return base_; }
    double floor() const noexcept { return floor_; }
    double ceiling() const noexcept { return ceiling_; }

    double operator()(double distance) const noexcept;

private:
    ExpIntensity base_;
    double floor_;
    double ceiling_;
};

/// Efficient price dynamics dS = mu dt + sigma dW with constant coefficients.
struct PriceModel {
    double mu = 0.0;
    double sigma = 0.0;
    double s0 = 100.0;

    void validate() const;
};

class Quotes {
public:
    Quotes() = default;
    Quotes(double bid, double ask);

    static Quotes centered(double mid, double half_spread);

    double bid() const noexcept { return bid_; }
    double ask() const noexcept { return ask_; }
    double mid() const noexcept { return 0.5 * (ask_ + bid_); }
    double half_spread() const noexcept { return 0.5 * (ask_ - bid_); }

    /// Ask-side and bid-side intensities when the efficient price is `s`.
    template <class Intensity>
    double ask_rate(const Intensity& intensity, double s) const { return intensity(ask_ - s); }
    template <class Intensity>
    double bid_rate(const Intensity& intensity, double s) const { return intensity(s - bid_); }

    friend bool operator==(const Quotes&, const Quotes&) = default;

private:
    double bid_ = 0.0;
    double ask_ = 0.0;
};

enum class Side { Ask, Bid };
enum class Source { Opportunistic, Meta };

std::string_view to_string(Side side) noexcept;
std::string_view to_string(Source source) noexcept;

/// +1 for an aggressive buy (ask side), -1 for a sell.
constexpr int sign_of(Side side) noexcept { return side == Side::Ask ? 1 : -1; }

struct TradeEvent {
    double time = 0.0;
    Side side = Side::Ask;
    Source source = Source::Opportunistic;
    /// Market context at the trade, when known. Used for event-log export.
    Quotes quotes{};
    double efficient_price = std::numeric_limits<double>::quiet_NaN();
};

/// Merges two time-ordered streams. At equal timestamps meta-order events
/// come first.
std::vector<TradeEvent> merge_events(std::span<const TradeEvent> opportunistic,
                                     std::span<const TradeEvent> meta);

struct GaussianPrior {
    double x0 = 100.0;
    double sigma0 = 0.05;

    void validate() const;
    double variance() const noexcept { return sigma0 * sigma0; }
    double density(double x) const noexcept;
};

/// Right-continuous piecewise-constant quote path. Segment i is in force on
/// [start_i, start_{i+1}).
class QuoteHistory {
public:
    struct Segment {
        double start;
        Quotes quotes;
    };

    QuoteHistory() = default;
    explicit QuoteHistory(Quotes constant);
    explicit QuoteHistory(std::vector<Segment> segments);

    void append(double start, Quotes quotes);

    /// Quotes in force at time t.
    const Quotes& at(double t) const;
    /// Left limit: quotes in force just before t.
    const Quotes& before(double t) const;

    std::span<const Segment> segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }

private:
    std::vector<Segment> segments_;
};

}  // namespace priceform
