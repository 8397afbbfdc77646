#pragma once

#include "priceform/model.hpp"
#include "priceform/rng.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace priceform {

struct PricePath {
    std::vector<double> times;
    std::vector<double> values;

    void push(double t, double s)
    {
        times.push_back(t);
        values.push_back(s);
    }
    std::size_t size() const noexcept { return times.size(); }
};

/// Samples S on the regular grid k*dt, k = 0..floor(horizon/dt). The path is
/// s0 + mu*t + sigma*W_t with W built from independent N(0, dt) increments,
/// which is exact for constant coefficients.
PricePath simulate_price(const PriceModel& model, double dt, double horizon, RngStream& rng);

/// Deterministic meta-order: one buy every 1/beta seconds while t <= T.
struct MetaOrderSchedule {
    double beta = 10.0;
    double horizon = 2.5;  ///< T; may be +infinity

    void validate() const;
    /// Number of child orders executed up to and including time t.
    long executed_by(double t) const;
};

/// Ask-side events at k/beta for k = 1..floor(beta * min(T, until)).
std::vector<TradeEvent> meta_events(const MetaOrderSchedule& schedule,
                                    double until = std::numeric_limits<double>::infinity());

/// How the thinning sampler dominates the instantaneous intensity.
enum class Envelope {
    /// Constant rate 2 * ceiling; each side is accepted with probability
    /// lambda_side / ceiling. Valid for any quote process.
    Global,
    /// Per-call bound computed from the frozen quotes and a high-probability
    /// band for S over the call interval. Much tighter when the ceiling is
    /// far above typical rates; quotes must stay constant within a call.
    Local,
};

/// Exact simulation of the two-sided aggressive order flow by thinning.
///
/// Owns the efficient price state: S is advanced with exact Gaussian
/// increments to every proposal time, so acceptance probabilities are
/// evaluated at the true S, without interpolation.
class TradeFlow {
public:
    TradeFlow(PriceModel model, ClippedIntensity intensity, RngStream rng,
              Envelope envelope = Envelope::Local);

    double time() const noexcept { return t_; }
    double price() const noexcept { return s_; }
    RngStream& rng() noexcept { return rng_; }
    const ClippedIntensity& intensity() const noexcept { return intensity_; }

    /// Width of the S band used by the local envelope, in standard deviations.
    void set_band_sigmas(double k) noexcept { band_sigmas_ = k; }

    /// Records S at every proposal time and at every call boundary.
    void record_path(PricePath* path) noexcept { path_ = path; }

    /// Runs the sampler from the current time with `quotes` frozen until the
    /// first accepted trade or `t_end`, whichever comes first. On return
    /// time() is the trade time or t_end.
    std::optional<TradeEvent> next_until(const Quotes& quotes, double t_end);

    /// Same as above but re-evaluates the quote process at every proposal.
    /// Requires the global envelope.
    std::optional<TradeEvent> next_until(const std::function<Quotes(double)>& quotes, double t_end);

    std::size_t proposals() const noexcept { return proposals_; }

private:
    void advance_price(double t);
    double local_bound(const Quotes& quotes, double t_end) const;

    template <class QuoteAt>
    std::optional<TradeEvent> run(QuoteAt&& quote_at, double rate_bound, double t_end, bool global);

    PriceModel model_;
    ClippedIntensity intensity_;
    RngStream rng_;
    Envelope envelope_;
    double band_sigmas_ = 12.0;
    double t_ = 0.0;
    double s_;
    PricePath* path_ = nullptr;
    std::size_t proposals_ = 0;
};

struct FlowRecord {
    std::vector<TradeEvent> events;
    PricePath path;
};

/// Realization of (N^a, N^b) on [0, horizon] for an arbitrary quote process,
/// using the global 2 * ceiling envelope.
FlowRecord simulate_trades(const PriceModel& model, const std::function<Quotes(double)>& quotes,
                           const ClippedIntensity& intensity, double horizon, RngStream& rng);

}  // namespace priceform
