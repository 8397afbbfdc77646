#pragma once

#include "priceform/flow.hpp"
#include "priceform/gaussian_approx.hpp"
#include "priceform/grid_density.hpp"
#include "priceform/market_maker.hpp"
#include "priceform/model.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace priceform {

enum class FilterKind { Grid, Gaussian };
enum class Readout {
    Auto,     ///< Argmax under mid-argmax, Mean otherwise
    Mean,     ///< posterior mean minus S0
    Argmax,   ///< posterior mode minus S0
};

std::string_view to_string(FilterKind kind) noexcept;
std::string_view to_string(Readout readout) noexcept;

/// One meta-order experiment: a Brownian (or fixed) efficient price, order
/// flow reacting to live quotes, a deterministic buy meta-order and a market
/// maker whose filter cannot tell meta children from informed trades.
struct ImpactExperiment {
    double lambda0 = 50.0;
    double a = 5.0;
    double half_spread = 0.1;
    double sigma = 0.06;
    double s0 = 100.0;
    GaussianPrior prior{100.0, 0.05};

    double beta = 10.0;  ///< 0 disables the meta-order
    double T = 2.5;      ///< may be +infinity
    double horizon = 2.5;

    PolicyKind policy = PolicyKind::MidAtMean;
    /// Mid of the fixed quotes; NaN means the prior mean.
    double fixed_mid = std::numeric_limits<double>::quiet_NaN();
    FilterKind filter = FilterKind::Grid;
    Readout readout = Readout::Auto;

    std::size_t grid_n = 1001;
    /// Half-width of the grid around x0; 0 selects 12 sigma0 + 6 sigma sqrt(horizon).
    double grid_half_width = 0.0;
    /// Ceiling of the clipped intensity in price units into the money; 0 selects 10 / a.
    double clip_width = 0.0;

    double output_dt = 0.05;
    int replicas = 200;
    std::uint64_t seed = 1;
    int threads = 0;  ///< 0 uses the hardware concurrency

    void validate() const;
    ExpIntensity intensity() const { return ExpIntensity(lambda0, a); }
    QuotePolicy quote_policy() const;
    Readout effective_readout() const noexcept;
    /// 0, output_dt, 2 output_dt, ... and horizon.
    std::vector<double> output_times() const;
};

struct ImpactCurve {
    std::vector<double> times;
    std::vector<double> mean_impact;
    std::vector<double> stderr_impact;
    std::vector<double> overlay;  ///< E[x_t | S0] - S0 from the small-spread approximation
    Readout readout = Readout::Mean;

    /// max_k |mean_impact - overlay|.
    double max_overlay_deviation() const;
    /// max_k |mean_impact - overlay| / stderr (stderr floored at 1e-300).
    double max_overlay_zscore() const;
};

struct TrajectoryPoint {
    double t = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double argmax = 0.0;
    Quotes quotes{};
    double efficient_price = 0.0;
    std::string_view event;  ///< "", "ask", "bid" or "meta"
};

struct ReplicaTrace {
    std::vector<double> readout;  ///< at output_times()
    std::vector<TradeEvent> events;
    std::vector<TrajectoryPoint> trajectory;
    std::optional<GridDensity> final_density;
    Quotes final_quotes{};
};

/// Runs replica `index` (rng stream (seed, index)). With `trace` the events,
/// a trajectory at outputs and events, and the final density are kept.
ReplicaTrace run_replica(const ImpactExperiment& exp, std::uint64_t index, bool trace = false);

/// Runs all replicas concurrently and folds them in replica order.
ImpactCurve run_experiment(const ImpactExperiment& exp);

struct SlowLimit {
    double residual = 0.0;       ///< max |t1 * residual| over both equations and the identities
    double impact_log = 0.0;     ///< log(1 + beta t1) / a
    double impact_linear = 0.0;  ///< beta t1 / a
};

/// Substitutes u = 1 + beta t1, v = 1 - beta t1 into the slow-regime system,
/// its rearranged form and the summed identity (tu)' + (tv)' = 2.
SlowLimit slow_limit_residual(double beta, double t1, double a);

struct FixedQuoteLimit {
    double limit = 0.0;  ///< large-time mode
    bool infinite_horizon = false;
};

/// Large-time mode with fixed quotes and a fixed efficient price S:
///   T = inf:  mid + arcsinh(sinh(a (S - mid)) + beta t1) / a,
///   T < inf:  S.
FixedQuoteLimit fixed_quote_limits(const GaussianPrior& prior, const ExpIntensity& intensity,
                                   const Quotes& quotes, double S, double beta, double T);

/// Diffuse-prior mode at time t > 0:
///   mid + arcsinh((t1 / t)(N^a - N^b + floor(beta min(t, T)))) / a.
double diffuse_prior_mode(const ExpIntensity& intensity, const Quotes& quotes, double t, long net_trades,
                          double beta, double T);

struct AnalyticOverlays {
    std::vector<double> times;          ///< output_times()
    std::vector<double> no_info;        ///< impact_no_info closed form
    std::vector<double> no_info_jumps;  ///< impact_no_info jump sum
    std::vector<double> learning;       ///< A_t - S0
    std::vector<double> impact;         ///< B_t, large-beta limit
    std::vector<double> impact_jumps;   ///< B_t over the actual children
    std::vector<double> child_times;    ///< k / beta
    std::vector<double> recursion;      ///< mode recursion minus x0 at k / beta
    std::vector<double> fast_limit;     ///< log(2 k beta t1) / a
    double slow_limit = std::numeric_limits<double>::quiet_NaN();  ///< beta t1 / a when beta t1 < 1
    double first_step = 0.0;            ///< arcsinh(beta t1) / a
};

AnalyticOverlays analytic_overlays(const ImpactExperiment& exp);

}  // namespace priceform
