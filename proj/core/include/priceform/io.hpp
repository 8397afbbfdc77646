#pragma once

#include "priceform/config.hpp"
#include "priceform/grid_density.hpp"
#include "priceform/impact_lab.hpp"
#include "priceform/model.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace priceform {

/// Shortest decimal form that parses back to the same double; "nan", "inf", "-inf".
std::string format_double(double value);

/// Writes to a temporary file next to `path`, then renames it into place.
/// Throws IoError naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// time,side,source,bid,ask,efficient_price
std::string events_csv(std::span<const TradeEvent> events);
/// x,value
std::string density_csv(const GridDensity& density);
/// t, bid, ask, normalized, mass and the grid layout.
std::string density_sidecar_json(const GridDensity& density, double t, const Quotes& quotes);
/// t,x_t,sigma_t2,argmax,bid,ask,efficient_price,event
std::string trajectory_csv(std::span<const TrajectoryPoint> points);
/// t,mean_impact,stderr,overlay
std::string impact_csv(const ImpactCurve& curve);

struct DensitySnapshot {
    GridDensity density;
    double t = 0.0;
    Quotes quotes{};
};

struct OutputBundle {
    std::optional<ImpactCurve> curve;
    std::optional<std::vector<TradeEvent>> events;
    std::optional<std::vector<TrajectoryPoint>> trajectory;
    std::vector<std::pair<std::string, DensitySnapshot>> densities;  ///< file stem, snapshot
};

/// Writes every present part plus manifest.json into `dir` (created if
/// missing). Returns the file names written, manifest last.
std::vector<std::string> write_outputs(const std::filesystem::path& dir, const OutputBundle& bundle,
                                       const RunConfig& config);

}  // namespace priceform
