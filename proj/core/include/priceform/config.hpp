#pragma once

#include "priceform/impact_lab.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace priceform {

enum class Command { Simulate, Impact, FilterDemo, Verify };

std::string_view to_string(Command command) noexcept;
Command parse_command(std::string_view name);

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "PRICEFORM_OUT";
inline constexpr const char* kDefaultOutputDir = "priceform-out";

/// Full configuration of one CLI run. JSON layout:
///
///   command, seed, output_dir
///   model   { lambda0, a, sigma, s0 }
///   quotes  { half_spread, policy }
///   prior   { x0, sigma0 }
///   meta    { beta, T }           T = null means no end
///   run     { horizon, output_dt, replicas, threads, filter }
///   grid    { n, half_width }
struct RunConfig {
    Command command = Command::Verify;
    std::optional<std::uint64_t> seed;
    std::string output_dir;

    double lambda0 = 50.0;
    double a = 5.0;
    double sigma = 0.06;
    double s0 = 100.0;

    double half_spread = 0.1;
    std::string policy = "mid-mean";

    double x0 = 100.0;
    double sigma0 = 0.05;

    double beta = 10.0;
    double T = 2.5;

    double horizon = 2.5;
    double output_dt = 0.05;
    int replicas = 200;
    int threads = 0;
    std::string filter = "grid";

    /// Unset means the command's own default (1001 for experiments; the
    /// acceptance suite picks per-criterion grids).
    std::optional<std::size_t> grid_n;
    double grid_half_width = 0.0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    ImpactExperiment experiment() const;
};

/// A flag override: dotted key path and a JSON literal (bare words are
/// taken as strings).
struct ConfigOverride {
    std::string path;
    std::string value;
};

/// Parses and validates a JSON document; overrides are applied first.
/// Throws ConfigError naming the offending field.
RunConfig parse_config(std::string_view json_text, std::span<const ConfigOverride> overrides = {});

/// Reads `file` (IoError if unreadable) and parses it.
RunConfig load_config(const std::filesystem::path& file, std::span<const ConfigOverride> overrides = {});

std::string to_json(const RunConfig& config);

/// Build identifier from git describe at configure time.
std::string_view git_describe() noexcept;

/// Manifest: the full config, the seed, the build and the files written.
std::string manifest_json(const RunConfig& config, std::span<const std::string> outputs);

/// Recovers the RunConfig recorded in a manifest.
RunConfig parse_manifest(std::string_view manifest_text);

}  // namespace priceform
