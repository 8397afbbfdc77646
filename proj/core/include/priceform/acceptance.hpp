#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace priceform {

enum class Status { Pass, Fail, Skip };

struct CriterionResult {
    int id = 0;
    std::string title;
    Status status = Status::Fail;
    std::string measured;
    std::string tolerance;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    /// Replaces the base grid of the closed-form oracle check.
    std::optional<std::size_t> grid_n;
    /// Volatility of the Brownian checks; 0 skips them.
    double sigma = 0.06;
    int replicas = 200;
    int threads = 0;
    std::uint64_t seed = 20240601;
    /// Criteria to run; empty means all.
    std::vector<int> only;
    /// Called after each criterion.
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One line: "[PASS] 3 title: measured (tolerance) 1.2s".
std::string format_result(const CriterionResult& result);

/// True when nothing failed; skipped criteria do not count as failures.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace priceform
