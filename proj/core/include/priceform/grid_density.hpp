#pragma once

#include "priceform/model.hpp"

#include <functional>
#include <span>
#include <vector>

namespace priceform {

/// Density sampled on the uniform grid x_i = x_min + i*dx, i = 0..n-1.
/// Values are non-negative; `normalized` records whether the trapezoidal
/// mass is one.
class GridDensity {
public:
    GridDensity(double x_min, double dx, std::vector<double> values, bool normalized = false);

    /// Samples `f` on n nodes spanning [lo, hi].
    static GridDensity sample(double lo, double hi, std::size_t n, const std::function<double(double)>& f,
                              bool normalized = false);
    static GridDensity gaussian(double lo, double hi, std::size_t n, double mean, double sd);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_min_ + dx_ * static_cast<double>(values_.size() - 1); }
    double dx() const noexcept { return dx_; }
    std::size_t size() const noexcept { return values_.size(); }
    double x(std::size_t i) const noexcept { return x_min_ + dx_ * static_cast<double>(i); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    bool normalized() const noexcept { return normalized_; }
    void set_normalized(bool flag) noexcept { normalized_ = flag; }

    /// Piecewise-linear interpolant; zero outside the grid span.
    double interpolate(double x) const noexcept;

private:
    double x_min_;
    double dx_;
    std::vector<double> values_;
    bool normalized_;
};

struct FilterDiagnostics {
    double mean = 0.0;
    double variance = 0.0;
    double argmax = 0.0;
    double mass = 0.0;
};

/// Trapezoidal mass.
double mass(const GridDensity& density);

/// Divides by the trapezoidal mass. Throws ZeroMass if the mass is not positive.
GridDensity normalize(GridDensity density);
void normalize_in_place(GridDensity& density);

/// Mass, mean and variance by trapezoidal quadrature; argmax by a parabola
/// through the largest node and its neighbours.
FilterDiagnostics diagnostics(const GridDensity& density);

/// Standardized fourth moment minus three.
double excess_kurtosis(const GridDensity& density);

/// Sub-grid location of the maximum.
double argmax(const GridDensity& density);

/// L1 distance between two densities on the same grid (trapezoidal rule).
double l1_distance(const GridDensity& lhs, const GridDensity& rhs);

}  // namespace priceform
