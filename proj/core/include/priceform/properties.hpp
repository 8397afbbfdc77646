#pragma once

#include "priceform/grid_density.hpp"
#include "priceform/model.hpp"

#include <span>

namespace priceform {

/// Largest spread, over the grid, of the post-trade densities
///   x -> lambda(z - x) m(x) / int lambda(z - y) m(y) dy
/// taken across the ask prices z. Zero when the update does not depend on z.
double property_a_residual(const IntensityFn& intensity, const GridDensity& density,
                           std::span<const double> z_values);

struct PotentialPoint {
    double x;
    double ask;
    double bid;
};

/// Max |-(lambda(ask - x) + lambda(x - bid) - 2) - (h - g(x - mid) f(delta))| with
///   h = -2 (lambda0 e^{-a delta} - 1),  f = 2 lambda0 e^{-a delta},  g(y) = cosh(a y) - 1.
double property_b_residual(const ExpIntensity& intensity, std::span<const PotentialPoint> points);

/// Separability check of the between-trade potential for an arbitrary
/// intensity. With P(y; delta) the potential at distance y from the mid, the
/// decomposition h(delta) - g(y) f(delta) is fitted on the stencil
/// {(0, delta1), (y1, delta1), (0, delta2), (y1, delta2), (y2, delta1)} and
/// used to predict P(y2; delta2). Returns the absolute prediction error.
double separability_residual(const IntensityFn& intensity, double delta1, double delta2, double y1,
                             double y2);

}  // namespace priceform
