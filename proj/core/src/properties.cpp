#include "priceform/properties.hpp"

#include "priceform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace priceform {

double property_a_residual(const IntensityFn& intensity, const GridDensity& density,
                           std::span<const double> z_values)
{
    if (z_values.size() < 2)
        return 0.0;
    const std::size_t n = density.size();
    std::vector<double> lo(n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
    std::vector<double> post(n);
    for (double z : z_values) {
        for (std::size_t i = 0; i < n; ++i)
            post[i] = intensity(z - density.x(i)) * density[i];
        double total = 0.5 * (post.front() + post.back());
        for (std::size_t i = 1; i + 1 < n; ++i)
            total += post[i];
        total *= density.dx();
        if (!std::isfinite(total) || !(total > 0.0))
            throw NonFiniteIntegral("property (a): normalizing integral is " + std::to_string(total) +
                                    " at z=" + std::to_string(z));
        for (std::size_t i = 0; i < n; ++i) {
            const double v = post[i] / total;
            lo[i] = std::min(lo[i], v);
            hi[i] = std::max(hi[i], v);
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, hi[i] - lo[i]);
    return worst;
}

double property_b_residual(const ExpIntensity& intensity, std::span<const PotentialPoint> points)
{
    const double a = intensity.a();
    const double lambda0 = intensity.lambda0();
    double worst = 0.0;
    for (const auto& p : points) {
        if (p.ask < p.bid)
            throw InvalidArgument("property (b): ask below bid");
        const double mid = 0.5 * (p.ask + p.bid);
        const double delta = 0.5 * (p.ask - p.bid);
        const double potential = -(intensity(p.ask - p.x) + intensity(p.x - p.bid) - 2.0);
        const double scale = lambda0 * std::exp(-a * delta);
        const double h = -2.0 * (scale - 1.0);
        const double f = 2.0 * scale;
        const double g = std::cosh(a * (p.x - mid)) - 1.0;
        worst = std::max(worst, std::abs(potential - (h - g * f)));
    }
    return worst;
}

double separability_residual(const IntensityFn& intensity, double delta1, double delta2, double y1,
                             double y2)
{
    if (delta1 < 0.0 || delta2 < 0.0)
        throw InvalidArgument("separability: half-spreads must be >= 0");
    const auto potential = [&](double y, double delta) {
        return -(intensity(delta - y) + intensity(y + delta) - 2.0);
    };
    // h(delta) = P(0; delta); g(y) f(delta) = h(delta) - P(y; delta).
    const double h1 = potential(0.0, delta1);
    const double h2 = potential(0.0, delta2);
    const double gf_y1_d1 = h1 - potential(y1, delta1);
    const double gf_y1_d2 = h2 - potential(y1, delta2);
    const double gf_y2_d1 = h1 - potential(y2, delta1);
    if (gf_y1_d1 == 0.0)
        throw InvalidArgument("separability: degenerate stencil");
    // Fix f(delta1) = 1, so g(y) = gf(y, delta1) and f(delta2) = gf(y1, delta2) / g(y1).
    const double f2 = gf_y1_d2 / gf_y1_d1;
    const double predicted = h2 - gf_y2_d1 * f2;
    return std::abs(predicted - potential(y2, delta2));
}

}  // namespace priceform
