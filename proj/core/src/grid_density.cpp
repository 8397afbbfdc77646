#include "priceform/grid_density.hpp"

#include "priceform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace priceform {

GridDensity::GridDensity(double x_min, double dx, std::vector<double> values, bool normalized)
    : x_min_(x_min), dx_(dx), values_(std::move(values)), normalized_(normalized)
{
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw InvalidArgument("grid density: dx must be > 0");
    if (values_.size() < 3)
        throw InvalidArgument("grid density: need at least 3 nodes");
}

GridDensity GridDensity::sample(double lo, double hi, std::size_t n, const std::function<double(double)>& f,
                                bool normalized)
{
    if (n < 3 || !(hi > lo))
        throw InvalidArgument("grid density: need n >= 3 and hi > lo");
    const double dx = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = f(lo + dx * static_cast<double>(i));
    return GridDensity(lo, dx, std::move(values), normalized);
}

GridDensity GridDensity::gaussian(double lo, double hi, std::size_t n, double mean, double sd)
{
    const double norm = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
    return sample(lo, hi, n, [=](double x) {
        const double z = (x - mean) / sd;
        return norm * std::exp(-0.5 * z * z);
    });
}

double GridDensity::interpolate(double x) const noexcept
{
    const double pos = (x - x_min_) / dx_;
    if (!(pos >= 0.0) || pos > static_cast<double>(values_.size() - 1))
        return 0.0;
    const auto i = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double mass(const GridDensity& density)
{
    const auto v = density.values();
    double sum = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        sum += v[i];
    return sum * density.dx();
}

void normalize_in_place(GridDensity& density)
{
    const double m = mass(density);
    if (!(m > 0.0) || !std::isfinite(m))
        throw ZeroMass("normalize: density mass is " + std::to_string(m));
    const double inv = 1.0 / m;
    for (double& v : density.values())
        v *= inv;
    density.set_normalized(true);
}

GridDensity normalize(GridDensity density)
{
    normalize_in_place(density);
    return density;
}

double argmax(const GridDensity& density)
{
    const auto v = density.values();
    const auto it = std::max_element(v.begin(), v.end());
    const auto i = static_cast<std::size_t>(it - v.begin());
    if (i == 0 || i + 1 == v.size())
        return density.x(i);
    const double left = v[i - 1];
    const double centre = v[i];
    const double right = v[i + 1];
    const double curvature = left - 2.0 * centre + right;
    if (!(curvature < 0.0))
        return density.x(i);
    const double offset = 0.5 * (left - right) / curvature;
    return density.x(i) + std::clamp(offset, -0.5, 0.5) * density.dx();
}

FilterDiagnostics diagnostics(const GridDensity& density)
{
    const auto v = density.values();
    const std::size_t n = v.size();
    FilterDiagnostics d;
    d.mass = mass(density);
    if (!(d.mass > 0.0) || !std::isfinite(d.mass))
        throw ZeroMass("diagnostics: density mass is " + std::to_string(d.mass));

    // Moments about the grid centre keep the variance free of cancellation.
    const double centre = 0.5 * (density.x_min() + density.x_max());
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double y = density.x(i) - centre;
        m1 += w * v[i] * y;
        m2 += w * v[i] * y * y;
    }
    const double scale = density.dx() / d.mass;
    m1 *= scale;
    m2 *= scale;
    d.mean = centre + m1;
    d.variance = std::max(0.0, m2 - m1 * m1);
    d.argmax = argmax(density);
    return d;
}

double excess_kurtosis(const GridDensity& density)
{
    const auto d = diagnostics(density);
    const auto v = density.values();
    const std::size_t n = v.size();
    double m4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double y = density.x(i) - d.mean;
        m4 += w * v[i] * y * y * y * y;
    }
    m4 *= density.dx() / d.mass;
    return m4 / (d.variance * d.variance) - 3.0;
}

double l1_distance(const GridDensity& lhs, const GridDensity& rhs)
{
    if (lhs.size() != rhs.size() || std::abs(lhs.dx() - rhs.dx()) > 1e-12 * lhs.dx() ||
        std::abs(lhs.x_min() - rhs.x_min()) > 1e-9 * std::max(1.0, std::abs(lhs.x_min())))
        throw InvalidArgument("l1_distance: grids differ");
    const auto a = lhs.values();
    const auto b = rhs.values();
    const std::size_t n = a.size();
    double sum = 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[n - 1] - b[n - 1]));
    for (std::size_t i = 1; i + 1 < n; ++i)
        sum += std::abs(a[i] - b[i]);
    return sum * lhs.dx();
}

}  // namespace priceform
