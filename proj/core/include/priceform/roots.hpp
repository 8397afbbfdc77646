#pragma once

#include "priceform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace priceform {

struct RootResult {
    double root = 0.0;
    int iterations = 0;
};

/// Root of a strictly monotone scalar function.
///
/// The bracket is found by doubling a step away from `guess` in the downhill
/// direction until the sign of `f` changes; Newton steps are then taken inside
/// the bracket, falling back to bisection whenever a step would leave it or
/// fails to halve the previous step. Converges when a step is smaller than
/// `tol * max(1, |x|)`.
template <class F, class DF>
RootResult solve_monotone(F&& f, DF&& df, double guess, double initial_step, double tol,
                          int max_iter = 200)
{
    double f_guess = f(guess);
    if (f_guess == 0.0)
        return {guess, 0};
    if (std::isnan(f_guess))
        throw NoConvergence("solve_monotone: f is NaN at the initial guess");

    const double slope = df(guess);
    if (!(slope != 0.0) || std::isnan(slope))
        throw NoConvergence("solve_monotone: zero or NaN derivative at the initial guess");
    const bool increasing = slope > 0.0;
    // Move against the sign of f for increasing functions, with it for decreasing ones.
    const double direction = (f_guess > 0.0) == increasing ? -1.0 : 1.0;

    double step = initial_step > 0.0 ? initial_step : 1.0;
    double near = guess;
    double f_near = f_guess;
    double far = guess + direction * step;
    double f_far = f(far);
    int expansions = 0;
    while ((f_far > 0.0) == (f_near > 0.0) && f_far != 0.0) {
        if (++expansions > 2100 || !std::isfinite(far))
            throw NoConvergence("solve_monotone: could not bracket the root");
        near = far;
        f_near = f_far;
        step *= 2.0;
        far = near + direction * step;
        f_far = f(far);
    }
    if (f_far == 0.0)
        return {far, expansions};

    // Orient so that f(lo) < 0 < f(hi).
    double lo = f_near < 0.0 ? near : far;
    double hi = f_near < 0.0 ? far : near;

    double x = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    double fx = f(x);
    double dfx = df(x);
    for (int it = 1; it <= max_iter; ++it) {
        const bool out_of_bracket = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) > 0.0;
        const bool too_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
        dx_old = dx;
        if (out_of_bracket || too_slow || !std::isfinite(dfx) || dfx == 0.0) {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        if (std::abs(dx) <= tol * std::max(1.0, std::abs(x)))
            return {x, expansions + it};
        fx = f(x);
        dfx = df(x);
        if (fx == 0.0)
            return {x, expansions + it};
        if (fx < 0.0)
            lo = x;
        else
            hi = x;
    }
    throw NoConvergence("solve_monotone: no convergence after " + std::to_string(max_iter) +
                        " iterations");
}

}  // namespace priceform
