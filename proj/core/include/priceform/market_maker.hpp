#pragma once

#include "priceform/gaussian_approx.hpp"
#include "priceform/grid_density.hpp"
#include "priceform/model.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace priceform {

enum class PolicyKind { Fixed, MidAtMean, MidAtArgmax };

/// How the market maker sets quotes.
class QuotePolicy {
public:
    static QuotePolicy fixed(Quotes quotes);
    static QuotePolicy mid_at_mean(double half_spread);
    static QuotePolicy mid_at_argmax(double half_spread);

    /// "fixed", "mid-mean" or "mid-argmax". Fixed quotes are centred on `mid`.
    static QuotePolicy parse(std::string_view name, double half_spread, double mid);

    PolicyKind kind() const noexcept { return kind_; }
    double half_spread() const noexcept { return half_spread_; }
    const Quotes& fixed_quotes() const noexcept { return fixed_; }

private:
    QuotePolicy(PolicyKind kind, double half_spread, Quotes fixed);

    PolicyKind kind_;
    double half_spread_;
    Quotes fixed_;
};

std::string_view to_string(PolicyKind kind) noexcept;

/// Running state of a market maker who quotes around the posterior mode
/// with sigma = 0 and a Gaussian prior.
///
/// U and V are kept relative to the prior mean to avoid overflow:
///   U = int_0^t exp(a (xhat_s - x0)) ds,  V = int_0^t exp(-a (xhat_s - x0)) ds.
struct ArgmaxMMState {
    double x0 = 0.0;
    double xhat = 0.0;
    double U = 0.0;
    double V = 0.0;
    long net_jumps = 0;  ///< N^a - N^b + N^beta
    double t = 0.0;

    static ArgmaxMMState start(const GaussianPrior& prior);
};

/// Accumulates U and V up to time t; xhat is constant in between.
ArgmaxMMState advance_to(ArgmaxMMState state, const ExpIntensity& intensity, double t);

using PosteriorView = std::variant<FilterDiagnostics, GaussianState, ArgmaxMMState>;

/// Quotes implied by the policy. Fixed ignores the state; MidAtMean needs
/// grid diagnostics or a Gaussian state; MidAtArgmax needs grid diagnostics
/// or an ArgmaxMMState. Other pairings throw PolicyStateMismatch.
Quotes quotes_from_posterior(const QuotePolicy& policy, const PosteriorView& posterior);

/// New mode after a trade at time t with sign +1 (buy or meta child) or -1.
/// Solves, for y = xhat - x0,
///   0 = -y / sigma0^2 - (a / 2 t1) (e^{a y} V - e^{-a y} U) + a (net_jumps + sign),
/// whose right-hand side is strictly decreasing in y.
ArgmaxMMState argmax_jump(const ArgmaxMMState& state, const GaussianPrior& prior,
                          const ExpIntensity& intensity, double half_spread, double t, int sign);

/// Derivative of the jump equation in y; always negative.
double argmax_jump_slope(const ArgmaxMMState& state, const GaussianPrior& prior,
                         const ExpIntensity& intensity, double half_spread, double y);

/// Modes xhat_{k/beta}, k = 1..k_max, when only meta children trade:
///   k = y_k / (a sigma0^2) + (1 / (beta t1)) sum_{i<k} sinh(a (y_k - y_i)),  y_0 = 0.
std::vector<double> impact_recursion(const GaussianPrior& prior, const ExpIntensity& intensity,
                                     double half_spread, double beta, int k_max);

}  // namespace priceform
