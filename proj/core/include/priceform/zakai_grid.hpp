#pragma once

#include "priceform/grid_density.hpp"
#include "priceform/model.hpp"

#include <span>
#include <vector>

namespace priceform {

/// Uniform grid layout for the filter.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 4001;

    double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n - 1); }

    /// [x0 - 12 sigma0 - 6 sigma sqrt(T), x0 + 12 sigma0 + 6 sigma sqrt(T)].
    static GridSpec around(const GaussianPrior& prior, double sigma, double horizon, std::size_t n = 4001);

    GridDensity sample(const GaussianPrior& prior) const;
};

/// Largest stable continuous step: min(0.1 t1, dx^2 / sigma^2 when sigma > 0).
double max_stable_dt(const ExpIntensity& intensity, double half_spread, double dx, double sigma);

/// Between-trade potential lambda(ask - x) + lambda(x - bid) - 2.
double between_trade_potential(const ExpIntensity& intensity, const Quotes& quotes, double x) noexcept;

/// One split step of the unnormalized filter: Crank-Nicolson diffusion with
/// zero-flux boundaries, then the exact multiplicative decay
/// u <- u * exp(-(lambda(ask - x) + lambda(x - bid) - 2) dt).
/// The drift of the price model must be zero.
GridDensity step_continuous(const GridDensity& density, const Quotes& quotes, const PriceModel& model,
                            const ExpIntensity& intensity, double dt);

/// Multiplies by lambda(ask - x) for a buy or lambda(x - bid) for a sell.
GridDensity apply_trade(const GridDensity& density, const Quotes& quotes, const ExpIntensity& intensity,
                        Side side);

/// Exact unnormalized solution for a fixed efficient price:
///   m0(x) exp(-int (lambda(S^a_u - x) + lambda(x - S^b_u) - 2) du)
///         * prod over trades of lambda(S^a_{u-} - x) or lambda(x - S^b_{u-}),
/// with the time integral summed over the constant-quote segments of
/// `quotes` and trades restricted to (0, t].
GridDensity closed_form_fixed_price(const GridDensity& prior, const QuoteHistory& quotes,
                                    std::span<const TradeEvent> trades, const ExpIntensity& intensity, double t);

/// Same solution renormalized; evaluated in log space so that long horizons
/// do not underflow.
GridDensity closed_form_posterior(const GridDensity& prior, const QuoteHistory& quotes,
                                  std::span<const TradeEvent> trades, const ExpIntensity& intensity, double t);

enum class AsymptoticForm {
    /// a * sqrt(t / (2 pi t1)) * m0(x)/m0(mid) * exp(-(t/t1)(cosh(a(x - mid)) - 1)),
    /// the Laplace asymptotics of the exact solution.
    Scaled,
    /// sqrt(t / (pi t1)) * m0(x)/m0(mid) * exp(-(t/t1)(cosh(x - mid) - 1)).
    Literal,
};

/// Large-time profile of the normalized between-trades posterior with fixed
/// quotes. `prior` is m0 sampled on the output grid.
GridDensity asymptotic_between_trades(const GridDensity& prior, const Quotes& quotes,
                                      const ExpIntensity& intensity, double t,
                                      AsymptoticForm form = AsymptoticForm::Scaled);

/// Stateful grid filter: owns the density, its Crank-Nicolson workspace and
/// the running log of the normalizing constants removed so far.
class ZakaiGridFilter {
public:
    struct Options {
        double dt_max = 0.0;         ///< 0 selects max_stable_dt
        int renormalize_every = 100; ///< continuous steps between renormalizations
        bool strang = false;         ///< half-decay / diffusion / half-decay
    };

    ZakaiGridFilter(GridDensity prior, PriceModel model, ExpIntensity intensity);
    ZakaiGridFilter(GridDensity prior, PriceModel model, ExpIntensity intensity, Options options);

    double time() const noexcept { return t_; }
    const GridDensity& density() const noexcept { return density_; }
    /// log of the factor separating the stored values from the unnormalized solution.
    double log_scale() const noexcept { return log_scale_; }
    GridDensity posterior() const;
    FilterDiagnostics diagnostics() const;

    /// Single continuous step of length dt with frozen quotes.
    void step(const Quotes& quotes, double dt);
    /// Sub-steps with frozen quotes up to t_end, landing exactly on t_end.
    void advance(const Quotes& quotes, double t_end);
    void observe_trade(const Quotes& quotes, Side side);
    void renormalize();

    double dt_limit(const Quotes& quotes) const;

private:
    void diffuse(double dt);
    void decay(const Quotes& quotes, double dt);
    void check_underflow() const;

    GridDensity density_;
    PriceModel model_;
    ExpIntensity intensity_;
    Options options_;
    double t_ = 0.0;
    double log_scale_ = 0.0;
    int steps_since_norm_ = 0;

    // Thomas factorization cache for the current diffusion step.
    double cached_dt_ = -1.0;
    std::vector<double> upper_;
    std::vector<double> inv_diag_;
    std::vector<double> rhs_;
};

}  // namespace priceform
