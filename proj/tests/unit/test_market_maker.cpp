#include <doctest.h>

#include "gen.hpp"

#include <priceform/errors.hpp>
#include <priceform/market_maker.hpp>
#include <priceform/roots.hpp>
#include <priceform/zakai_grid.hpp>

#include <cmath>
#include <vector>

using namespace priceform;

namespace {

const ExpIntensity kLam(50.0, 5.0);
constexpr double kDelta = 0.1;

// Plain bisection, used as an independent root oracle.
template <class F>
double bisect(F f, double lo, double hi)
{
    double flo = f(lo);
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("quotes from the posterior")
{
    const auto mean = QuotePolicy::mid_at_mean(0.1);
    const Quotes q = quotes_from_posterior(mean, FilterDiagnostics{100.0, 0.01, 100.0, 1.0});
    CHECK(q.bid() == doctest::Approx(99.9));
    CHECK(q.ask() == doctest::Approx(100.1));
    CHECK(quotes_from_posterior(mean, GaussianState{100.2, 0.01, 1.0}).mid() == doctest::Approx(100.2));

    const auto fixed = QuotePolicy::fixed(Quotes(99.9, 100.1));
    for (const PosteriorView& v : {PosteriorView{FilterDiagnostics{}}, PosteriorView{GaussianState{}},
                                   PosteriorView{ArgmaxMMState{}}})
        CHECK(quotes_from_posterior(fixed, v) == Quotes(99.9, 100.1));

    const auto mode = QuotePolicy::mid_at_argmax(0.0);
    ArgmaxMMState s;
    s.xhat = 100.05;
    const Quotes z = quotes_from_posterior(mode, s);
    CHECK(z.bid() == 100.05);
    CHECK(z.ask() == 100.05);
    CHECK(quotes_from_posterior(mode, FilterDiagnostics{100.0, 0.01, 100.03, 1.0}).mid() == doctest::Approx(100.03));

    CHECK_THROWS_AS(quotes_from_posterior(mean, s), PolicyStateMismatch);
    CHECK_THROWS_AS(quotes_from_posterior(mode, GaussianState{}), PolicyStateMismatch);
}

TEST_CASE("policy names")
{
    CHECK(QuotePolicy::parse("fixed", 0.1, 100.0).kind() == PolicyKind::Fixed);
    CHECK(QuotePolicy::parse("fixed", 0.1, 100.0).fixed_quotes().ask() == doctest::Approx(100.1));
    CHECK(QuotePolicy::parse("mid-mean", 0.1, 100.0).kind() == PolicyKind::MidAtMean);
    CHECK(QuotePolicy::parse("mid-argmax", 0.1, 100.0).kind() == PolicyKind::MidAtArgmax);
    CHECK_THROWS_AS(QuotePolicy::parse("mid", 0.1, 100.0), InvalidArgument);
    CHECK_THROWS_AS(QuotePolicy::mid_at_mean(-0.1), InvalidArgument);
}

TEST_CASE("safeguarded Newton against bisection")
{
    gen::Gen g(41);
    for (int i = 0; i < 200; ++i) {
        const double k = g.uniform(-5.0, 5.0), s = g.log_uniform(0.1, 50.0);
        auto f = [&](double x) { return std::sinh(s * x) + x - k; };
        auto df = [&](double x) { return s * std::cosh(s * x) + 1.0; };
        const auto r = solve_monotone(f, df, g.uniform(-3.0, 3.0), 0.1, 1e-13);
        CHECK(r.root == doctest::Approx(bisect(f, -10.0, 10.0)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(solve_monotone([](double) { return 1.0; }, [](double) { return 0.0; }, 0.0, 1.0, 1e-12),
                    NoConvergence);
}

TEST_CASE("first two meta jumps with a diffuse prior")
{
    const double beta = 10.0;
    const double b = beta * characteristic_time(kLam, kDelta);
    const GaussianPrior diffuse{100.0, 1e6};
    auto s = ArgmaxMMState::start(diffuse);
    s = argmax_jump(s, diffuse, kLam, kDelta, 1.0 / beta, +1);
    CHECK(s.xhat - 100.0 == doctest::Approx(std::asinh(b) / 5.0).epsilon(1e-9));
    s = argmax_jump(s, diffuse, kLam, kDelta, 2.0 / beta, +1);
    const double second = std::asinh(b * (1.0 + std::sqrt(1.0 - 1.5 / (1.0 + std::sqrt(1.0 + b * b))))) / 5.0;
    CHECK(s.xhat - 100.0 == doctest::Approx(second).epsilon(1e-9));
    CHECK(s.net_jumps == 2);
    CHECK(s.U > 0.0);
    CHECK(s.V > 0.0);
}

TEST_CASE("recursion k = 1 against bisection")
{
    const double t1 = characteristic_time(kLam, kDelta);
    const double beta = 0.164872 / t1;
    const GaussianPrior diffuse{100.0, 1e6};
    const auto path = impact_recursion(diffuse, kLam, kDelta, beta, 1);
    REQUIRE(path.size() == 1);
    const double bt1 = beta * t1;
    const double oracle = bisect([&](double y) { return y / (5.0 * 1e12) + std::sinh(5.0 * y) / bt1 - 1.0; }, -1.0, 1.0);
    CHECK(path[0] - 100.0 == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(path[0] - 100.0 == doctest::Approx(std::asinh(0.164872) / 5.0).epsilon(1e-9));
    CHECK(impact_recursion(diffuse, kLam, kDelta, beta, 0).empty());
}

TEST_CASE("fast regime: log(2 k beta t1) / a")
{
    const double t1 = characteristic_time(kLam, kDelta);
    const double bt1 = 1e3;
    const GaussianPrior wide{100.0, std::sqrt(1e4 * bt1) / 5.0};
    const auto path = impact_recursion(wide, kLam, kDelta, bt1 / t1, 10);
    for (int k = 1; k <= 10; ++k)
        CHECK(path[k - 1] - 100.0 == doctest::Approx(std::log(2.0 * k * bt1) / 5.0).epsilon(0.05));
}

TEST_CASE("property: recursion increases with k and equals the jump state machine")
{
    gen::Gen g(42);
    for (int i = 0; i < 40; ++i) {
        const ExpIntensity lam(g.log_uniform(5.0, 100.0), g.log_uniform(1.0, 20.0));
        const GaussianPrior p{100.0, g.log_uniform(0.01, 1.0)};
        const double delta = g.uniform(0.0, 0.2), beta = g.log_uniform(0.5, 200.0);
        const auto path = impact_recursion(p, lam, delta, beta, 8);
        auto s = ArgmaxMMState::start(p);
        double prev = p.x0;
        for (int k = 1; k <= 8; ++k) {
            CHECK(path[k - 1] > prev);
            prev = path[k - 1];
            s = argmax_jump(s, p, lam, delta, k / beta, +1);
            CHECK(s.xhat == doctest::Approx(path[k - 1]).epsilon(1e-10));
        }
    }
}

TEST_CASE("property: jump equation slope is negative around the root")
{
    gen::Gen g(43);
    for (int i = 0; i < 100; ++i) {
        const GaussianPrior p = g.prior();
        auto s = ArgmaxMMState::start(p);
        const double t_end = g.uniform(0.05, 2.0);
        for (const auto& e : g.trades(g.integer(1, 10), t_end))
            s = argmax_jump(s, p, kLam, kDelta, e.time, sign_of(e.side));
        const double y = s.xhat - s.x0;
        for (double dy : {-10.0, -1.0, 0.0, 1.0, 10.0})
            CHECK(argmax_jump_slope(s, p, kLam, kDelta, y + dy) < 0.0);
    }
}

TEST_CASE("property: buy then sell at the same time restores the mode")
{
    gen::Gen g(44);
    for (int i = 0; i < 100; ++i) {
        const GaussianPrior p = g.prior();
        auto s = ArgmaxMMState::start(p);
        for (const auto& e : g.trades(g.integer(0, 6), 1.0))
            s = argmax_jump(s, p, kLam, kDelta, e.time, sign_of(e.side));
        const double t = 1.0 + g.uniform(0.01, 0.5);
        const auto before = advance_to(s, kLam, t);
        const auto up = argmax_jump(before, p, kLam, kDelta, t, +1);
        const auto back = argmax_jump(up, p, kLam, kDelta, t, -1);
        CHECK(std::abs(back.xhat - before.xhat) < 1e-10);
        CHECK(back.net_jumps == before.net_jumps);
    }
}

TEST_CASE("mode is constant between events")
{
    const GaussianPrior p{100.0, 0.05};
    auto s = argmax_jump(ArgmaxMMState::start(p), p, kLam, kDelta, 0.1, +1);
    const auto later = advance_to(s, kLam, 0.9);
    CHECK(later.xhat == s.xhat);
    CHECK(later.U == doctest::Approx(s.U + 0.8 * std::exp(5.0 * (s.xhat - 100.0))));
    CHECK(later.V == doctest::Approx(s.V + 0.8 * std::exp(-5.0 * (s.xhat - 100.0))));
}

TEST_CASE("grid argmax follows the recursion when only the meta-order trades")
{
    const GaussianPrior p{100.0, 0.05};
    const double beta = 10.0;
    const GridSpec spec{99.6, 100.8, 2401};
    ZakaiGridFilter f(spec.sample(p), {0.0, 0.0, 100.0}, kLam, {1e-4, 100, false});
    const auto policy = QuotePolicy::mid_at_argmax(kDelta);
    const auto path = impact_recursion(p, kLam, kDelta, beta, 10);
    const double tol = std::max(3.0 * spec.dx(), 1e-4);
    for (int k = 1; k <= 10; ++k) {
        const double tk = k / beta;
        while (f.time() < tk - 1e-12) {
            const Quotes q = quotes_from_posterior(policy, f.diagnostics());
            f.advance(q, std::min(tk, f.time() + 1e-4));
        }
        f.observe_trade(quotes_from_posterior(policy, f.diagnostics()), Side::Ask);
        CHECK(std::abs(f.diagnostics().argmax - path[k - 1]) < tol);
    }
}
