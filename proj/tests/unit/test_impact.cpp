#include <doctest.h>

#include "gen.hpp"

#include <priceform/errors.hpp>
#include <priceform/impact_lab.hpp>

#include <cmath>
#include <vector>

using namespace priceform;

namespace {

const ExpIntensity kLam(50.0, 5.0);
constexpr double kDelta = 0.1;

ImpactExperiment small_experiment()
{
    ImpactExperiment exp;
    exp.grid_n = 401;
    exp.horizon = 1.0;
    exp.T = 1.0;
    exp.output_dt = 0.25;
    exp.replicas = 12;
    exp.seed = 3;
    exp.threads = 1;
    return exp;
}

}  // namespace

TEST_CASE("slow limit")
{
    const double t1 = characteristic_time(kLam, kDelta);
    const auto s = slow_limit_residual(0.1 / t1, t1, 5.0);
    CHECK(s.residual < 1e-14);

    const auto fig = slow_limit_residual(0.164872 / t1, t1, 5.0);
    CHECK(fig.impact_linear == doctest::Approx(0.0329744).epsilon(1e-6));
    CHECK(fig.impact_log == doctest::Approx(std::log1p(0.164872) / 5.0).epsilon(1e-12));
    CHECK(fig.impact_log == doctest::Approx(0.0305).epsilon(1e-2));

    double prev = 0.0;
    for (double b : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
        const auto r = slow_limit_residual(b / t1, t1, 5.0);
        const double gap = std::abs(r.impact_log / r.impact_linear - 1.0);
        if (prev > 0.0)
            CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-5);
    CHECK_THROWS_AS(slow_limit_residual(1.0 / t1, t1, 5.0), DomainError);
    CHECK_THROWS_AS(slow_limit_residual(2.0 / t1, t1, 5.0), DomainError);
}

TEST_CASE("fixed-quote limits")
{
    const GaussianPrior p{100.0, 0.05};
    const Quotes q = Quotes::centered(100.0, kDelta);
    const double t1 = characteristic_time(kLam, kDelta);
    CHECK(fixed_quote_limits(p, kLam, q, 100.037, 0.0, 2.5).limit == 100.037);
    CHECK(fixed_quote_limits(p, kLam, q, 100.037, 10.0, 2.5).limit == 100.037);
    const auto inf = fixed_quote_limits(p, kLam, q, 100.0, 10.0, INFINITY);
    CHECK(inf.infinite_horizon);
    CHECK(inf.limit == doctest::Approx(100.0 + std::asinh(10.0 * t1) / 5.0).epsilon(1e-15));
    // beta = 0 with T infinite recovers S through arcsinh(sinh(.)).
    CHECK(fixed_quote_limits(p, kLam, q, 100.037, 0.0, INFINITY).limit == doctest::Approx(100.037).epsilon(1e-14));

    CHECK(diffuse_prior_mode(kLam, q, 2.0, 3, 10.0, 1.0) ==
          doctest::Approx(100.0 + std::asinh(t1 / 2.0 * 13.0) / 5.0).epsilon(1e-15));
    CHECK_THROWS_AS(diffuse_prior_mode(kLam, q, 0.0, 0, 10.0, 1.0), InvalidArgument);
}

TEST_CASE("overlays delegate to the formula functions")
{
    ImpactExperiment exp;
    const auto o = analytic_overlays(exp);
    const double t1 = characteristic_time(exp.intensity(), exp.half_spread);
    REQUIRE(o.times == exp.output_times());
    for (std::size_t k = 0; k < o.times.size(); ++k) {
        const auto ai = average_impact(exp.prior, exp.intensity(), exp.half_spread, exp.sigma, exp.beta, exp.s0,
                                       o.times[k], exp.T);
        const auto ni = impact_no_info(exp.prior, exp.intensity(), exp.half_spread, exp.sigma, exp.beta, o.times[k], exp.T);
        CHECK(o.learning[k] == ai.learning - exp.s0);
        CHECK(o.impact[k] == ai.impact);
        CHECK(o.impact_jumps[k] == ai.impact_jumps);
        CHECK(o.no_info[k] == ni.closed_form);
        CHECK(o.no_info_jumps[k] == ni.jump_sum);
    }
    const auto rec = impact_recursion(exp.prior, exp.intensity(), exp.half_spread, exp.beta,
                                      static_cast<int>(o.recursion.size()));
    REQUIRE(o.recursion.size() == 25);
    for (std::size_t k = 0; k < rec.size(); ++k)
        CHECK(o.recursion[k] == rec[k] - exp.prior.x0);
    CHECK(o.first_step == doctest::Approx(std::asinh(exp.beta * t1) / exp.a));
    CHECK(o.slow_limit == doctest::Approx(exp.beta * t1 / exp.a));
}

TEST_CASE("property: overlays are linear in beta")
{
    gen::Gen g(51);
    for (int i = 0; i < 30; ++i) {
        ImpactExperiment exp;
        exp.a = g.log_uniform(1.0, 20.0);
        exp.sigma = g.coin() ? 0.0 : g.log_uniform(0.01, 0.2);
        exp.prior = {100.0, g.log_uniform(0.01, 0.2)};
        exp.s0 = exp.prior.x0;
        exp.beta = g.log_uniform(0.5, 50.0);
        exp.T = INFINITY;
        exp.horizon = 3.0;
        const auto one = analytic_overlays(exp);
        exp.beta *= 2.0;
        const auto two = analytic_overlays(exp);
        for (std::size_t k = 0; k < one.times.size(); ++k) {
            CHECK(two.impact[k] == doctest::Approx(2.0 * one.impact[k]).epsilon(1e-12));
            CHECK(two.no_info[k] == doctest::Approx(2.0 * one.no_info[k]).epsilon(1e-12));
            CHECK(two.learning[k] == one.learning[k]);
        }
    }
}

TEST_CASE("property: stationary-start impact is increasing, concave and bounded")
{
    gen::Gen g(52);
    for (int i = 0; i < 30; ++i) {
        const ExpIntensity lam(g.log_uniform(10.0, 100.0), g.log_uniform(1.0, 20.0));
        const double delta = g.uniform(0.0, 0.2), sigma = g.log_uniform(0.01, 0.2), beta = g.log_uniform(1.0, 50.0);
        const double t1 = characteristic_time(lam, delta);
        const GaussianPrior st{100.0, std::sqrt(stationary_variance(lam, delta, sigma))};
        const double bound = beta * t1 / lam.a();
        double prev = 0.0, prev_inc = INFINITY;
        for (double t = 0.05; t <= 10.0; t += 0.05) {
            const double b = average_impact(st, lam, delta, sigma, beta, 100.0, t, INFINITY).impact;
            CHECK(b >= prev - 1e-14 * bound);
            CHECK(b <= bound * (1 + 1e-12));
            CHECK(b - prev <= prev_inc * (1 + 1e-9) + 1e-14 * bound);
            prev_inc = b - prev;
            prev = b;
        }
    }
}

TEST_CASE("regime ordering at fixed volume")
{
    const double t1 = characteristic_time(kLam, kDelta);
    const GaussianPrior p{100.0, 0.05};
    const int Q = 25;
    double prev = 0.0;
    for (double beta = 1.0; beta <= 1e4; beta *= 2.0) {
        const double impact = impact_recursion(p, kLam, kDelta, beta, Q).back() - p.x0;
        CHECK(impact > prev);
        prev = impact;
    }
    // The fast-regime log law overtakes the slow-regime bound once beta t1 is large.
    auto fast = [&](double bt1) { return std::log(2.0 * Q * bt1) / 5.0; };
    auto slow = [&](double bt1) { return bt1 / 5.0; };
    CHECK(fast(1e-3 / t1 * t1) < slow(1e-3) + 1.0);
    CHECK(fast(1e-2) < 0.0);
    CHECK(fast(1.0) > slow(1.0));
}

TEST_CASE("experiment validation")
{
    ImpactExperiment exp;
    CHECK_NOTHROW(exp.validate());
    exp.horizon = 1.0;
    CHECK_THROWS_AS(exp.validate(), InvalidArgument);
    exp = ImpactExperiment{};
    exp.replicas = 0;
    CHECK_THROWS_AS(exp.validate(), InvalidArgument);
    exp = ImpactExperiment{};
    exp.filter = FilterKind::Gaussian;
    exp.policy = PolicyKind::MidAtArgmax;
    CHECK_THROWS_AS(exp.validate(), InvalidArgument);

    exp = ImpactExperiment{};
    const auto times = exp.output_times();
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 2.5);
    CHECK(times.size() == 51);
    CHECK(exp.effective_readout() == Readout::Mean);
    exp.policy = PolicyKind::MidAtArgmax;
    CHECK(exp.effective_readout() == Readout::Argmax);
}

TEST_CASE("no meta-order, unbiased prior: mean impact is zero within 3 stderr")
{
    auto exp = small_experiment();
    exp.beta = 0.0;
    exp.replicas = 40;
    const auto curve = run_experiment(exp);
    for (std::size_t k = 0; k < curve.times.size(); ++k) {
        CHECK(curve.stderr_impact[k] >= 0.0);
        CHECK(curve.overlay[k] == doctest::Approx(0.0));
        if (k > 0)
            CHECK(std::abs(curve.mean_impact[k]) <= 3.0 * curve.stderr_impact[k]);
    }
}

TEST_CASE("experiments are reproducible and independent of the thread count")
{
    auto exp = small_experiment();
    const auto a = run_experiment(exp);
    exp.threads = 3;
    const auto b = run_experiment(exp);
    CHECK(a.times == b.times);
    CHECK(a.mean_impact == b.mean_impact);
    CHECK(a.stderr_impact == b.stderr_impact);
    exp.seed = 4;
    CHECK(run_experiment(exp).mean_impact != a.mean_impact);
}

TEST_CASE("both filters and readouts run")
{
    auto exp = small_experiment();
    exp.replicas = 2;
    exp.filter = FilterKind::Gaussian;
    const auto g = run_experiment(exp);
    CHECK(g.readout == Readout::Mean);
    for (double v : g.mean_impact)
        CHECK(std::isfinite(v));

    exp.filter = FilterKind::Grid;
    exp.policy = PolicyKind::MidAtArgmax;
    const auto trace = run_replica(exp, 0, true);
    CHECK(trace.final_density.has_value());
    CHECK(trace.readout.size() == exp.output_times().size());
    long meta = 0;
    for (const auto& e : trace.events)
        meta += e.source == Source::Meta;
    CHECK(meta == 10);
    for (std::size_t i = 1; i < trace.events.size(); ++i)
        CHECK(trace.events[i].time >= trace.events[i - 1].time);
}

TEST_CASE("replica failures carry the replica index")
{
    auto exp = small_experiment();
    exp.policy = PolicyKind::Fixed;
    exp.sigma = 1.0;
    exp.clip_width = 1e-3;
    exp.grid_half_width = 5.0;
    try {
        run_experiment(exp);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).rfind("replica ", 0) == 0);
    }
}
