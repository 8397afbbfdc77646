#include "priceform/acceptance.hpp"

#include "priceform/config.hpp"
#include "priceform/errors.hpp"
#include "priceform/flow.hpp"
#include "priceform/gaussian_approx.hpp"
#include "priceform/impact_lab.hpp"
#include "priceform/io.hpp"
#include "priceform/market_maker.hpp"
#include "priceform/zakai_grid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace priceform {

namespace {

std::string sci(double v, int digits = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

std::string fix(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

CriterionResult criterion(int id, std::string title)
{
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    return r;
}

// Parameters used throughout the meta-order section.
const ExpIntensity kIntensity{50.0, 5.0};
constexpr double kHalfSpread = 0.1;

struct OracleCase {
    QuoteHistory quotes;
    std::vector<TradeEvent> trades;
    double t_end = 0.25;
};

OracleCase make_case(const GaussianPrior& prior, std::uint64_t seed, std::uint64_t index)
{
    RngStream rng(seed, index);
    OracleCase c;
    std::vector<double> changes;
    for (int k = 0; k < 3; ++k)
        changes.push_back(c.t_end * (0.05 + 0.9 * rng.uniform()));
    std::sort(changes.begin(), changes.end());
    changes.insert(changes.begin(), 0.0);
    for (double start : changes) {
        const double mid = prior.x0 + 0.03 * (2.0 * rng.uniform() - 1.0);
        const double delta = 0.05 + 0.1 * rng.uniform();
        c.quotes.append(start, Quotes::centered(mid, delta));
    }
    const double s = prior.x0 + prior.sigma0 * rng.normal();
    TradeFlow flow(PriceModel{0.0, 0.0, s}, ClippedIntensity(kIntensity), rng, Envelope::Local);
    const auto segs = c.quotes.segments();
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const double end = k + 1 < segs.size() ? segs[k + 1].start : c.t_end;
        while (flow.time() < end) {
            auto ev = flow.next_until(segs[k].quotes, end);
            if (!ev)
                break;
            c.trades.push_back(*ev);
        }
    }
    return c;
}

GridDensity run_pipeline(const OracleCase& c, const GridSpec& spec, const GaussianPrior& prior)
{
    ZakaiGridFilter filter(spec.sample(prior), PriceModel{0.0, 0.0, prior.x0}, kIntensity, {1e-4, 100, false});
    const auto segs = c.quotes.segments();
    std::size_t ti = 0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const double end = k + 1 < segs.size() ? segs[k + 1].start : c.t_end;
        const Quotes& q = segs[k].quotes;
        while (ti < c.trades.size() && c.trades[ti].time < end) {
            filter.advance(q, c.trades[ti].time);
            filter.observe_trade(q, c.trades[ti].side);
            ++ti;
        }
        filter.advance(q, end);
    }
    return filter.posterior();
}

// L1 distance between the piecewise-linear reconstruction of `coarse` and a
// reference density sampled on a finer grid over the same span.
double continuum_l1(const GridDensity& coarse, const GridDensity& reference)
{
    const std::size_t n = reference.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        sum += w * std::abs(coarse.interpolate(reference.x(j)) - reference[j]);
    }
    return sum * reference.dx();
}

CriterionResult closed_form_oracle(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(1, "closed-form oracle (sigma = 0, random quotes and trades)");
    const GaussianPrior prior{100.0, 0.05};
    const double lo = 99.4;
    const double hi = 100.6;
    const std::size_t n = opt.grid_n.value_or(1201);
    const std::size_t n_fine = 2 * (n - 1) + 1;
    const std::size_t n_ref = std::max<std::size_t>(8 * (n - 1) + 1, 9601);
    const GridSpec coarse{lo, hi, n};
    const GridSpec fine{lo, hi, n_fine};
    const GridDensity ref_prior = GridSpec{lo, hi, n_ref}.sample(prior);

    constexpr int kCases = 20;
    double worst = 0.0;
    double sum_coarse = 0.0;
    double sum_fine = 0.0;
    double min_ratio = 1e300;
    double max_ratio = 0.0;
    std::size_t trades = 0;
    for (int j = 0; j < kCases; ++j) {
        const OracleCase c = make_case(prior, opt.seed, 1000 + static_cast<std::uint64_t>(j));
        trades += c.trades.size();
        const GridDensity exact = closed_form_posterior(ref_prior, c.quotes, c.trades, kIntensity, c.t_end);
        const double e1 = continuum_l1(run_pipeline(c, coarse, prior), exact);
        const double e2 = continuum_l1(run_pipeline(c, fine, prior), exact);
        worst = std::max(worst, e1);
        sum_coarse += e1;
        sum_fine += e2;
        min_ratio = std::min(min_ratio, e2 / e1);
        max_ratio = std::max(max_ratio, e2 / e1);
    }
    const double ratio = sum_fine / sum_coarse;
    const double dx = coarse.dx();
    r.status = worst < 1e-3 && ratio >= 0.2 && ratio <= 0.8 ? Status::Pass : Status::Fail;
    r.measured = "max L1 " + sci(worst) + " at dx=" + sci(dx, 2) + " over " + std::to_string(kCases) +
                 " sequences (" + std::to_string(trades) + " trades); refinement ratio " + fix(ratio, 3) +
                 " (per sequence " + fix(min_ratio, 3) + ".." + fix(max_ratio, 3) + ")";
    r.tolerance = "L1 < 1e-3, ratio in [0.2, 0.8]";
    return r;
}

CriterionResult gaussian_jump(const AcceptanceOptions&)
{
    CriterionResult r = criterion(2, "Gaussian jump law (ask trade shifts the mean by a sigma^2)");
    const GaussianPrior prior{100.0, 0.05};
    const GridSpec spec{99.4, 100.6, 1201};
    const GridDensity before = normalize(spec.sample(prior));
    const GridDensity after =
        normalize(apply_trade(before, Quotes::centered(100.0, kHalfSpread), kIntensity, Side::Ask));
    const double shift = diagnostics(after).mean - diagnostics(before).mean;
    const double expected = kIntensity.a() * prior.variance();
    const double err = std::abs(shift - expected);
    r.status = err < 3.0 * spec.dx() ? Status::Pass : Status::Fail;
    r.measured = "shift " + fix(shift, 7) + " vs a*sigma^2 = " + fix(expected, 7) + ", error " + sci(err);
    r.tolerance = "error < 3 dx = " + sci(3.0 * spec.dx(), 1);
    return r;
}

CriterionResult dirac_convergence(const AcceptanceOptions&)
{
    CriterionResult r = criterion(3, "Dirac convergence between trades (fixed quotes)");
    // A diffuse prior: the profile is a Laplace expansion around the mid and
    // ignores the prior's curvature.
    const GaussianPrior prior{100.0, 1.0};
    const GridSpec spec{99.0, 101.0, 2001};
    const Quotes quotes = Quotes::centered(100.0, kHalfSpread);
    const double t1 = characteristic_time(kIntensity, kHalfSpread);
    const GridDensity m0 = spec.sample(prior);

    ZakaiGridFilter filter(m0, PriceModel{0.0, 0.0, 100.0}, kIntensity, {1e-4, 100, false});
    filter.advance(quotes, t1);
    const double var_t1 = filter.diagnostics().variance;
    filter.advance(quotes, 50.0 * t1);
    const GridDensity posterior = filter.posterior();
    const double var_50 = diagnostics(posterior).variance;
    const GridDensity profile = asymptotic_between_trades(m0, quotes, kIntensity, 50.0 * t1);
    const double l1 = l1_distance(posterior, profile);
    const double ratio = var_50 / var_t1;
    r.status = l1 < 0.01 && ratio < 0.05 ? Status::Pass : Status::Fail;
    r.measured = "L1 at 50 t1 " + sci(l1) + "; variance ratio Var(50 t1)/Var(t1) " + fix(ratio, 4);
    r.tolerance = "L1 < 0.01, ratio < 0.05";
    return r;
}

// RK4 on d sigma_t / dt = sigma^2 / (2 sigma_t) - a^2 sigma_t^3 / (2 t1).
double max_variance_error(const GaussianPrior& prior, double sigma, double horizon, double& worst_sqrt_form)
{
    const double a = kIntensity.a();
    const double t1 = characteristic_time(kIntensity, kHalfSpread);
    const auto rhs = [&](double s) { return sigma * sigma / (2.0 * s) - a * a * s * s * s / (2.0 * t1); };
    const double h = 1e-4;
    const int steps = static_cast<int>(std::lround(horizon / h));
    double s = prior.sigma0;
    double worst = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double k1 = rhs(s);
        const double k2 = rhs(s + 0.5 * h * k1);
        const double k3 = rhs(s + 0.5 * h * k2);
        const double k4 = rhs(s + h * k3);
        s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (k % 100 == 0) {
            const double t = k * h;
            const double ode = s * s;
            worst = std::max(worst, std::abs(variance_at(prior, kIntensity, kHalfSpread, sigma, t) - ode) / ode);
            worst_sqrt_form = std::max(
                worst_sqrt_form,
                std::abs(variance_at_sqrt_form(prior, kIntensity, kHalfSpread, sigma, t) - ode) / ode);
        }
    }
    return worst;
}

CriterionResult asymptotic_confidence(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(4, "asymptotic confidence (Brownian price variance)");
    if (!(opt.sigma > 0.0)) {
        r.status = Status::Skip;
        r.measured = "sigma = 0: no Brownian branch";
        r.tolerance = "n/a";
        return r;
    }
    const double v_inf = stationary_variance(kIntensity, kHalfSpread, opt.sigma);
    double worst = 0.0;
    double worst_sqrt = 0.0;
    for (double s0 : {0.05, 0.02, std::sqrt(v_inf), 0.2})
        worst = std::max(worst, max_variance_error({100.0, s0}, opt.sigma, 5.0, worst_sqrt));
    bool ok = worst < 1e-8;
    r.measured = "max relative error vs RK4 " + sci(worst) + "; sigma_inf^2 = " + sci(v_inf, 5);
    r.tolerance = "< 1e-8";
    if (opt.sigma == 0.06) {
        const double err = std::abs(v_inf - 1.54083e-3);
        ok = ok && err < 5e-9;
        r.tolerance += ", sigma_inf^2 = 1.54083e-3 +/- 5e-9";
    }
    r.measured += " (square-root closed form deviates by " + sci(worst_sqrt, 2) + ")";
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
}

CriterionResult quote_stability(const AcceptanceOptions&)
{
    CriterionResult r = criterion(5, "quote stability (mid at posterior mean, no trades)");
    // Off-centre prior mean so the discretization is not symmetric about it.
    const GaussianPrior prior{100.0137, 0.05};
    const GridSpec spec{99.4, 100.6, 1201};
    const double t1 = characteristic_time(kIntensity, kHalfSpread);
    const QuotePolicy policy = QuotePolicy::mid_at_mean(kHalfSpread);

    ZakaiGridFilter filter(spec.sample(prior), PriceModel{0.0, 0.0, 100.0}, kIntensity, {1e-4, 100, false});
    const double mid0 = quotes_from_posterior(policy, filter.diagnostics()).mid();
    double worst = 0.0;
    const int steps = static_cast<int>(std::ceil(10.0 * t1 / 1e-4));
    for (int k = 1; k <= steps; ++k) {
        const Quotes q = quotes_from_posterior(policy, filter.diagnostics());
        filter.advance(q, std::min(10.0 * t1, k * 1e-4));
        worst = std::max(worst, std::abs(quotes_from_posterior(policy, filter.diagnostics()).mid() - mid0));
    }
    r.status = worst < 5.0 * spec.dx() ? Status::Pass : Status::Fail;
    r.measured = "max |mid_t - mid_0| " + sci(worst) + " over [0, 10 t1]";
    r.tolerance = "< 5 dx = " + sci(5.0 * spec.dx(), 1);
    return r;
}

CriterionResult impact_regimes(const AcceptanceOptions&)
{
    CriterionResult r = criterion(6, "impact regimes (slow, fast, arcsinh recursion)");
    const double a = kIntensity.a();
    const double t1 = characteristic_time(kIntensity, kHalfSpread);

    // (i) slow limit
    const SlowLimit slow = slow_limit_residual(0.1 / t1, t1, a);
    const SlowLimit tiny = slow_limit_residual(1e-6 / t1, t1, a);
    const double slow_ratio = tiny.impact_log / tiny.impact_linear;
    const bool ok1 = slow.residual < 1e-14 && std::abs(slow_ratio - 1.0) < 1e-5;

    // (ii) fast regime: beta t1 = 1e3, a^2 sigma0^2 / (beta t1) = 1e4
    const double bt1 = 1e3;
    const double beta_fast = bt1 / t1;
    const GaussianPrior wide{100.0, std::sqrt(1e4 * bt1) / a};
    const auto fast = impact_recursion(wide, kIntensity, kHalfSpread, beta_fast, 10);
    double fast_err = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double expected = std::log(2.0 * k * bt1) / a;
        fast_err = std::max(fast_err, std::abs((fast[k - 1] - wide.x0) - expected) / expected);
    }
    const bool ok2 = fast_err < 0.05;

    // (iii) intermediate regime, diffuse prior
    const double beta = 10.0;
    const double b = beta * t1;
    const auto steps = impact_recursion({100.0, 1e6}, kIntensity, kHalfSpread, beta, 2);
    const auto steps7 = impact_recursion({100.0, 1e7}, kIntensity, kHalfSpread, beta, 2);
    const double first = std::asinh(b) / a;
    const double second = std::asinh(b * (1.0 + std::sqrt(1.0 - 1.5 / (1.0 + std::sqrt(1.0 + b * b))))) / a;
    const double e1 = std::abs((steps[0] - 100.0) - first);
    const double e2 = std::abs((steps[1] - 100.0) - second);
    const double sensitivity = std::max(std::abs(steps7[0] - steps[0]) / (steps[0] - 100.0),
                                        std::abs(steps7[1] - steps[1]) / (steps[1] - 100.0));
    const bool ok3 = e1 < 1e-6 && e2 < 1e-6 && sensitivity < 1e-3;

    r.status = ok1 && ok2 && ok3 ? Status::Pass : Status::Fail;
    r.measured = "(i) residual " + sci(slow.residual, 1) + ", log/linear at beta t1=1e-6 " + fix(slow_ratio, 8) +
                 "; (ii) max rel. error " + sci(fast_err, 2) + "; (iii) errors " + sci(e1, 1) + ", " +
                 sci(e2, 1) + ", sigma0 1e6->1e7 change " + sci(sensitivity, 1);
    r.tolerance = "(i) < 1e-14, |ratio-1| < 1e-5; (ii) < 5%; (iii) < 1e-6, change < 1e-3";
    return r;
}

CriterionResult fixed_quote_limit(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(7, "fixed-quote limit (grid argmax at 100 t1)");
    const double t1 = characteristic_time(kIntensity, kHalfSpread);
    ImpactExperiment exp;
    exp.lambda0 = kIntensity.lambda0();
    exp.a = kIntensity.a();
    exp.half_spread = kHalfSpread;
    exp.sigma = 0.0;
    exp.s0 = 100.02;
    exp.prior = {100.0, 1.0};
    exp.beta = 10.0;
    exp.T = std::numeric_limits<double>::infinity();
    exp.horizon = 100.0 * t1;
    exp.output_dt = exp.horizon;
    exp.policy = PolicyKind::Fixed;
    exp.fixed_mid = 100.0;
    exp.filter = FilterKind::Grid;
    exp.readout = Readout::Argmax;
    exp.grid_n = 2001;
    exp.grid_half_width = 1.0;
    exp.replicas = opt.replicas;
    exp.threads = opt.threads;
    exp.seed = opt.seed + 7;
    const ImpactCurve curve = run_experiment(exp);
    const double xhat = curve.mean_impact.back() + exp.s0;
    const double se = curve.stderr_impact.back();
    const double limit = fixed_quote_limits(exp.prior, kIntensity, Quotes::centered(100.0, kHalfSpread), exp.s0,
                                            exp.beta, exp.T)
                             .limit;
    const double err = std::abs(xhat - limit);
    r.status = err < 1e-2 ? Status::Pass : Status::Fail;
    r.measured = "mean argmax " + fix(xhat, 5) + " (stderr " + sci(se, 1) + ", " + std::to_string(exp.replicas) +
                 " replicas) vs limit " + fix(limit, 5) + ", error " + sci(err, 2);
    r.tolerance = "< 1e-2";
    return r;
}

ImpactExperiment figure_experiment(const AcceptanceOptions& opt, double a)
{
    ImpactExperiment exp;
    exp.lambda0 = 50.0;
    exp.a = a;
    exp.half_spread = kHalfSpread;
    exp.sigma = opt.sigma;
    exp.s0 = 100.0;
    exp.prior = {100.0, 0.05};
    exp.beta = 10.0;
    exp.T = 2.5;
    exp.horizon = 2.5;
    exp.output_dt = 0.1;
    exp.policy = PolicyKind::MidAtMean;
    exp.filter = FilterKind::Grid;
    exp.grid_n = 1001;
    exp.replicas = opt.replicas;
    exp.threads = opt.threads;
    exp.seed = opt.seed + 8;
    return exp;
}

CriterionResult figure_reproduction(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(8, "meta-order impact vs small-spread overlay (a = 5 and a = 20)");
    if (!(opt.sigma > 0.0)) {
        r.status = Status::Skip;
        r.measured = "sigma = 0: the experiment is defined for a Brownian price";
        r.tolerance = "n/a";
        return r;
    }
    const ImpactCurve small = run_experiment(figure_experiment(opt, 5.0));
    const ImpactCurve large = run_experiment(figure_experiment(opt, 20.0));
    const double z = small.max_overlay_zscore();
    const double dev5 = small.max_overlay_deviation();
    const double dev20 = large.max_overlay_deviation();
    r.status = z <= 3.0 && opt.replicas >= 200 && dev20 > dev5 ? Status::Pass : Status::Fail;
    r.measured = "a=5 max |mean - overlay|/stderr " + fix(z, 2) + " (final impact " + fix(small.mean_impact.back(), 4) +
                 " vs " + fix(small.overlay.back(), 4) + "); max deviation a=5 " + sci(dev5, 2) + ", a=20 " +
                 sci(dev20, 2) + "; " + std::to_string(opt.replicas) + " replicas";
    r.tolerance = "z <= 3 at all outputs, dev(a=20) > dev(a=5), replicas >= 200";
    return r;
}

CriterionResult boundedness_linearity(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(9, "boundedness and linearity of the impact overlays");
    if (!(opt.sigma > 0.0)) {
        r.status = Status::Skip;
        r.measured = "sigma = 0: the bounded branch needs sigma > 0";
        r.tolerance = "n/a";
        return r;
    }
    const double a = kIntensity.a();
    const double t1 = characteristic_time(kIntensity, kHalfSpread);
    const double v_inf = stationary_variance(kIntensity, kHalfSpread, opt.sigma);
    const GaussianPrior prior{100.0, std::sqrt(v_inf)};
    const double beta = 10.0;
    const double inf = std::numeric_limits<double>::infinity();
    const double bound = beta * t1 / a;
    const double rate = v_inf * a * a / t1;

    std::vector<double> b;
    double display_err = 0.0;
    double linear_err = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double t = 0.025 * k;
        const auto one = average_impact(prior, kIntensity, kHalfSpread, opt.sigma, beta, prior.x0, t, inf);
        const auto two = average_impact(prior, kIntensity, kHalfSpread, opt.sigma, 2.0 * beta, prior.x0, t, inf);
        b.push_back(one.impact);
        const double display = bound * std::exp(-rate * t) * (std::exp(rate * t) - 1.0);
        display_err = std::max(display_err, std::abs(one.impact - display));
        linear_err = std::max(linear_err, std::abs(two.impact - 2.0 * one.impact));
        if (t > 0.0) {
            const auto n1 = impact_no_info(prior, kIntensity, kHalfSpread, opt.sigma, beta, t, inf);
            const auto n2 = impact_no_info(prior, kIntensity, kHalfSpread, opt.sigma, 2.0 * beta, t, inf);
            linear_err = std::max(linear_err, std::abs(n2.closed_form - 2.0 * n1.closed_form) /
                                                  std::max(1.0, std::abs(n1.closed_form)));
        }
    }
    bool increasing = true;
    bool concave = true;
    bool bounded = true;
    for (std::size_t k = 1; k < b.size(); ++k) {
        increasing = increasing && b[k] > b[k - 1];
        bounded = bounded && b[k] <= bound;
        if (k + 1 < b.size())
            concave = concave && b[k + 1] - 2.0 * b[k] + b[k - 1] <= 1e-15;
    }
    const bool ok = increasing && concave && bounded && display_err < 1e-12 && linear_err < 1e-12;
    r.status = ok ? Status::Pass : Status::Fail;
    r.measured = std::string(increasing ? "increasing" : "NOT increasing") + ", " +
                 (concave ? "concave" : "NOT concave") + ", B(10s) = " + sci(b.back(), 4) + " <= beta t1/a = " +
                 sci(bound, 4) + (bounded ? "" : " VIOLATED") + "; closed form vs display " + sci(display_err, 1) +
                 "; |overlay(2 beta) - 2 overlay(beta)| " + sci(linear_err, 1);
    r.tolerance = "monotone, concave, bounded; deviations < 1e-12";
    return r;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> write_run(const RunConfig& cfg, const std::filesystem::path& dir)
{
    const ImpactExperiment exp = cfg.experiment();
    OutputBundle bundle;
    bundle.curve = run_experiment(exp);
    ReplicaTrace trace = run_replica(exp, 0, true);
    bundle.events = trace.events;
    bundle.trajectory = trace.trajectory;
    if (trace.final_density)
        bundle.densities.push_back({"density", {*trace.final_density, exp.horizon, trace.final_quotes}});
    return write_outputs(dir, bundle, cfg);
}

CriterionResult reproducibility(const AcceptanceOptions& opt)
{
    CriterionResult r = criterion(10, "reproducibility (same seed and config, byte-identical outputs)");
    RunConfig cfg;
    cfg.command = Command::Impact;
    cfg.seed = opt.seed + 10;
    cfg.horizon = 0.5;
    cfg.T = 0.5;
    cfg.replicas = 4;
    cfg.threads = opt.threads;
    cfg.grid_n = 301;
    cfg.sigma = opt.sigma;

    std::error_code ec;
    const auto base = std::filesystem::temp_directory_path() / ("priceform-repro-" + std::to_string(opt.seed));
    std::filesystem::remove_all(base, ec);
    const auto first = write_run(cfg, base / "first");
    const auto second = write_run(cfg, base / "second");
    std::size_t identical = 0;
    std::size_t bytes = 0;
    for (const auto& name : first) {
        const std::string x = read_file(base / "first" / name);
        const std::string y = read_file(base / "second" / name);
        bytes += x.size();
        if (x == y && !x.empty())
            ++identical;
    }
    std::filesystem::remove_all(base, ec);
    r.status = first == second && identical == first.size() ? Status::Pass : Status::Fail;
    r.measured = std::to_string(identical) + "/" + std::to_string(first.size()) + " files identical (" +
                 std::to_string(bytes) + " bytes)";
    r.tolerance = "all files byte-identical";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options)
{
    using Check = CriterionResult (*)(const AcceptanceOptions&);
    static constexpr Check kChecks[] = {closed_form_oracle, gaussian_jump,     dirac_convergence,
                                        asymptotic_confidence, quote_stability, impact_regimes,
                                        fixed_quote_limit, figure_reproduction, boundedness_linearity,
                                        reproducibility};
    std::vector<CriterionResult> results;
    for (int id = 1; id <= 10; ++id) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = kChecks[id - 1](options);
        } catch (const std::exception& e) {
            result.id = id;
            result.title = "criterion " + std::to_string(id);
            result.status = Status::Fail;
            result.measured = std::string("error: ") + e.what();
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.on_result)
            options.on_result(result);
        results.push_back(std::move(result));
    }
    return results;
}

std::string format_result(const CriterionResult& result)
{
    const char* tag = result.status == Status::Pass ? "PASS" : result.status == Status::Fail ? "FAIL" : "SKIP";
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", result.seconds);
    return std::string("[") + tag + "] " + std::to_string(result.id) + " " + result.title + ": " + result.measured +
           " (tolerance: " + result.tolerance + ") " + time;
}

bool all_passed(const std::vector<CriterionResult>& results)
{
    return std::none_of(results.begin(), results.end(),
                        [](const CriterionResult& r) { return r.status == Status::Fail; });
}

}  // namespace priceform
