// Command-line front end: simulate, impact, filter-demo, verify.

#include <priceform/acceptance.hpp>
#include <priceform/config.hpp>
#include <priceform/errors.hpp>
#include <priceform/impact_lab.hpp>
#include <priceform/io.hpp>
#include <priceform/zakai_grid.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace pf = priceform;

namespace {

struct Flag {
    const char* name;
    const char* path;
    const char* help;
};

// Per-parameter overrides; each maps to a dotted config key.
const Flag kFlags[] = {
    {"--lambda0", "model.lambda0", "base trade intensity (1/s, default 50)"},
    {"--a", "model.a", "intensity decay per price unit (default 5)"},
    {"--sigma", "model.sigma", "efficient price volatility (default 0.06)"},
    {"--s0", "model.s0", "initial efficient price (default 100)"},
    {"--half-spread", "quotes.half_spread", "half-spread delta (default 0.1)"},
    {"--policy", "quotes.policy", "fixed | mid-mean | mid-argmax (default mid-mean)"},
    {"--x0", "prior.x0", "prior mean (default 100)"},
    {"--sigma0", "prior.sigma0", "prior standard deviation (default 0.05)"},
    {"--beta", "meta.beta", "meta-order children per second, 0 disables (default 10)"},
    {"--T", "meta.T", "meta-order duration in seconds, 'inf' for none (default 2.5)"},
    {"--horizon", "run.horizon", "simulated time in seconds (default 2.5)"},
    {"--output-dt", "run.output_dt", "spacing of impact outputs (default 0.05)"},
    {"--replicas", "run.replicas", "Monte-Carlo replicas (default 200)"},
    {"--threads", "run.threads", "worker threads, 0 = all cores (default 0)"},
    {"--filter", "run.filter", "grid | gaussian (default grid)"},
    {"--grid-n", "grid.n", "grid nodes (default 1001; verify: closed-form oracle grid)"},
    {"--grid-half-width", "grid.half_width", "grid half-width around x0, 0 = automatic"},
};

std::string quote_if_word(const std::string& v)
{
    // Bare words (policy names, "inf") become JSON strings; numbers pass through.
    if (v == "inf" || v == "infinity")
        return "null";
    char* end = nullptr;
    std::strtod(v.c_str(), &end);
    if (end && *end == '\0' && !v.empty())
        return v;
    return "\"" + v + "\"";
}

pf::OutputBundle trace_bundle(const pf::ImpactExperiment& exp, const pf::ReplicaTrace& trace)
{
    pf::OutputBundle bundle;
    bundle.events = trace.events;
    bundle.trajectory = trace.trajectory;
    if (trace.final_density)
        bundle.densities.push_back({"density", {*trace.final_density, exp.horizon, trace.final_quotes}});
    return bundle;
}

void print_written(const std::string& dir, const std::vector<std::string>& files)
{
    std::cout << "wrote";
    for (const auto& f : files)
        std::cout << ' ' << dir << '/' << f;
    std::cout << '\n';
}

int cmd_simulate(const pf::RunConfig& cfg)
{
    const auto exp = cfg.experiment();
    const auto trace = pf::run_replica(exp, 0, true);
    std::size_t meta = 0;
    for (const auto& e : trace.events)
        meta += e.source == pf::Source::Meta;
    const auto& last = trace.trajectory.back();
    std::cout << "simulated " << exp.horizon << " s: " << trace.events.size() << " trades (" << meta
              << " meta), final mean " << last.mean << ", variance " << last.variance << ", S " << last.efficient_price
              << '\n';
    print_written(cfg.output_dir, pf::write_outputs(cfg.output_dir, trace_bundle(exp, trace), cfg));
    return 0;
}

int cmd_impact(const pf::RunConfig& cfg)
{
    const auto exp = cfg.experiment();
    pf::OutputBundle bundle;
    bundle.curve = pf::run_experiment(exp);
    const auto& c = *bundle.curve;
    std::cout << "impact at t=" << c.times.back() << ": " << c.mean_impact.back() << " +/- " << c.stderr_impact.back()
              << " (overlay " << c.overlay.back() << ", readout " << pf::to_string(c.readout) << ", "
              << exp.replicas << " replicas)\n";
    std::cout << "max |mean - overlay| / stderr = " << c.max_overlay_zscore() << '\n';
    print_written(cfg.output_dir, pf::write_outputs(cfg.output_dir, bundle, cfg));
    return 0;
}

int cmd_filter_demo(const pf::RunConfig& cfg)
{
    auto exp = cfg.experiment();
    exp.policy = pf::PolicyKind::Fixed;
    exp.filter = pf::FilterKind::Grid;
    const auto trace = pf::run_replica(exp, 0, true);
    auto bundle = trace_bundle(exp, trace);
    const auto& last = trace.trajectory.back();
    std::cout << "fixed quotes " << last.quotes.bid() << " / " << last.quotes.ask() << ", " << trace.events.size()
              << " trades; posterior mean " << last.mean << ", argmax " << last.argmax << ", variance "
              << last.variance << '\n';
    if (exp.sigma == 0.0 && trace.final_density) {
        // With a fixed efficient price the exact posterior is available.
        const auto& grid = *trace.final_density;
        const pf::GridDensity prior = pf::GridDensity::gaussian(grid.x_min(), grid.x_max(), grid.size(),
                                                                exp.prior.x0, exp.prior.sigma0);
        const pf::QuoteHistory quotes(last.quotes);
        const auto exact = pf::closed_form_posterior(prior, quotes, trace.events, exp.intensity(), exp.horizon);
        std::cout << "L1(grid, closed form) = " << pf::l1_distance(grid, exact) << '\n';
        bundle.densities.push_back({"density_closed_form", {exact, exp.horizon, last.quotes}});
    }
    print_written(cfg.output_dir, pf::write_outputs(cfg.output_dir, bundle, cfg));
    return 0;
}

int cmd_verify(const pf::RunConfig& cfg, const std::vector<int>& only)
{
    pf::AcceptanceOptions opt;
    opt.grid_n = cfg.grid_n;
    opt.sigma = cfg.sigma;
    opt.replicas = cfg.replicas;
    opt.threads = cfg.threads;
    if (cfg.seed)
        opt.seed = *cfg.seed;
    opt.only = only;
    opt.on_result = [](const pf::CriterionResult& r) { std::cout << pf::format_result(r) << std::endl; };
    const auto results = pf::run_acceptance(opt);
    const bool ok = pf::all_passed(results);
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"priceform: Bayesian price formation and meta-order impact laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pf::git_describe()));

    std::string config_file;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> values;
    std::vector<int> only;

    app.add_option("--config", config_file, "JSON config file; flags override it")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "master seed (required for simulate and impact)");
    auto* out_opt = app.add_option("--out", out_dir,
                                   std::string("output directory (default $") + pf::kOutputDirEnv + " or " +
                                       pf::kDefaultOutputDir + ")");
    for (const auto& f : kFlags)
        app.add_option(f.name, values[f.path], f.help);

    auto* simulate = app.add_subcommand("simulate", "one traced replica: events, trajectory, final density");
    auto* impact = app.add_subcommand("impact", "Monte-Carlo meta-order impact curve with analytic overlay");
    auto* demo = app.add_subcommand("filter-demo", "grid filter under fixed quotes, with the exact posterior when sigma=0");
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", only, "criteria to run (1-10)");
    for (auto* sub : {simulate, impact, demo, verify})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::vector<pf::ConfigOverride> overrides;
    const auto* sub = app.get_subcommands().front();
    overrides.push_back({"command", "\"" + sub->get_name() + "\""});
    if (*seed_opt)
        overrides.push_back({"seed", std::to_string(seed)});
    if (*out_opt)
        overrides.push_back({"output_dir", "\"" + out_dir + "\""});
    if (sub == demo && !app.count("--beta"))
        overrides.push_back({"meta.beta", "0"});  // the demo is about learning, not impact
    for (const auto& f : kFlags)
        if (app.count(f.name))
            overrides.push_back({f.path, quote_if_word(values[f.path])});

    try {
        const pf::RunConfig cfg =
            config_file.empty() ? pf::parse_config("{}", overrides) : pf::load_config(config_file, overrides);
        switch (cfg.command) {
        case pf::Command::Simulate: return cmd_simulate(cfg);
        case pf::Command::Impact: return cmd_impact(cfg);
        case pf::Command::FilterDemo: return cmd_filter_demo(cfg);
        case pf::Command::Verify: return cmd_verify(cfg, only);
        }
    } catch (const pf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const pf::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
