#include <priceform/flow.hpp>
#include <priceform/market_maker.hpp>
#include <priceform/zakai_grid.hpp>

#include <benchmark/benchmark.h>

using namespace priceform;

namespace {

const ExpIntensity kLam(50.0, 5.0);
const Quotes kQuotes = Quotes::centered(100.0, 0.1);

void BM_FilterStep(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const GridSpec spec{99.0, 101.0, n};
    ZakaiGridFilter f(spec.sample({100.0, 0.05}), {0.0, 0.06, 100.0}, kLam, {1e-4, 100, false});
    for (auto _ : state)
        f.step(kQuotes, 1e-4);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FilterStep)->Arg(1001)->Arg(4001);

void BM_ApplyTrade(benchmark::State& state)
{
    const auto d = GridDensity::gaussian(99.0, 101.0, 4001, 100.0, 0.05);
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_trade(d, kQuotes, kLam, Side::Ask));
}
BENCHMARK(BM_ApplyTrade);

void BM_Thinning(benchmark::State& state)
{
    const auto env = state.range(0) == 0 ? Envelope::Local : Envelope::Global;
    TradeFlow flow({0.0, 0.06, 100.0}, ClippedIntensity(kLam), RngStream(1, 0), env);
    double t = 0.0;
    std::int64_t trades = 0;
    for (auto _ : state) {
        // Quotes follow the price so the flow stays stationary.
        t += 0.1;
        const Quotes q = Quotes::centered(flow.price(), 0.1);
        while (flow.next_until(q, t))
            ++trades;
    }
    state.counters["trades"] = benchmark::Counter(static_cast<double>(trades), benchmark::Counter::kIsRate);
    state.SetLabel(env == Envelope::Local ? "local envelope" : "global envelope");
}
BENCHMARK(BM_Thinning)->Arg(0)->Arg(1);

void BM_ArgmaxJump(benchmark::State& state)
{
    const GaussianPrior prior{100.0, 0.05};
    auto s = ArgmaxMMState::start(prior);
    for (int k = 1; k <= 20; ++k)
        s = argmax_jump(s, prior, kLam, 0.1, k * 0.1, +1);
    for (auto _ : state)
        benchmark::DoNotOptimize(argmax_jump(s, prior, kLam, 0.1, 2.1, +1));
}
BENCHMARK(BM_ArgmaxJump);

void BM_ImpactRecursion(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(impact_recursion({100.0, 0.05}, kLam, 0.1, 10.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ImpactRecursion)->Arg(25)->Arg(250);

}  // namespace

BENCHMARK_MAIN();
