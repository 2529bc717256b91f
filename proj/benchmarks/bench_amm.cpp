#include <benchmark/benchmark.h>

#include "lphedge/amm_math.hpp"
#include "lphedge/pool_sim.hpp"

using namespace lphedge;
using amm::Price;

static void ConcentratedPnl(benchmark::State& state) {
    const auto pos = amm::ConcentratedPosition::from_deposit(
        Price(23776.00), Price(18050.17), Price(40089.53), 19.94, 265132.51);
    double p = 12000.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(amm::lp_pnl_concentrated(pos, Price(p)));
        p = p < 50000.0 ? p + 13.7 : 12000.0;
    }
}
BENCHMARK(ConcentratedPnl);

static void TickToPrice(benchmark::State& state) {
    long tick = -800000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(amm::tick_to_price(tick, 8, 6));
        tick = tick < 800000 ? tick + 1009 : -800000;
    }
}
BENCHMARK(TickToPrice);

static void MovePriceTo(benchmark::State& state) {
    const double kappa = 143.78 * 232015.77;
    const auto [a0, b0] = amm::amounts_from_price_uniform(kappa, Price(1613.68));
    double target = 500.0;
    for (auto _ : state) {
        sim::SimPool pool(a0, b0);
        pool.move_price_to(Price(target));
        benchmark::DoNotOptimize(pool.reserve_a());
        target = target < 6000.0 ? target * 1.37 : 500.0;
    }
}
BENCHMARK(MovePriceTo);

static void ConcentratedExitWalk(benchmark::State& state) {
    const auto pos = amm::ConcentratedPosition::from_deposit(
        Price(23776.00), Price(18050.17), Price(40089.53), 19.94, 265132.51);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sim::simulate_concentrated_exit(pos, Price(30000.0),
                                            static_cast<int>(state.range(0))));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ConcentratedExitWalk)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

BENCHMARK_MAIN();
