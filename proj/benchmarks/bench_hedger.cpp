#include <benchmark/benchmark.h>

#include <vector>

#include "lphedge/amm_math.hpp"
#include "lphedge/hedger.hpp"
#include "lphedge/options.hpp"

using namespace lphedge;
using amm::Price;

namespace {

options::OptionsChain dense_chain(double spot) {
    options::OptionsChain chain;
    chain.timestamp = "bench";
    chain.underlying = "SYN";
    chain.spot = spot;
    for (int j = 0;; ++j) {
        const double factor = 0.2 + 0.02 * j;
        if (factor > 4.0) {
            break;
        }
        chain.quotes.push_back({options::OptionKind::Call, spot * factor, 0.0, 0.0,
                                "2099-01-01", "SYN"});
        chain.quotes.push_back({options::OptionKind::Put, spot * factor, 0.0, 0.0,
                                "2099-01-01", "SYN"});
    }
    return chain;
}

hedge::HedgeProblem bench_problem(int grid_count) {
    const amm::Position pos =
        amm::UniformPosition::from_deposit(Price(1613.68), 143.78, 232015.77);
    const auto grid = hedge::geometric_grid(Price(1613.68), {0.1, 4.0, grid_count});
    return hedge::make_problem(pos, grid, dense_chain(1613.68), 1e-4);
}

} // namespace

static void CostEvaluation(benchmark::State& state) {
    const auto problem = bench_problem(static_cast<int>(state.range(0)));
    const std::vector<double> theta(problem.chain.quotes.size(), 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hedge::cost(theta, problem));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(CostEvaluation)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void GradientEvaluation(benchmark::State& state) {
    const auto problem = bench_problem(static_cast<int>(state.range(0)));
    const std::vector<double> theta(problem.chain.quotes.size(), 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hedge::gradient(theta, problem));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GradientEvaluation)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void SolveEpochs(benchmark::State& state) {
    const auto problem = bench_problem(256);
    hedge::SolverConfig config;
    config.epochs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hedge::solve(problem, config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SolveEpochs)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
