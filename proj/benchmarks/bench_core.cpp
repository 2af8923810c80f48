#include <benchmark/benchmark.h>

#include "sngs/hartree.hpp"
#include "sngs/linearized.hpp"
#include "sngs/solver.hpp"

using namespace sngs;

namespace {

const ModelParams kMixed{1.0, 1.0, 1.0, 4.0};

RadialField guess(std::size_t n) { return default_guess(kMixed, make_grid(40.0, n)); }

void BM_HartreePotential(benchmark::State& st) {
    const RadialField u = guess(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(hartree_potential(u));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_HartreePotential)->RangeMultiplier(4)->Range(1024, 16384)->Complexity();

void BM_ApplyJacobian(benchmark::State& st) {
    const RadialField u = guess(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(apply_jacobian(u, u, kMixed));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ApplyJacobian)->RangeMultiplier(4)->Range(1024, 16384)->Complexity();

void BM_SolveFromGuess(benchmark::State& st) {
    const RadialField u = guess(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(solve_from_guess(u, kMixed));
}
BENCHMARK(BM_SolveFromGuess)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SectorSpectrum(benchmark::State& st) {
    const GroundState s = solve_from_guess(guess(static_cast<std::size_t>(st.range(0))), kMixed);
    const SectorOperator op = sector_form(s, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(sector_spectrum(op, 4));
}
BENCHMARK(BM_SectorSpectrum)->Args({2048, 0})->Args({2048, 1})->Args({8192, 1})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
