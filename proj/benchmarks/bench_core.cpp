#include <benchmark/benchmark.h>

#include "lorentz/decomposition.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/random.hpp"

using namespace lorentz;

namespace {

StepFunction sample(std::size_t pieces) {
    Rng rng(pieces);
    CorpusOptions o;
    o.max_pieces = pieces;
    o.nonincreasing = true;
    return random_nonincreasing(rng, o);
}

void BM_LorentzNorm(benchmark::State& st) {
    StepFunction f = sample(st.range(0));
    Exponents e = Exponents::make(2.0, 4.0);
    for (auto _ : st) benchmark::DoNotOptimize(lorentz_norm(f, e).value);
}
BENCHMARK(BM_LorentzNorm)->Arg(8)->Arg(64)->Arg(512);

void BM_MaximalNorm(benchmark::State& st) {
    StepFunction f = sample(st.range(0));
    Exponents e = Exponents::make(2.0, 4.0);
    for (auto _ : st) benchmark::DoNotOptimize(maximal_norm(f, e).value);
}
BENCHMARK(BM_MaximalNorm)->Arg(8)->Arg(64);

void BM_LevelFunction(benchmark::State& st) {
    StepFunction f = sample(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(level_function(f, 1.0 / 3.0).slopes.size());
}
BENCHMARK(BM_LevelFunction)->Arg(8)->Arg(64)->Arg(512);

void BM_EpsilonDecomposition(benchmark::State& st) {
    StepFunction f = sample(6);
    Exponents e = Exponents::make(2.0, 4.0);
    const double eps = st.range(0) == 0 ? 0.1 : 0.01;
    for (auto _ : st) benchmark::DoNotOptimize(epsilon_decomposition(f, e, eps).upper_bound);
}
BENCHMARK(BM_EpsilonDecomposition)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
