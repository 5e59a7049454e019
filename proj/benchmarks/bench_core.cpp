#include <benchmark/benchmark.h>

#include "rfprog/harness.hpp"
#include "rfprog/progression.hpp"
#include "rfprog/roth_variety.hpp"
#include "rfprog/spectral.hpp"

using namespace rfprog;

namespace {

RationalFunction rf(const char* text) { return parse_rational_function(text); }

GridFunction random_grid(Prime p) {
    CounterRng rng(1, p.value(), 0);
    return random_pm1(p, rng);
}

void BM_batch_inverse(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    CounterRng rng(2, p.value(), 0);
    std::vector<std::uint32_t> values(4096);
    for (auto& v : values) v = 1 + rng.next_below(p.value() - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_inverse_values(values, p));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_batch_inverse)->Arg(101)->Arg(65537);

void BM_dft(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    const GridFunction f = random_grid(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dft(f));
    }
}
BENCHMARK(BM_dft)->Arg(101)->Arg(251)->Arg(499);

void BM_lambda_counting(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    const auto F = rf("t");
    const auto G = rf("t^2");
    const GridFunction f = random_grid(p);
    const PairTables tables = PairTables::build(F, G, p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_counting(tables, f, f, f));
    }
}
BENCHMARK(BM_lambda_counting)->Arg(101)->Arg(251)->Arg(499);

void BM_kernel_table(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    const auto F = rf("t");
    const auto G = rf("t^2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_table(F, G, p));
    }
}
BENCHMARK(BM_kernel_table)->Arg(31)->Arg(61)->Arg(101);

void BM_count_staged(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    const RothEquations eqs(rf("t"), rf("t^2"), p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_points_staged(eqs));
    }
}
BENCHMARK(BM_count_staged)->Arg(11)->Arg(19)->Arg(31);

void BM_count_charsum(benchmark::State& state) {
    const Prime p(static_cast<std::uint32_t>(state.range(0)));
    const auto F = rf("t");
    const auto G = rf("t^2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_points_charsum(F, G, p));
    }
}
BENCHMARK(BM_count_charsum)->Arg(31)->Arg(61)->Arg(101);

}  // namespace

BENCHMARK_MAIN();
