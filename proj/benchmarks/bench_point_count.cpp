#include <benchmark/benchmark.h>

#include "ecaliquot/aliquot.hpp"
#include "ecaliquot/point_count.hpp"

using namespace ecaliquot;

namespace {

const CurveQ kE43(0, 1, 1, 0, 0);

u64 first_prime_at_least(u64 n) {
    while (!is_prime(n)) ++n;
    return n;
}

void BM_naive(benchmark::State& state) {
    const auto R = reduce(kE43, first_prime_at_least(static_cast<u64>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(count_points_naive(R));
}
BENCHMARK(BM_naive)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_bsgs(benchmark::State& state) {
    const auto R = reduce(kE43, first_prime_at_least(static_cast<u64>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(count_points_bsgs(R));
}
BENCHMARK(BM_bsgs)->Arg(1 << 14)->Arg(1 << 20)->Arg(1 << 26)->Arg(1 << 30);

void BM_cm(benchmark::State& state) {
    u64 p = first_prime_at_least(static_cast<u64>(state.range(0)));
    while (p % 3 != 1) p = first_prime_at_least(p + 1);
    for (auto _ : state) benchmark::DoNotOptimize(count_points_cm_j0(2, p));
}
BENCHMARK(BM_cm)->Arg(1 << 14)->Arg(1 << 20)->Arg(1 << 30);

void BM_pair_sweep(benchmark::State& state) {
    const u64 X = static_cast<u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(amicable_pairs_up_to(kE43, X));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * X));
}
BENCHMARK(BM_pair_sweep)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
