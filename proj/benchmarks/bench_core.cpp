#include "linform/expsums.hpp"
#include "linform/interval.hpp"
#include "linform/ntcore.hpp"
#include "linform/powers2.hpp"
#include "linform/s0calc.hpp"
#include "linform/search.hpp"
#include "linform/singular.hpp"

#include <benchmark/benchmark.h>

using namespace linform;

namespace {

void BM_SievePrimes(benchmark::State& state) {
    const auto bound = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sieve_primes(bound));
    }
}
BENCHMARK(BM_SievePrimes)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

void BM_TwinPrimeConstant(benchmark::State& state) {
    PrimeTable table(static_cast<std::uint64_t>(state.range(0)));
    const Precision prec(30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(twin_prime_constant(table, prec));
    }
}
BENCHMARK(BM_TwinPrimeConstant)->Arg(100'000)->Arg(1'000'000);

void BM_FactorizeMersenne(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const std::uint64_t n = (d == 64) ? ~0ull : ((1ull << d) - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(factorize(n));
    }
}
BENCHMARK(BM_FactorizeMersenne)->Arg(49)->Arg(59)->Arg(64);

void BM_Pow2Sum(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    double alpha = 0.123456789;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pow2_sum(alpha, L));
        alpha += 1e-9;
    }
}
BENCHMARK(BM_Pow2Sum)->Arg(8)->Arg(16)->Arg(24);

void BM_LevelSetMeasure(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(level_set_measure(L, 0.9, 1e-8));
    }
}
BENCHMARK(BM_LevelSetMeasure)->Arg(8)->Arg(12)->Arg(16);

void BM_KpSumClosedForm(benchmark::State& state) {
    PrimeTable table(100'000);
    const Precision prec(30);
    RealInterval c0 = twin_prime_constant(table, prec);
    FactorCache cache;
    cache.preload_mersenne(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            kp_sum_closed_form(static_cast<int>(state.range(0)), c0, cache, prec));
    }
}
BENCHMARK(BM_KpSumClosedForm)->Arg(30)->Arg(50);

void BM_MajorArcMainTerm(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(major_arc_main_term(3.0, 500.0, 0.4, 2.0, -1.5, 0.02));
    }
}
BENCHMARK(BM_MajorArcMainTerm);

void BM_SolutionSearch(benchmark::State& state) {
    RawCoefficientConfig raw;
    raw.lambda1 = "1.7320508075688772935274463415058723669428";
    raw.lambda2 = "-1.4142135623730950488016887242096980785696";
    raw.mus = {"0.5773502691896257645091487805019574556476",
               "-0.7071067811865475244008443621048490392848"};
    raw.ratio1 = "3/1";
    raw.ratio2 = "2/1";
    raw.eta = "0.5";
    raw.epsilon = "0.2";
    raw.literal_digits = 40;
    const Precision prec(30);
    CoefficientConfig cfg = validate_config(raw, ValidationMode::search, prec);
    PrimeTable table(static_cast<std::uint64_t>(state.range(0)) + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            find_solutions(cfg, table, static_cast<double>(state.range(0)), 2, prec));
    }
}
BENCHMARK(BM_SolutionSearch)->Arg(500)->Arg(2000);

} // namespace

BENCHMARK_MAIN();
