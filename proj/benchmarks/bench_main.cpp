#include "period_strata/drdatum.hpp"
#include "period_strata/family.hpp"
#include "period_strata/module_algebra.hpp"
#include "period_strata/strata.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace period_strata;

namespace {

Matrix random_matrix(std::mt19937_64& rng, size_t n, int deg)
{
    Ring r = Ring::polynomials("x");
    Matrix m(r, n, n);
    std::uniform_int_distribution<int> coef(-3, 3), d(0, deg);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rational> c;
            for (int k = d(rng); k >= 0; --k)
                c.emplace_back(coef(rng));
            m.set(i, j, Poly(std::move(c)));
        }
    return m;
}

DifTower running_example()
{
    Ring r = Ring::polynomials("x");
    return DifTower(r, 2, {Matrix(r, 2, 2, {0, 0, 0, -1}), Matrix(r, 2, 2, {0, 0, Poly::x(), 0})});
}

void BM_smith_divisors(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    Matrix a = random_matrix(rng, static_cast<size_t>(state.range(0)), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_divisors(a));
}
BENCHMARK(BM_smith_divisors)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_smith_normal_form(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    Matrix a = random_matrix(rng, static_cast<size_t>(state.range(0)), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_smith_normal_form)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_kernel_and_cokernel(benchmark::State& state)
{
    std::mt19937_64 rng(2);
    const size_t n = static_cast<size_t>(state.range(0));
    Matrix a = random_matrix(rng, n, 2).block(0, 0, n, n / 2) * random_matrix(rng, n, 2).block(0, 0, n / 2, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_and_cokernel(a));
}
BENCHMARK(BM_kernel_and_cokernel)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_family_datum(benchmark::State& state)
{
    DifTower t = running_example();
    for (auto _ : state)
        benchmark::DoNotOptimize(family_datum(t));
}
BENCHMARK(BM_family_datum)->Unit(benchmark::kMicrosecond);

void BM_strata_decomposition(benchmark::State& state)
{
    DifTower t = running_example();
    for (auto _ : state)
        benchmark::DoNotOptimize(strata_decomposition(t, 0, 1));
}
BENCHMARK(BM_strata_decomposition)->Unit(benchmark::kMicrosecond);

void BM_min_covers(benchmark::State& state)
{
    DeRhamDatum d = parse_literal("omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 1, (1,2): 1}");
    const int width = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(min_covers(d, 0, width - 1));
}
BENCHMARK(BM_min_covers)->DenseRange(2, 4, 1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
