// Multiplication timings around the Karatsuba and bit-packing thresholds.

#include <random>

#include <benchmark/benchmark.h>

#include "fqw/poly.hpp"

using namespace fqw;

namespace {

Poly random_poly(const Field& f, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Elem> c(n);
    for (auto& x : c)
        x = static_cast<Elem>(rng() % f.order());
    c.back() = 1;
    return Poly(f, std::move(c));
}

void mul_prime(benchmark::State& state)
{
    const Field f = make_prime_field(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Poly a = random_poly(f, n, 1), b = random_poly(f, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(a * b);
}

void mul_extension(benchmark::State& state)
{
    const Field f = parse_field("9");
    const auto n = static_cast<std::size_t>(state.range(0));
    const Poly a = random_poly(f, n, 1), b = random_poly(f, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(a * b);
}

void mul_gf2(benchmark::State& state)
{
    const Field f = make_prime_field(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Poly a = random_poly(f, n, 1), b = random_poly(f, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(a * b);
}

void mulmod_prime(benchmark::State& state)
{
    const Field f = make_prime_field(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Poly m = random_poly(f, n + 1, 3);
    const Poly a = random_poly(f, n, 1), b = random_poly(f, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(mulmod(a, b, m));
}

} // namespace

BENCHMARK(mul_prime)->RangeMultiplier(2)->Range(16, 8192);
BENCHMARK(mul_extension)->RangeMultiplier(2)->Range(16, 2048);
BENCHMARK(mul_gf2)->RangeMultiplier(2)->Range(32, 16384);
BENCHMARK(mulmod_prime)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
