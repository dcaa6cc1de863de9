// Throughput probes for the hot paths: row reduction, the kernel
// construction, lattice enumeration, and Jordan form computation.
#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "invsub/exact.hpp"
#include "invsub/halmos.hpp"
#include "invsub/jordan.hpp"
#include "invsub/lattice.hpp"
#include "invsub/subspace.hpp"

namespace {

using invsub::exact::Matrix;
using invsub::exact::Scalar;
using invsub::jordan::JordanStructure;

JordanStructure nilpotent_structure(std::initializer_list<std::size_t> sizes) {
    JordanStructure s;
    for (std::size_t size : sizes) {
        invsub::jordan::JordanBlock block;
        block.eigenvalue = Scalar(0);
        block.size = size;
        s.blocks.push_back(block);
    }
    return s;
}

Matrix dense_test_matrix(std::size_t n) {
    Matrix a(n, n);
    std::uint64_t state = 0x2545F4914F6CDD1DULL;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            a.at(i, j) = Scalar(static_cast<int>((state >> 33) % 19) - 9);
        }
    return a;
}

void bm_rref(benchmark::State& state) {
    const Matrix a = dense_test_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto result = invsub::exact::rref_full(a);
        benchmark::DoNotOptimize(result.rank);
    }
}
BENCHMARK(bm_rref)->Arg(8)->Arg(16)->Arg(24);

void bm_construct(benchmark::State& state) {
    const auto s = nilpotent_structure({3, 2, 1});
    const Matrix gen = invsub::exact::matrix_from_text(
        "[[\"2\"],[\"1\"],[\"0\"],[\"0\"],[\"0\"],[\"1\"]]");
    const auto chain = invsub::subspace::chain_from_generator(s, Scalar(0), gen);
    for (auto _ : state) {
        auto c = invsub::halmos::construct(s, {chain});
        benchmark::DoNotOptimize(c.m);
    }
}
BENCHMARK(bm_construct);

void bm_lattice(benchmark::State& state) {
    const auto s = nilpotent_structure({3, 2});
    for (auto _ : state) {
        auto l = invsub::lattice::enumerate_lattice(s);
        benchmark::DoNotOptimize(l.nodes);
    }
}
BENCHMARK(bm_lattice);

void bm_jordanize(benchmark::State& state) {
    const auto s = nilpotent_structure({3, 2, 1});
    Matrix q(6, 6);
    std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
    do {
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                seed = seed * 2862933555777941757ULL + 3037000493ULL;
                q.at(i, j) = Scalar(static_cast<int>((seed >> 40) % 5) - 2);
            }
    } while (invsub::exact::rank(q) != 6);
    const Matrix a =
        q * invsub::jordan::jordan_matrix(s) * invsub::exact::inverse(q);
    for (auto _ : state) {
        auto result = invsub::jordan::jordanize(a);
        benchmark::DoNotOptimize(result.q);
    }
}
BENCHMARK(bm_jordanize);

} // namespace

BENCHMARK_MAIN();
