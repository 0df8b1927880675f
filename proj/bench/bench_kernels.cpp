#include <random>

#include <benchmark/benchmark.h>

#include "qmetro/kernels.hpp"
#include "qmetro/probes.hpp"
#include "qmetro/fisher.hpp"

using namespace qmetro;

namespace {

ComplexMatrix hermitian(std::size_t dim) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = n(rng);
            b(i, j) = cplx(re, n(rng));
        }
    }
    return b + b.adjoint();
}

void BM_matmul(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::matmul(a, a));
    }
}

void BM_matmul_serial(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::matmul(a, a));
    }
}

void BM_jacobi(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::jacobi_eig(a, 1e-12, 100));
    }
}

void BM_jacobi_serial(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::jacobi_eig(a, 1e-12, 100));
    }
}

void BM_contract(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    const std::array<cplx, 2> v{cplx(0.6), cplx(0, 0.8)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::contract_qubit(a, 0, v));
    }
}

void BM_contract_serial(benchmark::State &state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    const std::array<cplx, 2> v{cplx(0.6), cplx(0, 0.8)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::contract_qubit(a, 0, v));
    }
}

void BM_qfi_werner(benchmark::State &state) {
    const auto f = phase_family(werner({static_cast<std::size_t>(state.range(0)), 0.5}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi(f, 0.7));
    }
}

} // namespace

BENCHMARK(BM_matmul)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_matmul_serial)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_jacobi)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_jacobi_serial)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_contract)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_contract_serial)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_qfi_werner)->DenseRange(2, 7);

BENCHMARK_MAIN();
