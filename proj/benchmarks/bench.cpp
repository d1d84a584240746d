#include <benchmark/benchmark.h>

#include "qtpm/rng.hpp"
#include "qtpm/scenarios.hpp"
#include "qtpm/thermo.hpp"

namespace {

using qtpm::la::complex;
using qtpm::la::ComplexMatrix;

ComplexMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
    qtpm::rng::Stream s(seed);
    ComplexMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = s.range(-1.0, 1.0);
        for (std::size_t j = i + 1; j < d; ++j) {
            const double re = s.range(-1.0, 1.0);
            const double im = s.range(-1.0, 1.0);
            a(i, j) = complex(re, im);
            a(j, i) = complex(re, -im);
        }
    }
    return a;
}

void bm_eigensolver(benchmark::State& state) {
    const auto a = random_hermitian(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(qtpm::la::hermitian_spectrum(a));
}
BENCHMARK(bm_eigensolver)->Arg(4)->Arg(8)->Arg(16);

void bm_channel_build(benchmark::State& state) {
    const auto h_p = qtpm::scen::qubit_register(static_cast<std::size_t>(state.range(0)), 0.1);
    const auto assignment = qtpm::meas::assignment_minimal_energy(2);
    for (auto _ : state) {
        qtpm::meas::PointerModel pointer(h_p, 10.0, 2);
        benchmark::DoNotOptimize(qtpm::meas::build_channel(pointer, assignment));
    }
}
BENCHMARK(bm_channel_build)->Arg(3)->Arg(6)->Arg(9);

void bm_sweep_point(benchmark::State& state) {
    const auto config = qtpm::scen::fig2_config();
    const auto channel = qtpm::scen::channel_for(config, config.forward, config.beta_s);
    for (auto _ : state) {
        const auto process = qtpm::scen::rabi_process(config.e_s, 2.2, 1.0);
        const auto joint = qtpm::tpm::nonideal_joint(process, config.beta_s, channel);
        benchmark::DoNotOptimize(qtpm::tpm::mean_work(
            qtpm::tpm::work_distribution(joint, process.h0(), process.hf())));
    }
}
BENCHMARK(bm_sweep_point);

void bm_measurement_unitary(benchmark::State& state) {
    const auto config = qtpm::scen::fig2_config();
    const auto pointer = qtpm::scen::pointer_for(config, config.beta_s);
    const auto assignment = qtpm::meas::assignment_minimal_energy(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(qtpm::meas::build_measurement_unitary(pointer, assignment));
}
BENCHMARK(bm_measurement_unitary);

void bm_monte_carlo(benchmark::State& state) {
    const auto config = qtpm::scen::fig2_config();
    const auto process = qtpm::scen::rabi_process(config.e_s, 3.1, 1.0);
    const auto channel = qtpm::scen::channel_for(config, config.forward, config.beta_s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qtpm::scen::monte_carlo_tpm(
            process, config.beta_s, channel, channel,
            static_cast<std::size_t>(state.range(0)), 3));
    }
}
BENCHMARK(bm_monte_carlo)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
