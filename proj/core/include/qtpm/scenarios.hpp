#pragma once

#include <cstdint>

#include "qtpm/config.hpp"
#include "qtpm/csv.hpp"
#include "qtpm/fluct.hpp"

namespace qtpm::scen {

using la::ComplexMatrix;
using la::HermitianOperator;
using meas::MeasurementChannel;
using meas::PointerModel;
using tpm::Process;

// F(m, n) = e^{2 pi i m n / d} / sqrt(d); the flattest transition profile,
// every |<m|F|n>|^2 = 1/d.
ComplexMatrix fourier_matrix(std::size_t d);

// Qubit rotation about y by theta: u = [[cos, -sin], [sin, cos]] of theta/2,
// h0 = hf = diag(-e_s/2, +e_s/2). Carries the time family t -> rotation by
// omega*t, duration theta/omega.
Process rabi_process(double e_s, double theta, double omega);

// n identical qubits with gap e_p; basis state b has energy
// e_p * (popcount(b) - n/2).
HermitianOperator qubit_register(std::size_t n_qubits, double e_p);

// Builders for one grid point of a config.
PointerModel pointer_for(const ScenarioConfig& config, double beta_p);
MeasurementChannel channel_for(const ScenarioConfig& config, ChannelKind kind, double beta_p);
Process process_for(const ScenarioConfig& config, double theta);

// Canonical configurations of the bundled figure pipelines.
ScenarioConfig fig2_config();
ScenarioConfig figA2_config();
ScenarioConfig figA3_config();

// Work estimate sweep over theta x pointer-temperature ratio for the driven
// qubit read out by a 3-qubit pointer. Columns theta, ratio, w_ideal,
// w_nonid, deviation; self-checks the known exact points before returning.
io::CsvTable reproduce_fig2(const ScenarioConfig& config, unsigned threads = 1);

// Same sweep, non-ideal estimate only (theta, ratio, w_nonid).
io::CsvTable reproduce_figA2(const ScenarioConfig& config, unsigned threads = 1);

// Measurement energy bill of the full two-measurement protocol against the
// pointer pre-cooling bill, swept over the temperature ratio at two angles.
// Columns ratio, theta, de_tpm, de_cool, energies in units of e_s.
io::CsvTable reproduce_figA3(const ScenarioConfig& config, unsigned threads = 1);

// Generic grid evaluation of the configured quantities; ratio outer loop,
// theta inner, columns theta, ratio, then the quantity list.
io::CsvTable run_scenario(const ScenarioConfig& config, unsigned threads = 1);

struct McEstimate {
    double mean_w = 0.0;
    double mean_w_stderr = 0.0;
    double jarzynski = 0.0;
    double jarzynski_stderr = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// Draws outcome pairs by inverse CDF over the analytic joint table with the
// counter generator, so estimates are bit-identical for a fixed seed.
// channelf is checked for shape but the sampled table only involves the
// first readout.
McEstimate monte_carlo_tpm(const Process& process, double beta, const MeasurementChannel& channel0,
                           const MeasurementChannel& channelf, std::size_t samples,
                           std::uint64_t seed);

int run_cli(int argc, const char* const* argv);

} // namespace qtpm::scen
