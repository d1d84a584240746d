#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtpm/matrix.hpp"

namespace qtpm::scen {

enum class ProcessKind { rabi, fourier, custom_unitary };
enum class ChannelKind { minimal_energy, min_invasive };

// Parsed and validated scenario description. Energies are in units of the
// system gap e_s unless the system spectrum is given explicitly; grids keep
// their file order.
struct ScenarioConfig {
    // system
    std::size_t d_s = 2;
    std::vector<double> system_energies; // size d_s, ascending not required
    double e_s = 1.0;                    // energy unit (qubit gap)
    double beta_s = 0.0;

    // pointer: qubit-register form (n_qubits > 0) or explicit spectrum
    std::size_t pointer_qubits = 0;
    std::vector<double> pointer_energies;
    double e_p = 0.0;
    std::vector<double> ratios; // beta_p / beta_s grid

    // process
    ProcessKind kind = ProcessKind::rabi;
    std::vector<double> thetas; // rabi rotation angles
    double omega = 1.0;
    double t_f = 0.0;           // duration for kinds without an intrinsic one
    std::string unitary_file;

    // channels
    ChannelKind forward = ChannelKind::minimal_energy;
    ChannelKind backward = ChannelKind::min_invasive;

    // outputs
    std::string csv_path;
    std::vector<std::string> quantities;

    // monte carlo (optional section)
    bool has_mc = false;
    std::size_t mc_samples = 0;
    std::uint64_t mc_seed = 0;

    // canonical serialization of the accepted JSON; hashed into CSV metadata
    std::string canonical;
};

// Throws ConfigError with a line/column diagnostic on malformed JSON and on
// schema violations.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

std::uint64_t config_hash(const ScenarioConfig& config);

// Reads a unitary stored as JSON {"d": n, "entries": [[re, im], ...]}
// (row-major). Unitarity is checked by the consumer, not here.
la::ComplexMatrix load_unitary(const std::string& path);

const char* to_string(ProcessKind kind);
const char* to_string(ChannelKind kind);

} // namespace qtpm::scen
