#include "qtpm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qtpm/errors.hpp"

namespace qtpm::thermo {

GibbsState::GibbsState(HermitianOperator hamiltonian, double beta, std::vector<double> populations, double log_z)
    : hamiltonian_(std::move(hamiltonian)), beta_(beta), populations_(std::move(populations)), log_z_(log_z) {
    if (populations_.size() != hamiltonian_.dim()) {
        throw DimensionMismatch("GibbsState: population count must match Hamiltonian dimension");
    }
    double sum = 0.0;
    for (double p : populations_) {
        if (!(p >= 0.0)) throw NotAState("GibbsState: negative population");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-13) {
        throw NotAState("GibbsState: populations sum to " + std::to_string(sum));
    }
}

double GibbsState::partition_function() const {
    return std::exp(log_z_);
}

DensityMatrix GibbsState::matrix() const {
    const std::size_t n = hamiltonian_.dim();
    const ComplexMatrix& b = hamiltonian_.eigenbasis();
    ComplexMatrix scaled = b;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= populations_[j];
    }
    return scaled * b.dagger();
}

double GibbsState::mean_energy() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < populations_.size(); ++i) {
        acc += populations_[i] * hamiltonian_.eigenvalues()[i];
    }
    return acc;
}

GibbsState gibbs(const HermitianOperator& h, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw InvalidBeta("gibbs: beta must be finite and nonnegative, got " + std::to_string(beta));
    }
    const std::size_t n = h.dim();
    const double e_min = *std::min_element(h.eigenvalues().begin(), h.eigenvalues().end());

    std::vector<double> w(n);
    double z_shifted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(-beta * (h.eigenvalues()[i] - e_min));
        z_shifted += w[i];
    }
    for (double& p : w) p /= z_shifted;
    const double log_z = std::log(z_shifted) - beta * e_min;
    return GibbsState(h, beta, std::move(w), log_z);
}

double free_energy_difference(const HermitianOperator& h0, const HermitianOperator& hf, double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw InvalidBeta("free_energy_difference: beta must be finite and positive");
    }
    const double log_z0 = gibbs(h0, beta).log_partition_function();
    const double log_zf = gibbs(hf, beta).log_partition_function();
    return (log_z0 - log_zf) / beta;
}

double cooling_cost(std::size_t n_qubits, double e_p, double beta_s, double beta_p) {
    if (!std::isfinite(beta_s) || beta_s <= 0.0 || !std::isfinite(beta_p)) {
        throw InvalidBeta("cooling_cost: temperatures must be finite with beta_s > 0");
    }
    if (beta_p < beta_s) {
        throw InvalidTemperatureOrder("cooling_cost: pointer must be at least as cold as the system");
    }
    const double e_f = e_p * beta_p / beta_s;
    const double occ_f = 1.0 / (std::exp(-beta_s * e_f) + 1.0);
    const double occ_p = 1.0 / (std::exp(-beta_s * e_p) + 1.0);
    return static_cast<double>(n_qubits) * (e_f - 1.0) * (occ_f - occ_p);
}

} // namespace qtpm::thermo
