#pragma once

#include <vector>

#include "qtpm/linalg.hpp"
#include "qtpm/spectrum.hpp"

namespace qtpm::thermo {

using la::ComplexMatrix;
using la::DensityMatrix;
using la::HermitianOperator;

// Thermal state exp(-beta H)/Z. log Z is the primary stored quantity so that
// beta*E of order 10^3 cannot overflow; partition_function() exponentiates on
// demand.
class GibbsState {
public:
    GibbsState(HermitianOperator hamiltonian, double beta, std::vector<double> populations, double log_z);

    const HermitianOperator& hamiltonian() const { return hamiltonian_; }
    double beta() const { return beta_; }
    // population of eigenstate i of the Hamiltonian, ordered as the operator
    const std::vector<double>& populations() const { return populations_; }
    double log_partition_function() const { return log_z_; }
    double partition_function() const;
    DensityMatrix matrix() const;
    double mean_energy() const;

private:
    HermitianOperator hamiltonian_;
    double beta_;
    std::vector<double> populations_;
    double log_z_;
};

// Populations e^{-beta E_i}/Z with the spectrum shifted by its minimum before
// exponentiating. beta = 0 gives I/d.
GibbsState gibbs(const HermitianOperator& h, double beta);

// (1/beta) log(Z0/Zf), computed from log partition functions.
double free_energy_difference(const HermitianOperator& h0, const HermitianOperator& hf, double beta);

// Energy to pre-cool an n-qubit pointer from beta_s to beta_p, evaluated
// verbatim from the closed form
//   N (E_F - 1) (1/(e^{-beta_s E_F}+1) - 1/(e^{-beta_s E_P}+1)),
// E_F = E_P beta_p/beta_s. The "(E_F - 1)" term only makes sense with
// energies expressed in units of the system gap, so e_p must be passed in
// those units and the result comes back in them too.
double cooling_cost(std::size_t n_qubits, double e_p, double beta_s, double beta_p);

} // namespace qtpm::thermo
