#pragma once

#include <functional>
#include <vector>

#include "qtpm/linalg.hpp"
#include "qtpm/measurement.hpp"
#include "qtpm/spectrum.hpp"

namespace qtpm::tpm {

using la::ComplexMatrix;
using la::DensityMatrix;
using la::HermitianOperator;
using meas::MeasurementChannel;

// A driven protocol: start Hamiltonian, end Hamiltonian, and the propagator
// u over the full duration. An optional time-resolved family t -> U(t, 0)
// enables intermediate-time diagnostics; family(0) must be the identity and
// family(t_f) must reproduce u.
class Process {
public:
    Process(HermitianOperator h0, HermitianOperator hf, ComplexMatrix u);
    Process(HermitianOperator h0, HermitianOperator hf, ComplexMatrix u,
            std::function<ComplexMatrix(double)> family, double t_f);

    const HermitianOperator& h0() const { return h0_; }
    const HermitianOperator& hf() const { return hf_; }
    const ComplexMatrix& u() const { return u_; }
    std::size_t dim() const { return h0_.dim(); }
    bool has_family() const { return static_cast<bool>(family_); }
    double t_f() const { return t_f_; }
    ComplexMatrix family(double t) const;

private:
    HermitianOperator h0_;
    HermitianOperator hf_;
    ComplexMatrix u_;
    std::function<ComplexMatrix(double)> family_;
    double t_f_ = 0.0;
};

enum class JointKind { ideal, nonideal, backward };

// p(n, m) over (first outcome n, second outcome m). Entries may carry
// -1e-14 of roundoff but must total 1.
class JointDistribution {
public:
    JointDistribution(std::vector<std::vector<double>> p, JointKind kind);

    std::size_t dim() const { return p_.size(); }
    double operator()(std::size_t n, std::size_t m) const { return p_[n][m]; }
    const std::vector<std::vector<double>>& p() const { return p_; }
    JointKind kind() const { return kind_; }

private:
    std::vector<std::vector<double>> p_;
    JointKind kind_;
};

struct WorkAtom {
    double w;
    double prob;
};

// Discrete work estimate: atoms strictly increasing in w, probabilities
// summing to 1.
class WorkDistribution {
public:
    explicit WorkDistribution(std::vector<WorkAtom> atoms);
    const std::vector<WorkAtom>& atoms() const { return atoms_; }

private:
    std::vector<WorkAtom> atoms_;
};

struct WorkDecomposition {
    double cmax_term;   // readout fidelity times the true mean work
    double correction;  // weight that leaked to wrong initial levels
};

// t(n, m) = |<final m| u |initial n>|^2; doubly stochastic.
std::vector<std::vector<double>> transition_matrix(const Process& process);

// Both-measurements-perfect reference: p(n, m) = p_n t(n, m).
JointDistribution ideal_joint(const Process& process, double beta);

// First measurement replaced by a pointer readout: the channel mixes which
// level actually evolves, p(n, m) = p_n sum_l q(l|n) t(l, m).
JointDistribution nonideal_joint(const Process& process, double beta, const MeasurementChannel& channel0);

// Energy differences between outcome pairs, aggregated over coincidences
// within 1e-9 of the largest level magnitude.
WorkDistribution work_distribution(const JointDistribution& joint, const HermitianOperator& h0,
                                   const HermitianOperator& hf);

double mean_work(const WorkDistribution& dist);

// Splits the non-ideal mean work into c_max * <W>_ideal plus the wrong-level
// leakage term; the two add up to mean_work(nonideal_joint(...)).
WorkDecomposition work_decomposition(const Process& process, double beta,
                                     const MeasurementChannel& channel0);

// (1 - c_max) times the spectral norm of the final Hamiltonian; upper bound
// on |<W>_nonideal - <W>_ideal|.
double deviation_bound(const Process& process, const MeasurementChannel& channel0);

// Mean energy change when both TPM measurements are non-ideal. Equals
// Tr(Hf rho_final) - Tr(H0 tau0) for the averaged post-measurement state.
double energy_change_nonideal(const Process& process, double beta, const MeasurementChannel& channel0,
                              const MeasurementChannel& channelf);

// Time-reversed protocol: Hamiltonians swapped, u conjugated-and-inverted
// (plain transpose for the resulting matrix), family reversed accordingly.
// Input Hamiltonians must be real matrices in the computational basis.
Process backward_process(const Process& process);

// Joint distribution of the reversed protocol with a non-ideal first
// (final-Hamiltonian) measurement: P(n, m) = sum_k t(n, k) q_f(k|m) p_m^f.
// Index meaning matches the forward joint (n on start levels, m on end
// levels).
JointDistribution backward_joint(const Process& process, double beta, const MeasurementChannel& channelf);

} // namespace qtpm::tpm
