#pragma once

#include <cstddef>
#include <vector>

#include "qtpm/linalg.hpp"
#include "qtpm/spectrum.hpp"

namespace qtpm::meas {

using la::ComplexMatrix;
using la::DensityMatrix;
using la::HermitianOperator;

// Thermal pointer used to read out a d_s-dimensional system. The pointer
// dimension must be an integer multiple lambda of d_s; outcome n is the
// projector onto `outcome_subspaces[n]`, a set of lambda pointer eigenstates.
// Default subspaces: contiguous blocks of the energy-ascending eigenstate
// ranking, so outcome n covers ranks [n*lambda, (n+1)*lambda).
class PointerModel {
public:
    PointerModel(HermitianOperator h_p, double beta_p, std::size_t d_s);
    PointerModel(HermitianOperator h_p, double beta_p, std::size_t d_s,
                 std::vector<std::vector<std::size_t>> outcome_subspaces);

    const HermitianOperator& h_p() const { return h_p_; }
    double beta_p() const { return beta_p_; }
    std::size_t d_s() const { return d_s_; }
    std::size_t d_p() const { return h_p_.dim(); }
    std::size_t lambda() const { return lambda_; }

    // thermal occupation of pointer eigenstate i (operator order)
    const std::vector<double>& thermal_weights() const { return weights_; }
    // eigenstate indices of each outcome projector, energy ascending
    const std::vector<std::vector<std::size_t>>& outcome_subspaces() const { return subspaces_; }
    // all eigenstate indices ranked by occupation descending
    // (ties by energy ascending, then index)
    const std::vector<std::size_t>& occupation_ranking() const { return ranking_; }

private:
    void init_subspaces(std::vector<std::vector<std::size_t>> subspaces, bool defaulted);

    HermitianOperator h_p_;
    double beta_p_;
    std::size_t d_s_;
    std::size_t lambda_;
    std::vector<double> weights_;
    std::vector<std::size_t> ranking_;
    std::vector<std::vector<std::size_t>> subspaces_;
};

// Which thermal-weight group lands in which block of the post-measurement
// state: entry (i, j) is the group index for system level i given outcome j.
// Every column must be a permutation with a zero diagonal; rows that are also
// permutations make the channel doubly stochastic (latin_square()).
class AssignmentMatrix {
public:
    explicit AssignmentMatrix(std::vector<std::vector<std::size_t>> entries);

    std::size_t dim() const { return entries_.size(); }
    std::size_t operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    const std::vector<std::vector<std::size_t>>& entries() const { return entries_; }
    bool latin_square() const { return latin_square_; }

private:
    std::vector<std::vector<std::size_t>> entries_;
    bool latin_square_ = false;
};

// Fills off-diagonal slots of each column with the heaviest remaining groups
// at the lowest system levels. Cheapest unbiased choice for energy-ordered
// system levels.
AssignmentMatrix assignment_minimal_energy(std::size_t d_s);

// Cyclic (i - j) mod d_s. Latin square, so the channel is doubly stochastic
// and disturbs a thermal system state as little as possible.
AssignmentMatrix assignment_min_invasive(std::size_t d_s);

// Classical readout channel of a pointer + assignment: q(l, n) is the
// post-measurement weight on system level l given outcome n.
class MeasurementChannel {
public:
    MeasurementChannel(PointerModel pointer, AssignmentMatrix assignment,
                       std::vector<double> group_weights, std::vector<std::vector<double>> q);

    const PointerModel& pointer() const { return pointer_; }
    const AssignmentMatrix& assignment() const { return assignment_; }
    std::size_t d_s() const { return assignment_.dim(); }
    // thermal weight mass of each group, descending; front() is c_max
    const std::vector<double>& group_weights() const { return group_weights_; }
    const std::vector<std::vector<double>>& q() const { return q_; }
    double q(std::size_t l, std::size_t n) const { return q_[l][n]; }
    double c_max() const { return group_weights_[0]; }

private:
    PointerModel pointer_;
    AssignmentMatrix assignment_;
    std::vector<double> group_weights_;
    std::vector<std::vector<double>> q_;
};

// Post-measurement system-pointer state, diagonal in the product of the
// system measurement basis and the pointer eigenbasis. Index order:
// system level i times d_p plus pointer eigenstate index.
class JointPostState {
public:
    JointPostState(PointerModel pointer, std::vector<double> diagonal);

    const PointerModel& pointer() const { return pointer_; }
    std::size_t d_s() const { return pointer_.d_s(); }
    const std::vector<double>& diagonal() const { return diagonal_; }
    DensityMatrix matrix() const;

    // weights of the (system level i, outcome n) block, ordered like
    // outcome_subspaces()[n]
    std::vector<double> block_weights(std::size_t i, std::size_t n) const;
    double block_trace(std::size_t i, std::size_t n) const;

private:
    PointerModel pointer_;
    std::vector<double> diagonal_;
};

// Thermal pointer eigenvalues sorted descending and summed in runs of
// lambda. Front group is the best achievable readout correlation.
std::vector<double> group_weights(const PointerModel& pointer);

MeasurementChannel build_channel(const PointerModel& pointer, const AssignmentMatrix& assignment);

// rho_n = sum_l q(l, n) |E_l><E_l| in the given system basis.
DensityMatrix conditional_state(const MeasurementChannel& channel, std::size_t n,
                                const HermitianOperator& basis);

// Post-measurement joint state for a system diagonal in the measurement
// basis with the given populations. Block (i, n) carries populations[n]
// times group assignment(i, n), heaviest weight at the lowest-energy state
// of the outcome subspace.
JointPostState build_joint_post_state(const std::vector<double>& populations,
                                      const PointerModel& pointer, const AssignmentMatrix& assignment);

// Explicit interaction unitary: a permutation of the joint eigenstate basis
// that first sorts thermal weight into outcome subspaces per the assignment,
// then swaps system labels with outcome subspaces. Applied to any system
// state times the thermal pointer it reproduces build_joint_post_state on
// the diagonal and is unbiased for arbitrary (non-diagonal) input.
ComplexMatrix build_measurement_unitary(const PointerModel& pointer, const AssignmentMatrix& assignment);

// Energy bill of one measurement: Tr[(H_S + H_P)(after - before)] through
// the explicit unitary.
double measurement_energy_cost(const DensityMatrix& rho_s, const HermitianOperator& h_s,
                               const PointerModel& pointer, const AssignmentMatrix& assignment);

// Same bill from the block weights alone; only valid for a system diagonal
// in the measurement basis. Cross-check partner of measurement_energy_cost.
double measurement_energy_cost_diagonal(const std::vector<double>& populations,
                                        const HermitianOperator& h_s, const PointerModel& pointer,
                                        const AssignmentMatrix& assignment);

// Probability that the pointer outcome names the actual system level:
// sum of the diagonal block traces.
double correlation_value(const JointPostState& joint);

// Guards for operations that interpret a Hamiltonian as a measurement
// basis. Throws BasisMismatch / DegenerateBasis.
void require_measurement_basis(const HermitianOperator& h, std::size_t expected_dim);

} // namespace qtpm::meas
