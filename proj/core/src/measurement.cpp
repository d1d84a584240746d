#include "qtpm/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "qtpm/errors.hpp"
#include "qtpm/thermo.hpp"

namespace qtpm::meas {

namespace {

// energy ascending, index as tiebreak
std::vector<std::size_t> energy_ranking(const HermitianOperator& h) {
    std::vector<std::size_t> order(h.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return h.eigenvalues()[a] < h.eigenvalues()[b];
    });
    return order;
}

} // namespace

PointerModel::PointerModel(HermitianOperator h_p, double beta_p, std::size_t d_s)
    : PointerModel(std::move(h_p), beta_p, d_s, {}) {}

PointerModel::PointerModel(HermitianOperator h_p, double beta_p, std::size_t d_s,
                           std::vector<std::vector<std::size_t>> outcome_subspaces)
    : h_p_(std::move(h_p)), beta_p_(beta_p), d_s_(d_s) {
    if (d_s_ == 0 || h_p_.dim() % d_s_ != 0) {
        throw DimensionMismatch("PointerModel: pointer dimension " + std::to_string(h_p_.dim()) +
                                " is not a multiple of system dimension " + std::to_string(d_s_));
    }
    lambda_ = h_p_.dim() / d_s_;
    weights_ = thermo::gibbs(h_p_, beta_p_).populations();

    ranking_.resize(d_p());
    std::iota(ranking_.begin(), ranking_.end(), std::size_t{0});
    std::stable_sort(ranking_.begin(), ranking_.end(), [&](std::size_t a, std::size_t b) {
        if (weights_[a] != weights_[b]) return weights_[a] > weights_[b];
        return h_p_.eigenvalues()[a] < h_p_.eigenvalues()[b];
    });

    init_subspaces(std::move(outcome_subspaces), false);
}

void PointerModel::init_subspaces(std::vector<std::vector<std::size_t>> subspaces, bool) {
    if (subspaces.empty()) {
        const std::vector<std::size_t> asc = energy_ranking(h_p_);
        subspaces.resize(d_s_);
        for (std::size_t n = 0; n < d_s_; ++n) {
            subspaces[n].assign(asc.begin() + static_cast<std::ptrdiff_t>(n * lambda_),
                                asc.begin() + static_cast<std::ptrdiff_t>((n + 1) * lambda_));
        }
    }
    if (subspaces.size() != d_s_) {
        throw DimensionMismatch("PointerModel: expected " + std::to_string(d_s_) + " outcome subspaces");
    }
    std::vector<bool> seen(d_p(), false);
    for (auto& group : subspaces) {
        if (group.size() != lambda_) {
            throw DimensionMismatch("PointerModel: every outcome subspace must hold " +
                                    std::to_string(lambda_) + " eigenstates");
        }
        for (std::size_t idx : group) {
            if (idx >= d_p() || seen[idx]) {
                throw InvalidAssignment("PointerModel: outcome subspaces must partition the pointer eigenstates");
            }
            seen[idx] = true;
        }
        std::stable_sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
            return h_p_.eigenvalues()[a] < h_p_.eigenvalues()[b];
        });
    }
    subspaces_ = std::move(subspaces);
}

AssignmentMatrix::AssignmentMatrix(std::vector<std::vector<std::size_t>> entries)
    : entries_(std::move(entries)) {
    const std::size_t d = entries_.size();
    if (d == 0) throw DimensionMismatch("AssignmentMatrix: empty");
    for (const auto& row : entries_) {
        if (row.size() != d) throw DimensionMismatch("AssignmentMatrix: must be square");
    }
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<bool> seen(d, false);
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t g = entries_[i][j];
            if (g >= d || seen[g]) {
                throw InvalidAssignment("AssignmentMatrix: column " + std::to_string(j) +
                                        " is not a permutation");
            }
            seen[g] = true;
        }
        if (entries_[j][j] != 0) {
            throw InvalidAssignment("AssignmentMatrix: diagonal entry (" + std::to_string(j) +
                                    "," + std::to_string(j) + ") must be 0");
        }
    }
    latin_square_ = true;
    for (std::size_t i = 0; i < d && latin_square_; ++i) {
        std::vector<bool> seen(d, false);
        for (std::size_t j = 0; j < d; ++j) {
            if (seen[entries_[i][j]]) {
                latin_square_ = false;
                break;
            }
            seen[entries_[i][j]] = true;
        }
    }
}

AssignmentMatrix assignment_minimal_energy(std::size_t d_s) {
    if (d_s < 2) throw DimensionMismatch("assignment_minimal_energy: need d_s >= 2");
    std::vector<std::vector<std::size_t>> e(d_s, std::vector<std::size_t>(d_s, 0));
    for (std::size_t i = 0; i < d_s; ++i) {
        for (std::size_t j = 0; j < d_s; ++j) {
            if (i == j) e[i][j] = 0;
            else if (i < j) e[i][j] = i + 1;
            else e[i][j] = i;
        }
    }
    return AssignmentMatrix(std::move(e));
}

AssignmentMatrix assignment_min_invasive(std::size_t d_s) {
    if (d_s < 2) throw DimensionMismatch("assignment_min_invasive: need d_s >= 2");
    std::vector<std::vector<std::size_t>> e(d_s, std::vector<std::size_t>(d_s, 0));
    for (std::size_t i = 0; i < d_s; ++i) {
        for (std::size_t j = 0; j < d_s; ++j) {
            e[i][j] = (i + d_s - j) % d_s;
        }
    }
    return AssignmentMatrix(std::move(e));
}

MeasurementChannel::MeasurementChannel(PointerModel pointer, AssignmentMatrix assignment,
                                       std::vector<double> group_weights,
                                       std::vector<std::vector<double>> q)
    : pointer_(std::move(pointer)), assignment_(std::move(assignment)),
      group_weights_(std::move(group_weights)), q_(std::move(q)) {
    const std::size_t d = assignment_.dim();
    if (pointer_.d_s() != d || group_weights_.size() != d || q_.size() != d) {
        throw DimensionMismatch("MeasurementChannel: inconsistent dimensions");
    }
    for (const auto& row : q_) {
        if (row.size() != d) throw DimensionMismatch("MeasurementChannel: q must be square");
    }
}

JointPostState::JointPostState(PointerModel pointer, std::vector<double> diagonal)
    : pointer_(std::move(pointer)), diagonal_(std::move(diagonal)) {
    if (diagonal_.size() != pointer_.d_s() * pointer_.d_p()) {
        throw DimensionMismatch("JointPostState: diagonal length must be d_s * d_p");
    }
    double sum = 0.0;
    for (double w : diagonal_) {
        if (w < -1e-15) throw NotAState("JointPostState: negative weight " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw NotNormalized("JointPostState: weights sum to " + std::to_string(sum));
    }
}

DensityMatrix JointPostState::matrix() const {
    const std::size_t n = diagonal_.size();
    ComplexMatrix m = ComplexMatrix::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diagonal_[i];
    return m;
}

std::vector<double> JointPostState::block_weights(std::size_t i, std::size_t n) const {
    if (i >= d_s() || n >= d_s()) {
        throw OutcomeOutOfRange("JointPostState::block_weights: block (" + std::to_string(i) + "," +
                                std::to_string(n) + ") out of range");
    }
    std::vector<double> out;
    out.reserve(pointer_.lambda());
    for (std::size_t idx : pointer_.outcome_subspaces()[n]) {
        out.push_back(diagonal_[i * pointer_.d_p() + idx]);
    }
    return out;
}

double JointPostState::block_trace(std::size_t i, std::size_t n) const {
    const std::vector<double> w = block_weights(i, n);
    return std::accumulate(w.begin(), w.end(), 0.0);
}

std::vector<double> group_weights(const PointerModel& pointer) {
    std::vector<double> a(pointer.d_s(), 0.0);
    for (std::size_t k = 0; k < pointer.d_s(); ++k) {
        for (std::size_t r = 0; r < pointer.lambda(); ++r) {
            a[k] += pointer.thermal_weights()[pointer.occupation_ranking()[k * pointer.lambda() + r]];
        }
    }
    return a;
}

MeasurementChannel build_channel(const PointerModel& pointer, const AssignmentMatrix& assignment) {
    if (assignment.dim() != pointer.d_s()) {
        throw DimensionMismatch("build_channel: assignment dimension " + std::to_string(assignment.dim()) +
                                " does not match system dimension " + std::to_string(pointer.d_s()));
    }
    const std::size_t d = pointer.d_s();
    std::vector<double> a = group_weights(pointer);
    std::vector<std::vector<double>> q(d, std::vector<double>(d, 0.0));
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t n = 0; n < d; ++n) {
            q[l][n] = a[assignment(l, n)];
        }
    }
    return MeasurementChannel(pointer, assignment, std::move(a), std::move(q));
}

DensityMatrix conditional_state(const MeasurementChannel& channel, std::size_t n,
                                const HermitianOperator& basis) {
    if (n >= channel.d_s()) {
        throw OutcomeOutOfRange("conditional_state: outcome " + std::to_string(n) + " of " +
                                std::to_string(channel.d_s()));
    }
    require_measurement_basis(basis, channel.d_s());
    const std::size_t d = channel.d_s();
    const ComplexMatrix& b = basis.eigenbasis();
    ComplexMatrix scaled = b;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= channel.q(j, n);
    }
    return scaled * b.dagger();
}

JointPostState build_joint_post_state(const std::vector<double>& populations,
                                      const PointerModel& pointer, const AssignmentMatrix& assignment) {
    if (assignment.dim() != pointer.d_s() || populations.size() != pointer.d_s()) {
        throw DimensionMismatch("build_joint_post_state: dimensions do not match");
    }
    double sum = 0.0;
    for (double p : populations) {
        if (p < 0.0) throw NotAState("build_joint_post_state: negative population");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw NotNormalized("build_joint_post_state: populations sum to " + std::to_string(sum));
    }

    const std::size_t d_p = pointer.d_p();
    const std::size_t lambda = pointer.lambda();
    std::vector<double> diag(pointer.d_s() * d_p, 0.0);
    for (std::size_t i = 0; i < pointer.d_s(); ++i) {
        for (std::size_t n = 0; n < pointer.d_s(); ++n) {
            const std::size_t g = assignment(i, n);
            for (std::size_t r = 0; r < lambda; ++r) {
                const std::size_t idx = pointer.outcome_subspaces()[n][r];
                const double w = pointer.thermal_weights()[pointer.occupation_ranking()[g * lambda + r]];
                diag[i * d_p + idx] = populations[n] * w;
            }
        }
    }
    return JointPostState(pointer, std::move(diag));
}

ComplexMatrix build_measurement_unitary(const PointerModel& pointer, const AssignmentMatrix& assignment) {
    if (assignment.dim() != pointer.d_s()) {
        throw DimensionMismatch("build_measurement_unitary: assignment does not match pointer");
    }
    const std::size_t d_s = pointer.d_s();
    const std::size_t d_p = pointer.d_p();
    const std::size_t lambda = pointer.lambda();
    const std::size_t dim = d_s * d_p;
    const auto& sub = pointer.outcome_subspaces();
    const auto& rank = pointer.occupation_ranking();

    // sorter: within each system sector n, move the weight group named by
    // assignment(k, n) onto subspace k, heaviest to lowest energy
    ComplexMatrix sorter = ComplexMatrix::zeros(dim, dim);
    for (std::size_t n = 0; n < d_s; ++n) {
        for (std::size_t k = 0; k < d_s; ++k) {
            for (std::size_t r = 0; r < lambda; ++r) {
                const std::size_t src = rank[assignment(k, n) * lambda + r];
                const std::size_t dst = sub[k][r];
                sorter(n * d_p + dst, n * d_p + src) = 1.0;
            }
        }
    }

    // swap: system label n and subspace label k trade places
    ComplexMatrix swap = ComplexMatrix::zeros(dim, dim);
    for (std::size_t n = 0; n < d_s; ++n) {
        for (std::size_t k = 0; k < d_s; ++k) {
            for (std::size_t r = 0; r < lambda; ++r) {
                swap(k * d_p + sub[n][r], n * d_p + sub[k][r]) = 1.0;
            }
        }
    }
    return swap * sorter;
}

namespace {

double joint_energy(const std::vector<double>& diag, const HermitianOperator& h_s,
                    const HermitianOperator& h_p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < h_s.dim(); ++i) {
        for (std::size_t idx = 0; idx < h_p.dim(); ++idx) {
            acc += diag[i * h_p.dim() + idx] * (h_s.eigenvalues()[i] + h_p.eigenvalues()[idx]);
        }
    }
    return acc;
}

} // namespace

double measurement_energy_cost(const DensityMatrix& rho_s, const HermitianOperator& h_s,
                               const PointerModel& pointer, const AssignmentMatrix& assignment) {
    if (rho_s.rows() != pointer.d_s() || rho_s.cols() != pointer.d_s() || h_s.dim() != pointer.d_s()) {
        throw DimensionMismatch("measurement_energy_cost: system pieces disagree on dimension");
    }
    require_measurement_basis(h_s, pointer.d_s());
    la::validate_density(rho_s);

    const std::size_t d_p = pointer.d_p();
    const ComplexMatrix rho_eig = h_s.eigenbasis().dagger() * rho_s * h_s.eigenbasis();
    ComplexMatrix tau = ComplexMatrix::zeros(d_p, d_p);
    for (std::size_t i = 0; i < d_p; ++i) tau(i, i) = pointer.thermal_weights()[i];

    const ComplexMatrix before = la::kron(rho_eig, tau);
    const ComplexMatrix u = build_measurement_unitary(pointer, assignment);
    const ComplexMatrix after = u * before * u.dagger();

    double cost = 0.0;
    for (std::size_t i = 0; i < pointer.d_s(); ++i) {
        for (std::size_t idx = 0; idx < d_p; ++idx) {
            const std::size_t a = i * d_p + idx;
            const double e = h_s.eigenvalues()[i] + pointer.h_p().eigenvalues()[idx];
            cost += e * (after(a, a).real() - before(a, a).real());
        }
    }
    return cost;
}

double measurement_energy_cost_diagonal(const std::vector<double>& populations,
                                        const HermitianOperator& h_s, const PointerModel& pointer,
                                        const AssignmentMatrix& assignment) {
    require_measurement_basis(h_s, pointer.d_s());
    const JointPostState joint = build_joint_post_state(populations, pointer, assignment);
    double before = 0.0;
    for (std::size_t i = 0; i < pointer.d_s(); ++i) before += populations[i] * h_s.eigenvalues()[i];
    for (std::size_t idx = 0; idx < pointer.d_p(); ++idx) {
        before += pointer.thermal_weights()[idx] * pointer.h_p().eigenvalues()[idx];
    }
    return joint_energy(joint.diagonal(), h_s, pointer.h_p()) - before;
}

double correlation_value(const JointPostState& joint) {
    double acc = 0.0;
    for (std::size_t i = 0; i < joint.d_s(); ++i) acc += joint.block_trace(i, i);
    return acc;
}

void require_measurement_basis(const HermitianOperator& h, std::size_t expected_dim) {
    if (h.dim() != expected_dim) {
        throw BasisMismatch("measurement basis has dimension " + std::to_string(h.dim()) +
                            ", expected " + std::to_string(expected_dim));
    }
    if (!(h.min_gap() > 1e-9)) {
        throw DegenerateBasis("measurement basis has eigenvalue gap below 1e-9");
    }
}

} // namespace qtpm::meas
