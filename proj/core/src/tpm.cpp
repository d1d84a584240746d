#include "qtpm/tpm.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qtpm/errors.hpp"
#include "qtpm/thermo.hpp"

namespace qtpm::tpm {

namespace {

void check_unitary(const ComplexMatrix& u, const char* who) {
    const double defect = u.unitarity_defect();
    if (defect > 1e-12) {
        throw NotUnitary(std::string(who) + ": unitarity defect " + std::to_string(defect));
    }
}

std::vector<double> thermal_populations(const HermitianOperator& h, double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw InvalidBeta("joint distribution requires finite beta > 0");
    }
    return thermo::gibbs(h, beta).populations();
}

void check_channel_dim(const MeasurementChannel& channel, const HermitianOperator& h, const char* who) {
    if (channel.d_s() != h.dim()) {
        throw BasisMismatch(std::string(who) + ": channel reads a " + std::to_string(channel.d_s()) +
                            "-level system, Hamiltonian has " + std::to_string(h.dim()));
    }
}

} // namespace

Process::Process(HermitianOperator h0, HermitianOperator hf, ComplexMatrix u)
    : h0_(std::move(h0)), hf_(std::move(hf)), u_(std::move(u)) {
    if (h0_.dim() != hf_.dim() || u_.rows() != h0_.dim() || u_.cols() != h0_.dim()) {
        throw DimensionMismatch("Process: Hamiltonians and propagator must share one dimension");
    }
    check_unitary(u_, "Process");
    meas::require_measurement_basis(h0_, h0_.dim());
    meas::require_measurement_basis(hf_, hf_.dim());
}

Process::Process(HermitianOperator h0, HermitianOperator hf, ComplexMatrix u,
                 std::function<ComplexMatrix(double)> family, double t_f)
    : Process(std::move(h0), std::move(hf), std::move(u)) {
    if (!family) throw MissingTimeFamily("Process: empty time family");
    // t_f = 0 is legal (a no-op drive); family then only answers at t = 0
    if (!(t_f >= 0.0) || !std::isfinite(t_f)) {
        throw CheckFailed("Process: family duration must be nonnegative, got " + std::to_string(t_f));
    }
    family_ = std::move(family);
    t_f_ = t_f;
    const ComplexMatrix at0 = family_(0.0);
    if (at0.max_abs_diff(ComplexMatrix::identity(dim())) > 1e-12) {
        throw CheckFailed("Process: family(0) is not the identity");
    }
    if (family_(t_f_).max_abs_diff(u_) > 1e-12) {
        throw CheckFailed("Process: family(t_f) does not reproduce the propagator");
    }
}

ComplexMatrix Process::family(double t) const {
    if (!family_) throw MissingTimeFamily("Process: no time family attached");
    if (t < 0.0 || t > t_f_ + 1e-12) {
        throw CheckFailed("Process: time " + std::to_string(t) + " outside [0, t_f]");
    }
    return family_(t);
}

JointDistribution::JointDistribution(std::vector<std::vector<double>> p, JointKind kind)
    : p_(std::move(p)), kind_(kind) {
    const std::size_t d = p_.size();
    double total = 0.0;
    for (const auto& row : p_) {
        if (row.size() != d) throw DimensionMismatch("JointDistribution: table must be square");
        for (double v : row) {
            if (v < -1e-14) throw NotAState("JointDistribution: entry " + std::to_string(v));
            total += v;
        }
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw NotNormalized("JointDistribution: entries sum to " + std::to_string(total));
    }
}

WorkDistribution::WorkDistribution(std::vector<WorkAtom> atoms) : atoms_(std::move(atoms)) {
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i > 0 && !(atoms_[i].w > atoms_[i - 1].w)) {
            throw CheckFailed("WorkDistribution: atoms must be strictly increasing in w");
        }
        total += atoms_[i].prob;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw NotNormalized("WorkDistribution: probabilities sum to " + std::to_string(total));
    }
}

std::vector<std::vector<double>> transition_matrix(const Process& process) {
    const std::size_t d = process.dim();
    const ComplexMatrix x = process.hf().eigenbasis().dagger() * process.u() * process.h0().eigenbasis();
    std::vector<std::vector<double>> t(d, std::vector<double>(d, 0.0));
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            t[n][m] = std::norm(x(m, n));
        }
    }
    return t;
}

JointDistribution ideal_joint(const Process& process, double beta) {
    const std::vector<double> p0 = thermal_populations(process.h0(), beta);
    const auto t = transition_matrix(process);
    const std::size_t d = process.dim();
    std::vector<std::vector<double>> p(d, std::vector<double>(d, 0.0));
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) p[n][m] = p0[n] * t[n][m];
    }
    return JointDistribution(std::move(p), JointKind::ideal);
}

JointDistribution nonideal_joint(const Process& process, double beta, const MeasurementChannel& channel0) {
    check_channel_dim(channel0, process.h0(), "nonideal_joint");
    const std::vector<double> p0 = thermal_populations(process.h0(), beta);
    const auto t = transition_matrix(process);
    const std::size_t d = process.dim();
    std::vector<std::vector<double>> p(d, std::vector<double>(d, 0.0));
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            double cond = 0.0;
            for (std::size_t l = 0; l < d; ++l) cond += channel0.q(l, n) * t[l][m];
            p[n][m] = p0[n] * cond;
        }
    }
    return JointDistribution(std::move(p), JointKind::nonideal);
}

WorkDistribution work_distribution(const JointDistribution& joint, const HermitianOperator& h0,
                                   const HermitianOperator& hf) {
    const std::size_t d = joint.dim();
    if (h0.dim() != d || hf.dim() != d) {
        throw DimensionMismatch("work_distribution: Hamiltonians do not match the joint table");
    }
    double e_scale = 0.0;
    for (double e : h0.eigenvalues()) e_scale = std::max(e_scale, std::abs(e));
    for (double e : hf.eigenvalues()) e_scale = std::max(e_scale, std::abs(e));
    const double tol = 1e-9 * std::max(1e-300, e_scale);

    std::vector<WorkAtom> raw;
    raw.reserve(d * d);
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            raw.push_back({hf.eigenvalues()[m] - h0.eigenvalues()[n], joint(n, m)});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const WorkAtom& a, const WorkAtom& b) { return a.w < b.w; });

    std::vector<WorkAtom> merged;
    for (const WorkAtom& atom : raw) {
        if (!merged.empty() && atom.w - merged.back().w <= tol) {
            WorkAtom& last = merged.back();
            const double total = last.prob + atom.prob;
            // probability-weighted position keeps the merged atom stable
            if (total > 0.0) last.w = (last.w * last.prob + atom.w * atom.prob) / total;
            last.prob = total;
        } else {
            merged.push_back(atom);
        }
    }
    // pairs the dynamics cannot reach carry no probability and no information
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const WorkAtom& a) { return a.prob == 0.0; }),
                 merged.end());
    return WorkDistribution(std::move(merged));
}

double mean_work(const WorkDistribution& dist) {
    double acc = 0.0;
    for (const WorkAtom& a : dist.atoms()) acc += a.w * a.prob;
    return acc;
}

WorkDecomposition work_decomposition(const Process& process, double beta,
                                     const MeasurementChannel& channel0) {
    check_channel_dim(channel0, process.h0(), "work_decomposition");
    const std::vector<double> p0 = thermal_populations(process.h0(), beta);
    const auto t = transition_matrix(process);
    const std::size_t d = process.dim();

    double ideal = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            ideal += p0[n] * t[n][m] * (process.hf().eigenvalues()[m] - process.h0().eigenvalues()[n]);
        }
    }

    double correction = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t l = 0; l < d; ++l) {
            if (l == n) continue;
            for (std::size_t m = 0; m < d; ++m) {
                correction += t[l][m] * channel0.q(l, n) * p0[n] *
                              (process.hf().eigenvalues()[m] - process.h0().eigenvalues()[n]);
            }
        }
    }
    return {channel0.c_max() * ideal, correction};
}

double deviation_bound(const Process& process, const MeasurementChannel& channel0) {
    check_channel_dim(channel0, process.h0(), "deviation_bound");
    double spectral = 0.0;
    for (double e : process.hf().eigenvalues()) spectral = std::max(spectral, std::abs(e));
    return (1.0 - channel0.c_max()) * spectral;
}

double energy_change_nonideal(const Process& process, double beta, const MeasurementChannel& channel0,
                              const MeasurementChannel& channelf) {
    check_channel_dim(channel0, process.h0(), "energy_change_nonideal");
    check_channel_dim(channelf, process.hf(), "energy_change_nonideal");
    const std::vector<double> p0 = thermal_populations(process.h0(), beta);
    const auto t = transition_matrix(process);
    const std::size_t d = process.dim();

    double acc = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            double cond = 0.0; // second-readout statistics given first outcome n
            for (std::size_t l = 0; l < d; ++l) cond += channel0.q(l, n) * t[l][m];
            for (std::size_t k = 0; k < d; ++k) {
                acc += channelf.q(k, m) * cond * p0[n] *
                       (process.hf().eigenvalues()[k] - process.h0().eigenvalues()[n]);
            }
        }
    }
    return acc;
}

namespace {

void check_time_reversal(const HermitianOperator& h, const char* who) {
    const ComplexMatrix m = h.matrix();
    if (m.max_abs_diff(m.conjugate()) > 1e-10) {
        throw NotTimeReversalSymmetric(std::string(who) + ": Hamiltonian is not real in the computational basis");
    }
}

} // namespace

Process backward_process(const Process& process) {
    check_time_reversal(process.h0(), "backward_process");
    check_time_reversal(process.hf(), "backward_process");
    const ComplexMatrix u_back = process.u().transpose();
    if (!process.has_family()) {
        return Process(process.hf(), process.h0(), u_back);
    }
    const double t_f = process.t_f();
    const ComplexMatrix u_fwd = process.u();
    const Process forward = process; // keep the family alive inside the lambda
    auto family = [forward, u_fwd, t_f](double s) {
        return (forward.family(t_f - s) * u_fwd.dagger()).conjugate();
    };
    return Process(process.hf(), process.h0(), u_back, std::move(family), t_f);
}

JointDistribution backward_joint(const Process& process, double beta, const MeasurementChannel& channelf) {
    check_channel_dim(channelf, process.hf(), "backward_joint");
    const std::vector<double> pf = thermal_populations(process.hf(), beta);
    const auto t = transition_matrix(process);
    const std::size_t d = process.dim();
    std::vector<std::vector<double>> p(d, std::vector<double>(d, 0.0));
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += t[n][k] * channelf.q(k, m);
            p[n][m] = acc * pf[m];
        }
    }
    return JointDistribution(std::move(p), JointKind::backward);
}

} // namespace qtpm::tpm
