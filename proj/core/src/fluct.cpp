#include "qtpm/fluct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtpm/errors.hpp"
#include "qtpm/thermo.hpp"

namespace qtpm::fluct {

namespace {

void check_channel_dim(const MeasurementChannel& channel, const HermitianOperator& h, const char* who) {
    if (channel.d_s() != h.dim()) {
        throw BasisMismatch(std::string(who) + ": channel dimension " + std::to_string(channel.d_s()) +
                            " does not match Hamiltonian dimension " + std::to_string(h.dim()));
    }
}

// system populations after averaging the first readout over its outcomes
std::vector<double> post_measurement_populations(const MeasurementChannel& channel,
                                                 const std::vector<double>& p) {
    const std::size_t d = channel.d_s();
    std::vector<double> r(d, 0.0);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t n = 0; n < d; ++n) r[l] += channel.q(l, n) * p[n];
    }
    return r;
}

double entropy_of(const std::vector<double>& p) {
    double acc = 0.0;
    for (double v : p) {
        if (v < -1e-12) throw NotAState("entropy: negative probability " + std::to_string(v));
        if (v > 0.0) acc -= v * std::log(v);
    }
    return acc < 0.0 ? 0.0 : acc;
}

DensityMatrix basis_diagonal(const HermitianOperator& h, const std::vector<double>& populations) {
    const std::size_t d = h.dim();
    const ComplexMatrix& b = h.eigenbasis();
    ComplexMatrix scaled = b;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= populations[j];
    }
    return scaled * b.dagger();
}

// Tr[rho log x] via the spectrum of x; weight on the null space of x is a
// support violation.
double expectation_of_log(const DensityMatrix& rho, const DensityMatrix& x) {
    const la::HermitianSpectrum s = la::hermitian_spectrum(x);
    const std::size_t d = rho.rows();
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mu = s.eigenvalues[j];
        if (mu < -1e-12) throw NotAState("expectation_of_log: negative eigenvalue " + std::to_string(mu));
        if (mu < 0.0) mu = 0.0;

        complex overlap(0.0, 0.0);
        for (std::size_t a = 0; a < d; ++a) {
            complex row(0.0, 0.0);
            for (std::size_t b = 0; b < d; ++b) row += rho(a, b) * s.eigenvectors(b, j);
            overlap += std::conj(s.eigenvectors(a, j)) * row;
        }
        const double o = overlap.real();
        if (mu <= 1e-300) {
            if (o > 1e-12) {
                throw SupportViolation("expectation_of_log: state has weight " + std::to_string(o) +
                                       " on a null direction");
            }
            continue;
        }
        acc += o * std::log(mu);
    }
    return acc;
}

double mean_work_of(const tpm::JointDistribution& joint, const HermitianOperator& h0,
                    const HermitianOperator& hf) {
    double acc = 0.0;
    for (std::size_t n = 0; n < joint.dim(); ++n) {
        for (std::size_t m = 0; m < joint.dim(); ++m) {
            acc += joint(n, m) * (hf.eigenvalues()[m] - h0.eigenvalues()[n]);
        }
    }
    return acc;
}

} // namespace

complex characteristic_function(const Process& process, double beta,
                                const MeasurementChannel& channel0, complex u) {
    check_channel_dim(channel0, process.h0(), "characteristic_function");
    const std::vector<double> p0 = thermo::gibbs(process.h0(), beta).populations();
    const std::size_t d = process.dim();

    // sigma(u) = sum_n p_n e^{-iu E_n} rho_n, diagonal in the start basis
    std::vector<complex> diag(d, complex(0.0, 0.0));
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t n = 0; n < d; ++n) {
            const complex phase = std::exp(complex(0.0, -1.0) * u * process.h0().eigenvalues()[n]);
            diag[l] += channel0.q(l, n) * p0[n] * phase;
        }
    }
    const ComplexMatrix& b0 = process.h0().eigenbasis();
    ComplexMatrix scaled = b0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= diag[j];
    }
    const ComplexMatrix sigma = scaled * b0.dagger();

    const ComplexMatrix exp_hf = la::spectral_exp(process.hf(), complex(0.0, 1.0) * u);
    return (exp_hf * process.u() * sigma * process.u().dagger()).trace();
}

double jarzynski_functional(const Process& process, double beta, const MeasurementChannel& channel0) {
    if (!std::isfinite(beta) || beta <= 0.0) throw InvalidBeta("jarzynski_functional: beta must be positive");
    const complex g = characteristic_function(process, beta, channel0, complex(0.0, beta));
    if (std::abs(g.imag()) > 1e-10) {
        throw NonRealResult("jarzynski_functional: imaginary residue " + std::to_string(g.imag()));
    }
    return g.real();
}

double chi(const Process& process, double beta, const MeasurementChannel& channel0) {
    check_channel_dim(channel0, process.h0(), "chi");
    const std::vector<double> pf = thermo::gibbs(process.hf(), beta).populations();
    const auto t = tpm::transition_matrix(process);
    const std::size_t d = process.dim();

    double acc = 0.0;
    for (std::size_t l = 0; l < d; ++l) {
        double row = 0.0;
        for (std::size_t n = 0; n < d; ++n) row += channel0.q(l, n);
        double reach = 0.0;
        for (std::size_t m = 0; m < d; ++m) reach += t[l][m] * pf[m];
        acc += row * reach;
    }
    if (acc < -1e-12 || acc > static_cast<double>(d) + 1e-12) {
        throw CheckFailed("chi: value " + std::to_string(acc) + " escapes [0, d_S]");
    }
    return acc;
}

SecondLawBound second_law_bound(const Process& process, double beta, const MeasurementChannel& channel0) {
    const double x = chi(process, beta, channel0);
    if (x < 1e-300) throw ChiZero("second_law_bound: chi vanished, bound undefined");
    const double df = thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const double bound = df - std::log(x) / beta;
    const double w = mean_work_of(tpm::nonideal_joint(process, beta, channel0), process.h0(), process.hf());
    return {bound, w >= bound - 1e-10};
}

CrooksReport crooks_report(const Process& process, double beta, const MeasurementChannel& channel0,
                           const MeasurementChannel& channelf) {
    check_channel_dim(channel0, process.h0(), "crooks_report");
    check_channel_dim(channelf, process.hf(), "crooks_report");

    const tpm::JointDistribution fwd = tpm::nonideal_joint(process, beta, channel0);
    const tpm::JointDistribution bwd = tpm::backward_joint(process, beta, channelf);
    const std::vector<double> p0 = thermo::gibbs(process.h0(), beta).populations();
    const std::vector<double> pf = thermo::gibbs(process.hf(), beta).populations();
    const double df = thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const std::size_t d = process.dim();

    CrooksReport report;
    report.mean_sigma = 0.0;
    report.max_relative_violation = 0.0;
    report.modified_residual = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            const double p_f = fwd(n, m);
            const double p_b = bwd(n, m);
            if (p_f < 1e-15 && p_b < 1e-15) continue;
            if (p_f >= 1e-15 && p_b < 1e-300) {
                throw SupportViolation("crooks_report: forward pair (" + std::to_string(n) + "," +
                                       std::to_string(m) + ") has no backward counterpart");
            }
            if (p_f < 1e-15) continue; // beneath forward resolution, ratios undefined

            const double w = process.hf().eigenvalues()[m] - process.h0().eigenvalues()[n];
            const double sigma = std::log(p_f / p_b);
            const double gamma = std::log((p_f / p0[n]) / (p_b / pf[m]));
            const double ratio = p_b * std::exp(beta * (w - df)) / p_f;
            report.pairs.push_back({n, m, p_f, p_b, sigma, gamma, ratio});

            report.mean_sigma += p_f * sigma;
            report.max_relative_violation =
                std::max(report.max_relative_violation, std::abs(p_b / p_f - 1.0));
            const double corrected = p_f * std::exp(-gamma) * std::exp(-beta * (w - df));
            report.modified_residual = std::max(report.modified_residual, std::abs(p_b - corrected));
        }
    }
    return report;
}

DissipationReport dissipation_identity(const Process& process, double beta,
                                       const MeasurementChannel& channel0) {
    check_channel_dim(channel0, process.h0(), "dissipation_identity");
    const std::vector<double> p0 = thermo::gibbs(process.h0(), beta).populations();
    const std::vector<double> r0 = post_measurement_populations(channel0, p0);

    const double delta_s0 = entropy_of(r0) - entropy_of(p0);
    const DensityMatrix rho0 = basis_diagonal(process.h0(), r0);
    const DensityMatrix rhof = process.u() * rho0 * process.u().dagger();
    const DensityMatrix tauf = thermo::gibbs(process.hf(), beta).matrix();
    const double rel_ent = la::relative_entropy(rhof, tauf);

    const double w = mean_work_of(tpm::nonideal_joint(process, beta, channel0), process.h0(), process.hf());
    const double df = thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const double lhs = beta * (w - df);
    const double rhs = delta_s0 + rel_ent;
    return {lhs, delta_s0, rel_ent, 0.0, 0.0, std::abs(lhs - rhs)};
}

DissipationReport ideal_dissipation_identity(const Process& process, double beta) {
    const thermo::GibbsState g0 = thermo::gibbs(process.h0(), beta);
    const DensityMatrix rhof = process.u() * g0.matrix() * process.u().dagger();
    const DensityMatrix tauf = thermo::gibbs(process.hf(), beta).matrix();
    const double rel_ent = la::relative_entropy(rhof, tauf);

    const double w = mean_work_of(tpm::ideal_joint(process, beta), process.h0(), process.hf());
    const double df = thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const double lhs = beta * (w - df);
    return {lhs, 0.0, rel_ent, 0.0, 0.0, std::abs(lhs - rel_ent)};
}

FannesReport fannes_bound(const MeasurementChannel& channel0, const Process& process, double beta) {
    check_channel_dim(channel0, process.h0(), "fannes_bound");
    const std::vector<double> p0 = thermo::gibbs(process.h0(), beta).populations();
    const std::vector<double> r0 = post_measurement_populations(channel0, p0);
    const double delta_s0 = entropy_of(r0) - entropy_of(p0);

    const double c = channel0.c_max();
    double h2 = 0.0;
    if (c > 0.0 && c < 1.0) h2 = -c * std::log(c) - (1.0 - c) * std::log(1.0 - c);
    const double d = static_cast<double>(channel0.d_s());
    const double bound = (1.0 - c) * std::log(d - 1.0) + h2;
    return {delta_s0, bound, delta_s0 <= bound + 1e-10};
}

DissipationReport kpv_extended(const Process& process, double beta, const MeasurementChannel& channel0,
                               const MeasurementChannel& channelf, double t) {
    if (!process.has_family()) {
        throw MissingTimeFamily("kpv_extended: process carries no time family");
    }
    if (t < 0.0 || t > process.t_f() + 1e-12) {
        throw CheckFailed("kpv_extended: t = " + std::to_string(t) + " outside [0, t_f]");
    }
    check_channel_dim(channel0, process.h0(), "kpv_extended");
    check_channel_dim(channelf, process.hf(), "kpv_extended");

    const std::vector<double> p0 = thermo::gibbs(process.h0(), beta).populations();
    const std::vector<double> pf = thermo::gibbs(process.hf(), beta).populations();
    const std::vector<double> r0 = post_measurement_populations(channel0, p0);
    const double delta_s0 = entropy_of(r0) - entropy_of(p0);

    const DensityMatrix rho0 = basis_diagonal(process.h0(), r0);
    const DensityMatrix rhof = process.u() * rho0 * process.u().dagger();
    const ComplexMatrix u_t = process.family(t);
    const DensityMatrix rho_fwd_t = u_t * rho0 * u_t.dagger();

    // averaged start of the reversed protocol
    const std::vector<double> rb = post_measurement_populations(channelf, pf);
    const DensityMatrix rho_b_f = basis_diagonal(process.hf(), rb);
    // reversed propagator at s = t_f - t collapses to conj(family(t) u+)
    const ComplexMatrix u_b = (u_t * process.u().dagger()).conjugate();
    const DensityMatrix rho_bwd_s = u_b * rho_b_f * u_b.dagger();
    const DensityMatrix rho_bwd_conj = rho_bwd_s.conjugate();

    const DensityMatrix tauf = thermo::gibbs(process.hf(), beta).matrix();
    const double delta_df = expectation_of_log(rhof, rho_b_f) - expectation_of_log(rhof, tauf);
    const double rel_ent_fb = la::relative_entropy(rho_fwd_t, rho_bwd_conj);

    const double w = mean_work_of(tpm::nonideal_joint(process, beta, channel0), process.h0(), process.hf());
    const double df = thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const double lhs = beta * (w - df);
    const double rhs = delta_s0 + delta_df + rel_ent_fb;
    return {lhs, delta_s0, 0.0, delta_df, rel_ent_fb, std::abs(lhs - rhs)};
}

} // namespace qtpm::fluct
