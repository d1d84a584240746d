#include "qtpm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iterator>

#include "qtpm/errors.hpp"
#include "qtpm/rng.hpp"
#include "qtpm/scenarios.hpp"
#include "qtpm/thermo.hpp"

namespace qtpm::verify {

namespace {

using la::complex;
using la::ComplexMatrix;
using la::HermitianOperator;
using meas::MeasurementChannel;
using meas::PointerModel;
using rng::Stream;
using scen::ChannelKind;
using scen::ScenarioConfig;
using tpm::Process;

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
    if (!ok) throw CheckFailed(msg);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return std::string(buf);
}

double work_of(const tpm::JointDistribution& joint, const Process& process) {
    return tpm::mean_work(tpm::work_distribution(joint, process.h0(), process.hf()));
}

const ScenarioConfig& qubit_setup() {
    static const ScenarioConfig config = scen::fig2_config();
    return config;
}

MeasurementChannel qubit_channel(double ratio, ChannelKind kind) {
    const auto& cfg = qubit_setup();
    return scen::channel_for(cfg, kind, ratio * cfg.beta_s);
}

// ---- randomized instances -------------------------------------------------

// sorted spectrum in [-1, 1] with a protected gap
std::vector<double> random_levels(std::size_t d, Stream& s, double min_gap) {
    for (int tries = 0; tries < 500; ++tries) {
        std::vector<double> e(d);
        for (auto& v : e) v = s.range(-1.0, 1.0);
        std::sort(e.begin(), e.end());
        bool ok = true;
        for (std::size_t i = 1; i < d; ++i) ok = ok && (e[i] - e[i - 1] > min_gap);
        if (ok) return e;
    }
    throw CheckFailed("random_levels: could not draw a gapped spectrum");
}

// real symmetric, entries scaled so the spectrum stays in [-1, 1]
HermitianOperator random_real_hamiltonian(std::size_t d, Stream& s) {
    for (int tries = 0; tries < 500; ++tries) {
        ComplexMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                const double v = s.range(-1.0, 1.0) / static_cast<double>(d);
                a(i, j) = v;
                a(j, i) = v;
            }
        }
        auto h = HermitianOperator::from_matrix(a);
        if (h.min_gap() > 1e-3) return h;
    }
    throw CheckFailed("random_real_hamiltonian: could not draw a gapped operator");
}

HermitianOperator random_drive(std::size_t d, Stream& s) {
    ComplexMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = s.range(-1.0, 1.0) / static_cast<double>(d);
        for (std::size_t j = i + 1; j < d; ++j) {
            const double re = s.range(-1.0, 1.0);
            const double im = s.range(-1.0, 1.0);
            const complex v(re, im);
            a(i, j) = v / static_cast<double>(d);
            a(j, i) = std::conj(v) / static_cast<double>(d);
        }
    }
    return HermitianOperator::from_matrix(a);
}

ComplexMatrix random_unitary(std::size_t d, Stream& s) {
    return la::spectral_exp(random_drive(d, s), complex(0.0, -1.0));
}

Process random_process(std::size_t d, Stream& s) {
    return Process(random_real_hamiltonian(d, s), random_real_hamiltonian(d, s),
                   random_unitary(d, s));
}

// two-segment piecewise-constant drive over [0, 1]
Process random_family_process(std::size_t d, Stream& s) {
    auto h0 = random_real_hamiltonian(d, s);
    auto hf = random_real_hamiltonian(d, s);
    auto ha = random_drive(d, s);
    auto hb = random_drive(d, s);
    auto family = [ha, hb](double t) {
        if (t <= 0.5) return la::spectral_exp(ha, complex(0.0, -t));
        return la::spectral_exp(hb, complex(0.0, -(t - 0.5))) *
               la::spectral_exp(ha, complex(0.0, -0.5));
    };
    ComplexMatrix u = family(1.0);
    return Process(std::move(h0), std::move(hf), std::move(u), std::move(family), 1.0);
}

PointerModel random_pointer(std::size_t d_s, std::size_t lambda, Stream& s) {
    std::vector<double> e(d_s * lambda);
    for (auto& v : e) v = s.range(-1.0, 1.0);
    const double beta_p = s.range(0.2, 3.0);
    return PointerModel(HermitianOperator::diagonal(std::move(e)), beta_p, d_s);
}

MeasurementChannel random_channel(std::size_t d_s, std::size_t lambda, bool latin, Stream& s) {
    const auto assignment =
        latin ? meas::assignment_min_invasive(d_s) : meas::assignment_minimal_energy(d_s);
    return meas::build_channel(random_pointer(d_s, lambda, s), assignment);
}

// beta_p so deep that every thermal weight outside the top group underflows
// to exactly zero: the readout becomes the identity channel, bit for bit.
MeasurementChannel ideal_channel(std::size_t d_s, std::size_t lambda) {
    std::vector<double> e(d_s * lambda);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<double>(i / lambda);
    PointerModel pointer(HermitianOperator::diagonal(std::move(e)), 1000.0, d_s);
    return meas::build_channel(std::move(pointer), meas::assignment_min_invasive(d_s));
}

// ---- criteria -------------------------------------------------------------

std::string c01_anchor_point(bool) {
    const auto& cfg = qubit_setup();
    const auto channel = qubit_channel(1.0, cfg.forward);
    const auto process = scen::rabi_process(cfg.e_s, kPi, 1.0);
    const double w_ideal = work_of(tpm::ideal_joint(process, cfg.beta_s), process);
    const double w_nonid = work_of(tpm::nonideal_joint(process, cfg.beta_s, channel), process);
    const double rel = std::abs(w_nonid - w_ideal) / w_ideal;
    require(std::abs(rel - 0.49875) <= 5e-4,
            "relative deviation " + fmt(rel) + " misses 0.49875 by " + fmt(rel - 0.49875));
    return "relative deviation " + fmt(rel) + " (target 0.49875 +- 5e-4)";
}

std::string c02_closed_form(bool) {
    const auto& cfg = qubit_setup();
    const double coef = cfg.e_s * std::tanh(cfg.beta_s * cfg.e_s / 2.0);
    double worst = 0.0;
    for (double theta : cfg.thetas) {
        const auto process = scen::rabi_process(cfg.e_s, theta, 1.0);
        const double w = work_of(tpm::ideal_joint(process, cfg.beta_s), process);
        const double s = std::sin(theta / 2.0);
        worst = std::max(worst, std::abs(w - coef * s * s));
    }
    require(worst <= 1e-12 * cfg.e_s, "closed-form gap " + fmt(worst));
    return "max closed-form gap " + fmt(worst) + " over 201 angles";
}

std::string c03_exact_points(bool) {
    const auto& cfg = qubit_setup();
    double worst = 0.0;
    for (double ratio : cfg.ratios) {
        const auto channel = qubit_channel(ratio, cfg.forward);
        for (double theta : {kPi / 2.0, 3.0 * kPi / 2.0}) {
            const auto process = scen::rabi_process(cfg.e_s, theta, 1.0);
            const double w_ideal = work_of(tpm::ideal_joint(process, cfg.beta_s), process);
            const double w_nonid =
                work_of(tpm::nonideal_joint(process, cfg.beta_s, channel), process);
            worst = std::max(worst, std::abs(w_nonid - w_ideal));
        }
    }
    require(worst <= 1e-12 * cfg.e_s, "deviation " + fmt(worst) + " at an exact point");
    return "max deviation " + fmt(worst) + " across 6 temperatures x 2 angles";
}

std::string c04_characteristic_identity(bool quick) {
    const int count = quick ? 20 : 100;
    Stream s(1004);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const std::size_t lambda = (i % 2) ? 2 : 4;
        const auto process = random_process(d, s);
        const auto channel = random_channel(d, lambda, (i / 2) % 2 == 0, s);
        const double beta = s.range(0.1, 1.5);
        const complex g =
            fluct::characteristic_function(process, beta, channel, complex(0.0, beta));
        const double rhs =
            fluct::chi(process, beta, channel) *
            std::exp(-beta * thermo::free_energy_difference(process.h0(), process.hf(), beta));
        worst = std::max(worst, std::abs(g - complex(rhs, 0.0)));
    }
    require(worst <= 1e-12, "identity residual " + fmt(worst));
    return "max identity residual " + fmt(worst) + " over " + std::to_string(count) + " draws";
}

std::string c05_doubly_stochastic_exactness(bool quick) {
    const int count = quick ? 20 : 100;
    Stream s(1005);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const std::size_t lambda = (i % 2) ? 4 : 2;
        const auto process = random_process(d, s);
        const auto channel = random_channel(d, lambda, true, s);
        const double beta = s.range(0.1, 1.5);
        const double lhs = fluct::jarzynski_functional(process, beta, channel);
        const double rhs =
            std::exp(-beta * thermo::free_energy_difference(process.h0(), process.hf(), beta));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    require(worst <= 1e-12, "exponential-average gap " + fmt(worst));
    return "max exponential-average gap " + fmt(worst) + " over " + std::to_string(count) +
           " draws";
}

std::string c06_deviation_bound(bool quick) {
    const int count = quick ? 40 : 200;
    Stream s(1006);
    double min_slack = 1e300;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const std::size_t lambda = (i % 2) ? 2 : 4;
        const auto h0 = HermitianOperator::diagonal(random_levels(d, s, 0.05));
        const auto hf = HermitianOperator::diagonal(random_levels(d, s, 0.05));
        const Process process(h0, hf, random_unitary(d, s));
        const auto channel = random_channel(d, lambda, (i / 2) % 2 == 0, s);
        const double beta = s.range(0.05, 0.5);
        const double w_ideal = work_of(tpm::ideal_joint(process, beta), process);
        const double w_nonid = work_of(tpm::nonideal_joint(process, beta, channel), process);
        const double bound = tpm::deviation_bound(process, channel);
        const double dev = std::abs(w_nonid - w_ideal);
        require(dev <= bound + 1e-12,
                "deviation " + fmt(dev) + " breaks its bound " + fmt(bound) + " on draw " +
                    std::to_string(i));
        min_slack = std::min(min_slack, bound - dev);
    }
    return "bound held on " + std::to_string(count) + " draws, min slack " + fmt(min_slack);
}

std::string c07_channel_structure(bool) {
    Stream s(1007);
    double worst_col = 0.0, worst_td = 0.0, worst_row = 0.0;
    int channels = 0;
    for (std::size_t d : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        std::vector<double> basis_levels(d);
        for (std::size_t i = 0; i < d; ++i) basis_levels[i] = static_cast<double>(i);
        const auto basis = HermitianOperator::diagonal(basis_levels);
        for (bool latin : {false, true}) {
            for (std::size_t lambda : {std::size_t{2}, std::size_t{4}}) {
                for (double beta_p : {0.3, 1.7}) {
                    std::vector<double> e(d * lambda);
                    for (auto& v : e) v = s.range(-1.0, 1.0);
                    PointerModel pointer(HermitianOperator::diagonal(std::move(e)), beta_p, d);
                    const auto assignment = latin ? meas::assignment_min_invasive(d)
                                                  : meas::assignment_minimal_energy(d);
                    const auto channel = meas::build_channel(pointer, assignment);
                    ++channels;

                    for (std::size_t n = 0; n < d; ++n) {
                        double col = 0.0;
                        for (std::size_t l = 0; l < d; ++l) col += channel.q(l, n);
                        worst_col = std::max(worst_col, std::abs(col - 1.0));
                        require(channel.q(n, n) == channel.c_max(),
                                "diagonal weight is not exactly the top group mass");

                        ComplexMatrix projector(d, d);
                        projector(n, n) = 1.0;
                        const double td = la::trace_distance(
                            meas::conditional_state(channel, n, basis), projector);
                        worst_td = std::max(worst_td, std::abs(td - (1.0 - channel.c_max())));
                    }
                    if (latin) {
                        require(channel.assignment().latin_square(),
                                "cyclic assignment not recognized as a latin square");
                        for (std::size_t l = 0; l < d; ++l) {
                            double row = 0.0;
                            for (std::size_t n = 0; n < d; ++n) row += channel.q(l, n);
                            worst_row = std::max(worst_row, std::abs(row - 1.0));
                        }
                    }
                }
            }
        }
    }
    require(worst_col <= 1e-13, "column sum defect " + fmt(worst_col));
    require(worst_td <= 1e-12, "conditional-state distance defect " + fmt(worst_td));
    require(worst_row <= 1e-13, "row sum defect " + fmt(worst_row));
    return std::to_string(channels) + " channels: col defect " + fmt(worst_col) +
           ", distance defect " + fmt(worst_td) + ", row defect " + fmt(worst_row);
}

std::string c08_measurement_unitary(bool quick) {
    const int states = quick ? 20 : 100;
    Stream s(1008);
    double worst_unitary = 0.0, worst_bias = 0.0, worst_path = 0.0;

    struct Combo {
        PointerModel pointer;
        meas::AssignmentMatrix assignment;
        HermitianOperator h_s;
        ComplexMatrix u;
    };
    std::vector<Combo> combos;
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
        for (std::size_t lambda : {std::size_t{2}, std::size_t{4}}) {
            for (bool latin : {false, true}) {
                auto pointer = random_pointer(d, lambda, s);
                auto assignment =
                    latin ? meas::assignment_min_invasive(d) : meas::assignment_minimal_energy(d);
                auto h_s = HermitianOperator::diagonal(random_levels(d, s, 0.1));
                auto u = meas::build_measurement_unitary(pointer, assignment);
                worst_unitary = std::max(worst_unitary, u.unitarity_defect());
                combos.push_back({std::move(pointer), std::move(assignment), std::move(h_s),
                                  std::move(u)});
            }
        }
    }
    require(worst_unitary <= 1e-12, "interaction unitary defect " + fmt(worst_unitary));

    for (int k = 0; k < states; ++k) {
        const Combo& combo = combos[static_cast<std::size_t>(k) % combos.size()];
        const std::size_t d = combo.pointer.d_s();
        const std::size_t d_p = combo.pointer.d_p();

        ComplexMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double re = s.range(-1.0, 1.0);
                const double im = s.range(-1.0, 1.0);
                a(i, j) = complex(re, im);
            }
        }
        ComplexMatrix rho = a * a.dagger();
        const double tr = rho.trace().real();
        rho = (1.0 / tr) * rho;

        const ComplexMatrix tau_p = ComplexMatrix::diagonal(combo.pointer.thermal_weights());
        const ComplexMatrix joint = combo.u * la::kron(rho, tau_p) * combo.u.dagger();
        for (std::size_t n = 0; n < d; ++n) {
            double prob = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t idx : combo.pointer.outcome_subspaces()[n])
                    prob += joint(i * d_p + idx, i * d_p + idx).real();
            worst_bias = std::max(worst_bias, std::abs(prob - rho(n, n).real()));
        }
    }
    require(worst_bias <= 1e-12, "outcome bias " + fmt(worst_bias));

    for (const Combo& combo : combos) {
        const std::size_t d = combo.pointer.d_s();
        const std::size_t d_p = combo.pointer.d_p();
        const auto populations = thermo::gibbs(combo.h_s, 0.9).populations();

        const ComplexMatrix rho_th = ComplexMatrix::diagonal(populations);
        const ComplexMatrix tau_p = ComplexMatrix::diagonal(combo.pointer.thermal_weights());
        const ComplexMatrix joint = combo.u * la::kron(rho_th, tau_p) * combo.u.dagger();
        const auto block = meas::build_joint_post_state(populations, combo.pointer, combo.assignment);

        for (std::size_t i = 0; i < d * d_p; ++i)
            worst_path = std::max(worst_path, std::abs(joint(i, i).real() - block.diagonal()[i]));

        double corr = 0.0;
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t idx : combo.pointer.outcome_subspaces()[n])
                corr += joint(n * d_p + idx, n * d_p + idx).real();
        worst_path = std::max(worst_path, std::abs(corr - meas::correlation_value(block)));

        const double cost_full =
            meas::measurement_energy_cost(rho_th, combo.h_s, combo.pointer, combo.assignment);
        const double cost_diag = meas::measurement_energy_cost_diagonal(
            populations, combo.h_s, combo.pointer, combo.assignment);
        worst_path = std::max(worst_path, std::abs(cost_full - cost_diag));
    }
    require(worst_path <= 1e-12, "block-path mismatch " + fmt(worst_path));
    return "unitary defect " + fmt(worst_unitary) + ", bias " + fmt(worst_bias) +
           ", path mismatch " + fmt(worst_path);
}

std::string c09_dissipation_identities(bool quick) {
    const int count = quick ? 10 : 50;
    Stream s(1009);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = (i % 2) ? 3 : 2;
        const std::size_t lambda = (i % 4 < 2) ? 2 : 4;
        const auto process = random_family_process(d, s);
        const auto channel0 = random_channel(d, lambda, i % 2 == 0, s);
        const auto channelf = random_channel(d, lambda, i % 2 == 1, s);
        const double beta = s.range(0.1, 1.0);

        worst = std::max(worst, fluct::dissipation_identity(process, beta, channel0).residual);
        const double t_f = process.t_f();
        for (double t : {0.0, t_f / 3.0, t_f / 2.0, 2.0 * t_f / 3.0, t_f}) {
            worst = std::max(
                worst, fluct::kpv_extended(process, beta, channel0, channelf, t).residual);
        }
        worst = std::max(worst, fluct::ideal_dissipation_identity(process, beta).residual);
    }
    require(worst <= 1e-10, "identity residual " + fmt(worst));
    return "max residual " + fmt(worst) + " over " + std::to_string(count) + " driven draws";
}

std::string c10_forward_backward(bool quick) {
    Stream s(1010);

    // exact regime: a readout that is the identity channel keeps the
    // pairwise ratio at 1 and the conditional mismatch at 0
    const int ideal_draws = quick ? 4 : 10;
    double worst_ratio = 0.0, worst_gamma = 0.0;
    for (int i = 0; i < ideal_draws; ++i) {
        const std::size_t d = (i % 2) ? 3 : 2;
        const auto process = random_process(d, s);
        const double beta = s.range(0.2, 1.0);
        const auto channel = ideal_channel(d, (i % 2) ? 4 : 2);
        const auto report = fluct::crooks_report(process, beta, channel, channel);
        for (const auto& pair : report.pairs) {
            worst_ratio = std::max(worst_ratio, std::abs(pair.crooks_ratio - 1.0));
            worst_gamma = std::max(worst_gamma, std::abs(pair.gamma));
        }
    }
    require(worst_ratio <= 1e-12, "exact-readout ratio drift " + fmt(worst_ratio));
    require(worst_gamma <= 1e-12, "exact-readout mismatch " + fmt(worst_gamma));

    // non-ideal regime: warm cyclic readout must visibly break the plain ratio
    const auto& cfg = qubit_setup();
    const auto warm = qubit_channel(1.0, ChannelKind::min_invasive);
    const auto process = scen::rabi_process(cfg.e_s, kPi / 3.0, 1.0);
    const auto report = fluct::crooks_report(process, cfg.beta_s, warm, warm);
    require(report.max_relative_violation > 1e-6,
            "warm readout violation only " + fmt(report.max_relative_violation));

    // mean entropy production against a recount from the raw joint tables
    double worst_sigma = 0.0;
    auto recount = [](const Process& p, double beta, const MeasurementChannel& c0,
                      const MeasurementChannel& cf) {
        const auto fwd = tpm::nonideal_joint(p, beta, c0);
        const auto bwd = tpm::backward_joint(p, beta, cf);
        double acc = 0.0;
        for (std::size_t n = 0; n < fwd.dim(); ++n)
            for (std::size_t m = 0; m < fwd.dim(); ++m)
                if (fwd(n, m) >= 1e-15) acc += fwd(n, m) * std::log(fwd(n, m) / bwd(n, m));
        return acc;
    };
    worst_sigma = std::abs(recount(process, cfg.beta_s, warm, warm) - report.mean_sigma);
    const int sigma_draws = quick ? 3 : 5;
    for (int i = 0; i < sigma_draws; ++i) {
        const std::size_t d = (i % 2) ? 3 : 2;
        const auto p = random_process(d, s);
        const double beta = s.range(0.2, 1.0);
        const auto c0 = random_channel(d, 2, i % 2 == 0, s);
        const auto cf = random_channel(d, 2, i % 2 == 1, s);
        const auto rep = fluct::crooks_report(p, beta, c0, cf);
        worst_sigma = std::max(worst_sigma, std::abs(recount(p, beta, c0, cf) - rep.mean_sigma));
    }
    require(worst_sigma <= 1e-12, "entropy production recount gap " + fmt(worst_sigma));

    return "exact ratio drift " + fmt(worst_ratio) + ", warm violation " +
           fmt(report.max_relative_violation) + ", recount gap " + fmt(worst_sigma);
}

std::string c11_entropy_jump_bound(bool quick) {
    const int count = quick ? 20 : 100;
    Stream s(1011);
    double min_slack = 1e300;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const std::size_t lambda = (i % 2) ? 4 : 2;
        const auto process = random_process(d, s);
        const auto channel = random_channel(d, lambda, (i / 2) % 2 == 0, s);
        const double beta = s.range(0.1, 2.0);
        const auto report = fluct::fannes_bound(channel, process, beta);
        require(report.holds, "entropy jump " + fmt(report.delta_s0) + " breaks its bound " +
                                  fmt(report.bound) + " on draw " + std::to_string(i));
        min_slack = std::min(min_slack, report.bound - report.delta_s0);
    }
    return "bound held on " + std::to_string(count) + " draws, min slack " + fmt(min_slack);
}

std::string c12_sampling_oracle(bool quick) {
    const auto& cfg = qubit_setup();
    const auto channel0 = qubit_channel(1.0, cfg.forward);
    const auto channelf = qubit_channel(1.0, cfg.backward);
    const auto process = scen::rabi_process(cfg.e_s, kPi, 1.0);
    const std::size_t samples = quick ? 100000 : 1000000;
    const std::uint64_t seed = 20260823;

    const auto est =
        scen::monte_carlo_tpm(process, cfg.beta_s, channel0, channelf, samples, seed);
    const double w_ref = work_of(tpm::nonideal_joint(process, cfg.beta_s, channel0), process);
    const double j_ref = fluct::jarzynski_functional(process, cfg.beta_s, channel0);

    const double zw = std::abs(est.mean_w - w_ref) / est.mean_w_stderr;
    const double zj = std::abs(est.jarzynski - j_ref) / est.jarzynski_stderr;
    require(zw <= 4.0, "mean work estimate " + fmt(zw) + " standard errors out");
    require(zj <= 4.0, "exponential average estimate " + fmt(zj) + " standard errors out");

    const auto again =
        scen::monte_carlo_tpm(process, cfg.beta_s, channel0, channelf, samples, seed);
    require(est.mean_w == again.mean_w && est.mean_w_stderr == again.mean_w_stderr &&
                est.jarzynski == again.jarzynski &&
                est.jarzynski_stderr == again.jarzynski_stderr,
            "re-run with the same seed changed the estimates");

    return std::to_string(samples) + " samples: mean work " + fmt(zw) +
           " se out, exponential average " + fmt(zj) + " se out, re-run identical";
}

std::string c13_cost_sweep(bool) {
    const auto table = scen::reproduce_figA3(scen::figA3_config());
    double max_cost = 0.0, min_cost = 1e300, max_gap = 0.0, cool_hot = 0.0;
    for (std::size_t r = 0; r + 1 < table.rows.size(); r += 2) {
        const double a = table.rows[r][2], b = table.rows[r + 1][2];
        max_cost = std::max({max_cost, a, b});
        min_cost = std::min({min_cost, a, b});
        max_gap = std::max(max_gap, std::abs(a - b));
    }
    cool_hot = table.rows.back()[3];
    require(cool_hot > 2.0, "cooling bill at ratio 750 is only " + fmt(cool_hot));
    require(min_cost > 0.0, "measurement bill dips to " + fmt(min_cost));
    require(max_gap <= 0.05 * max_cost,
            "angle dependence " + fmt(max_gap / max_cost) + " exceeds 5%");
    return "cooling bill " + fmt(cool_hot) + ", min measurement bill " + fmt(min_cost) +
           ", angle dependence " + fmt(max_gap / max_cost);
}

double time_limit_for(int id) {
    switch (id) {
    case 1:
    case 2: return 1.0;
    case 9: return 30.0;
    case 12: return 10.0;
    default: return 0.0; // no budget
    }
}

} // namespace

std::vector<CriterionResult> run_acceptance(bool quick) {
    struct Entry {
        int id;
        const char* name;
        std::string (*body)(bool);
    };
    static const Entry entries[] = {
        {1, "anchor value of the qubit sweep", c01_anchor_point},
        {2, "qubit mean-work closed form", c02_closed_form},
        {3, "exact estimation angles", c03_exact_points},
        {4, "characteristic-function identity", c04_characteristic_identity},
        {5, "doubly stochastic exponential average", c05_doubly_stochastic_exactness},
        {6, "mean-work deviation bound", c06_deviation_bound},
        {7, "readout channel structure", c07_channel_structure},
        {8, "explicit interaction unitary", c08_measurement_unitary},
        {9, "dissipation identities", c09_dissipation_identities},
        {10, "forward/backward diagnostics", c10_forward_backward},
        {11, "entropy jump bound", c11_entropy_jump_bound},
        {12, "sampling oracle", c12_sampling_oracle},
        {13, "measurement cost sweep", c13_cost_sweep},
    };

    std::vector<CriterionResult> out;
    out.reserve(std::size(entries));
    for (const Entry& entry : entries) {
        CriterionResult r;
        r.id = entry.id;
        r.name = entry.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.detail = entry.body(quick);
            r.passed = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
            r.passed = false;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double limit = time_limit_for(entry.id);
        if (r.passed && limit > 0.0 && r.seconds > limit) {
            r.passed = false;
            r.detail += " [over the " + fmt(limit) + " s budget]";
        }
        out.push_back(std::move(r));
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

std::string format_report(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        char line[512];
        std::snprintf(line, sizeof(line), "[%s] %02d %s (%.2f s) %s\n",
                      r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                      r.detail.c_str());
        out += line;
    }
    return out;
}

} // namespace qtpm::verify
