#include "qtpm/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

#include "json.hpp"

#include "qtpm/errors.hpp"
#include "qtpm/rng.hpp"
#include "qtpm/thermo.hpp"
#include "qtpm/version.hpp"

namespace qtpm::scen {

namespace {

constexpr double kPi = 3.14159265358979323846;

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> meta_for(const ScenarioConfig& config, const char* figure = nullptr) {
    std::vector<std::string> meta;
    meta.push_back(std::string("tool: qtpm ") + kVersion);
    if (figure) meta.push_back(std::string("figure: ") + figure);
    meta.push_back("config: " + io::hex64(config_hash(config)));
    return meta;
}

// Total energy bill of both measurements: the first readout acts on the
// initial thermal state, the second on the driven thermal state u tau0 u+.
double protocol_measurement_cost(const Process& process, double beta,
                                 const MeasurementChannel& channel) {
    const auto& pointer = channel.pointer();
    const auto& assignment = channel.assignment();
    const auto tau0 = thermo::gibbs(process.h0(), beta);
    const double cost0 =
        meas::measurement_energy_cost(tau0.matrix(), process.h0(), pointer, assignment);
    const ComplexMatrix rho_f = process.u() * tau0.matrix() * process.u().dagger();
    const double costf =
        meas::measurement_energy_cost(rho_f, process.hf(), pointer, assignment);
    return cost0 + costf;
}

// Pre-cooling bill in absolute energy units.
double cooling_for(const ScenarioConfig& config, double ratio) {
    if (config.pointer_qubits == 0)
        throw ConfigError("de_cool needs the n_qubits pointer form");
    const double bs = config.beta_s * config.e_s;
    return thermo::cooling_cost(config.pointer_qubits, config.e_p / config.e_s, bs, ratio * bs) *
           config.e_s;
}

double mean_work_of(const tpm::JointDistribution& joint, const Process& process) {
    return tpm::mean_work(tpm::work_distribution(joint, process.h0(), process.hf()));
}

// Shared physical parameters of the bundled figure sweeps.
void check_fig_params(const ScenarioConfig& config) {
    if (config.d_s != 2 || config.kind != ProcessKind::rabi)
        throw ConfigMismatch("figure sweeps drive a qubit (kind rabi, d_s = 2)");
    if (std::abs(config.beta_s * config.e_s - 1.0 / 30.0) > 1e-12)
        throw ConfigMismatch("figure sweeps need beta_s * e_s = 1/30");
    if (config.pointer_qubits != 3)
        throw ConfigMismatch("figure sweeps need the 3-qubit pointer");
    if (std::abs(config.e_p - config.e_s / 10.0) > 1e-12 * config.e_s)
        throw ConfigMismatch("figure sweeps need e_p = e_s / 10");
}

void check_fig2_grids(const ScenarioConfig& config) {
    static const double kRatios[] = {1.0, 150.0, 300.0, 450.0, 600.0, 750.0};
    if (config.ratios.size() != 6)
        throw ConfigMismatch("theta sweep needs the 6-point ratio grid 1..750");
    for (std::size_t i = 0; i < 6; ++i)
        if (std::abs(config.ratios[i] - kRatios[i]) > 1e-9)
            throw ConfigMismatch("theta sweep needs ratios {1, 150, 300, 450, 600, 750}");
    if (config.thetas.size() != 201)
        throw ConfigMismatch("theta sweep needs the 201-point grid on [0, 2 pi]");
    for (std::size_t j = 0; j < 201; ++j)
        if (std::abs(config.thetas[j] - 2.0 * kPi * static_cast<double>(j) / 200.0) > 1e-12)
            throw ConfigMismatch("theta sweep needs the uniform grid on [0, 2 pi]");
}

io::CsvTable work_sweep(const ScenarioConfig& config, unsigned threads) {
    check_fig_params(config);
    check_fig2_grids(config);
    const std::size_t nt = config.thetas.size();
    const std::size_t nr = config.ratios.size();

    io::CsvTable table;
    table.header = {"theta", "ratio", "w_ideal", "w_nonid", "deviation"};
    table.rows.assign(nr * nt, {});
    parallel_for(nr * nt, threads, [&](std::size_t idx) {
        const std::size_t ri = idx / nt;
        const std::size_t ti = idx % nt;
        const double ratio = config.ratios[ri];
        const double theta = config.thetas[ti];
        const auto channel = channel_for(config, config.forward, ratio * config.beta_s);
        const auto process = process_for(config, theta);
        const double w_ideal = mean_work_of(tpm::ideal_joint(process, config.beta_s), process);
        const double w_nonid =
            mean_work_of(tpm::nonideal_joint(process, config.beta_s, channel), process);
        table.rows[idx] = {theta, ratio, w_ideal, w_nonid, std::abs(w_nonid - w_ideal)};
    });

    // the sweep carries two families of exact points plus one anchor value;
    // fail loudly rather than emit a wrong table
    bool saw_anchor = false;
    for (const auto& row : table.rows) {
        const double theta = row[0], ratio = row[1];
        const double w_ideal = row[2], deviation = row[4];
        if (std::abs(theta - kPi / 2.0) < 1e-9 || std::abs(theta - 3.0 * kPi / 2.0) < 1e-9) {
            if (deviation > 1e-12 * config.e_s)
                throw CheckFailed("work sweep: estimate not exact at theta = pi/2 or 3 pi/2");
        }
        if (std::abs(ratio - 1.0) <= 1e-12 && std::abs(theta - kPi) < 1e-9) {
            const double rel = deviation / w_ideal;
            if (std::abs(rel - 0.49875) > 5e-4)
                throw CheckFailed("work sweep: relative deviation off its anchor at theta = pi");
            saw_anchor = true;
        }
    }
    if (!saw_anchor) throw CheckFailed("work sweep: anchor point missing from the grid");
    return table;
}

} // namespace

ComplexMatrix fourier_matrix(std::size_t d) {
    if (d == 0) throw DimensionMismatch("fourier_matrix: dimension must be positive");
    ComplexMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t n = 0; n < d; ++n) {
            const double arg = 2.0 * kPi * static_cast<double>(m * n % d) / static_cast<double>(d);
            f(m, n) = la::complex(norm * std::cos(arg), norm * std::sin(arg));
        }
    }
    return f;
}

Process rabi_process(double e_s, double theta, double omega) {
    if (!(e_s > 0.0)) throw CheckFailed("rabi_process: e_s must be positive");
    if (!(omega > 0.0)) throw CheckFailed("rabi_process: omega must be positive");
    if (theta < 0.0) throw CheckFailed("rabi_process: theta must be nonnegative");
    auto h = HermitianOperator::diagonal({-e_s / 2.0, +e_s / 2.0});
    auto rotation = [](double angle) {
        ComplexMatrix u(2, 2);
        const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
        u(0, 0) = c;
        u(0, 1) = -s;
        u(1, 0) = s;
        u(1, 1) = c;
        return u;
    };
    const double t_f = theta / omega;
    auto family = [rotation, omega](double t) { return rotation(omega * t); };
    return Process(h, h, rotation(theta), std::move(family), t_f);
}

HermitianOperator qubit_register(std::size_t n_qubits, double e_p) {
    if (n_qubits == 0 || n_qubits > 20)
        throw DimensionMismatch("qubit_register: supported sizes are 1..20 qubits");
    const std::size_t d = std::size_t{1} << n_qubits;
    std::vector<double> energies(d);
    const double half = static_cast<double>(n_qubits) / 2.0;
    for (std::size_t b = 0; b < d; ++b)
        energies[b] = e_p * (static_cast<double>(std::popcount(b)) - half);
    return HermitianOperator::diagonal(std::move(energies));
}

PointerModel pointer_for(const ScenarioConfig& config, double beta_p) {
    HermitianOperator h_p = config.pointer_qubits > 0
                                ? qubit_register(config.pointer_qubits, config.e_p)
                                : HermitianOperator::diagonal(config.pointer_energies);
    return PointerModel(std::move(h_p), beta_p, config.d_s);
}

MeasurementChannel channel_for(const ScenarioConfig& config, ChannelKind kind, double beta_p) {
    const auto assignment = kind == ChannelKind::minimal_energy
                                ? meas::assignment_minimal_energy(config.d_s)
                                : meas::assignment_min_invasive(config.d_s);
    return meas::build_channel(pointer_for(config, beta_p), assignment);
}

Process process_for(const ScenarioConfig& config, double theta) {
    switch (config.kind) {
    case ProcessKind::rabi:
        return rabi_process(config.e_s, theta, config.omega);
    case ProcessKind::fourier: {
        auto h = HermitianOperator::diagonal(config.system_energies);
        return Process(h, h, fourier_matrix(config.d_s));
    }
    case ProcessKind::custom_unitary: {
        auto h = HermitianOperator::diagonal(config.system_energies);
        return Process(h, h, load_unitary(config.unitary_file));
    }
    }
    throw ConfigError("unhandled process kind");
}

ScenarioConfig fig2_config() {
    nlohmann::json j;
    j["system"] = {{"d_s", 2}, {"e_s", 1.0}, {"beta_s", 1.0 / 30.0}};
    j["pointer"] = {{"n_qubits", 3},
                    {"e_p", 0.1},
                    {"ratios", {1.0, 150.0, 300.0, 450.0, 600.0, 750.0}}};
    nlohmann::json thetas = nlohmann::json::array();
    for (int k = 0; k <= 200; ++k) thetas.push_back(2.0 * kPi * static_cast<double>(k) / 200.0);
    j["process"] = {{"kind", "rabi"}, {"theta", thetas}, {"omega", 1.0}};
    j["channels"] = {{"forward", "minimal_energy"}, {"backward", "min_invasive"}};
    j["outputs"] = {{"csv", "fig2.csv"}};
    return parse_config(j.dump());
}

ScenarioConfig figA2_config() {
    nlohmann::json j = nlohmann::json::parse(fig2_config().canonical);
    j["outputs"] = {{"csv", "figA2.csv"}};
    return parse_config(j.dump());
}

ScenarioConfig figA3_config() {
    nlohmann::json j = nlohmann::json::parse(fig2_config().canonical);
    nlohmann::json ratios = nlohmann::json::array();
    for (int k = 0; k < 50; ++k)
        ratios.push_back(1.0 + 749.0 * static_cast<double>(k) / 49.0);
    j["pointer"]["ratios"] = ratios;
    j["process"]["theta"] = {kPi / 2.0, kPi};
    j["outputs"] = {{"csv", "figA3.csv"}};
    return parse_config(j.dump());
}

io::CsvTable reproduce_fig2(const ScenarioConfig& config, unsigned threads) {
    io::CsvTable table = work_sweep(config, threads);
    table.meta = meta_for(config, "fig2");
    return table;
}

io::CsvTable reproduce_figA2(const ScenarioConfig& config, unsigned threads) {
    const io::CsvTable full = work_sweep(config, threads);
    io::CsvTable table;
    table.meta = meta_for(config, "figA2");
    table.header = {"theta", "ratio", "w_nonid"};
    table.rows.reserve(full.rows.size());
    for (const auto& row : full.rows) table.rows.push_back({row[0], row[1], row[3]});
    return table;
}

io::CsvTable reproduce_figA3(const ScenarioConfig& config, unsigned threads) {
    check_fig_params(config);
    if (config.thetas.size() != 2 || std::abs(config.thetas[0] - kPi / 2.0) > 1e-12 ||
        std::abs(config.thetas[1] - kPi) > 1e-12)
        throw ConfigMismatch("cost sweep needs theta = {pi/2, pi}");
    const std::size_t nr = config.ratios.size();
    if (nr < 2 || !std::is_sorted(config.ratios.begin(), config.ratios.end()) ||
        std::abs(config.ratios.front() - 1.0) > 1e-9 ||
        std::abs(config.ratios.back() - 750.0) > 1e-9)
        throw ConfigMismatch("cost sweep needs an ascending ratio grid from 1 to 750");

    io::CsvTable table;
    table.meta = meta_for(config, "figA3");
    table.header = {"ratio", "theta", "de_tpm", "de_cool"};
    table.rows.assign(nr * 2, {});
    parallel_for(nr * 2, threads, [&](std::size_t idx) {
        const std::size_t ri = idx / 2;
        const std::size_t ti = idx % 2;
        const double ratio = config.ratios[ri];
        const double theta = config.thetas[ti];
        const auto channel = channel_for(config, config.forward, ratio * config.beta_s);
        const auto process = process_for(config, theta);
        const double de_tpm =
            protocol_measurement_cost(process, config.beta_s, channel) / config.e_s;
        const double de_cool = cooling_for(config, ratio) / config.e_s;
        table.rows[idx] = {ratio, theta, de_tpm, de_cool};
    });

    double max_cost = 0.0, max_theta_gap = 0.0;
    for (std::size_t ri = 0; ri < nr; ++ri) {
        const double a = table.rows[2 * ri][2];
        const double b = table.rows[2 * ri + 1][2];
        if (a <= 0.0 || b <= 0.0)
            throw CheckFailed("cost sweep: measurement bill must be strictly positive");
        max_cost = std::max({max_cost, a, b});
        max_theta_gap = std::max(max_theta_gap, std::abs(a - b));
    }
    if (table.rows[2 * (nr - 1)][3] <= 2.0)
        throw CheckFailed("cost sweep: cooling bill at ratio 750 should exceed twice the gap");
    if (max_theta_gap > 0.05 * max_cost)
        throw CheckFailed("cost sweep: angle dependence of the measurement bill too large");
    return table;
}

namespace {

// Per-row evaluation context for the generic sweep; expensive reports are
// computed once and shared between the quantities that read them.
struct RowCtx {
    const ScenarioConfig& cfg;
    double theta;
    double ratio;
    double beta_p;
    Process process;
    MeasurementChannel channel0;
    std::optional<MeasurementChannel> channelf;
    std::optional<double> w_id, w_non;
    std::optional<fluct::CrooksReport> crooks;
    std::optional<fluct::DissipationReport> dissipation;

    RowCtx(const ScenarioConfig& c, double theta_in, double ratio_in)
        : cfg(c), theta(theta_in), ratio(ratio_in), beta_p(ratio_in * c.beta_s),
          process(process_for(c, theta_in)), channel0(channel_for(c, c.forward, beta_p)) {}

    const MeasurementChannel& final_channel() {
        if (!channelf) channelf.emplace(channel_for(cfg, cfg.backward, beta_p));
        return *channelf;
    }
    double w_ideal() {
        if (!w_id) w_id = mean_work_of(tpm::ideal_joint(process, cfg.beta_s), process);
        return *w_id;
    }
    double w_nonid() {
        if (!w_non)
            w_non = mean_work_of(tpm::nonideal_joint(process, cfg.beta_s, channel0), process);
        return *w_non;
    }
    const fluct::CrooksReport& crooks_report() {
        if (!crooks)
            crooks = fluct::crooks_report(process, cfg.beta_s, channel0, final_channel());
        return *crooks;
    }
    const fluct::DissipationReport& dissipation_report() {
        if (!dissipation) dissipation = fluct::dissipation_identity(process, cfg.beta_s, channel0);
        return *dissipation;
    }

    double value(const std::string& name) {
        if (name == "w_ideal") return w_ideal();
        if (name == "w_nonid") return w_nonid();
        if (name == "deviation") return std::abs(w_nonid() - w_ideal());
        if (name == "deviation_bound") return tpm::deviation_bound(process, channel0);
        if (name == "c_max") return channel0.c_max();
        if (name == "chi") return fluct::chi(process, cfg.beta_s, channel0);
        if (name == "jarzynski") return fluct::jarzynski_functional(process, cfg.beta_s, channel0);
        if (name == "second_law_bound")
            return fluct::second_law_bound(process, cfg.beta_s, channel0).bound;
        if (name == "mean_sigma") return crooks_report().mean_sigma;
        if (name == "max_crooks_violation") return crooks_report().max_relative_violation;
        if (name == "delta_s0") return dissipation_report().delta_s0;
        if (name == "dissipation_residual") return dissipation_report().residual;
        if (name == "fannes_bound")
            return fluct::fannes_bound(channel0, process, cfg.beta_s).bound;
        if (name == "de_meas") {
            const auto tau0 = thermo::gibbs(process.h0(), cfg.beta_s);
            return meas::measurement_energy_cost(tau0.matrix(), process.h0(), channel0.pointer(),
                                                 channel0.assignment());
        }
        if (name == "de_tpm") return protocol_measurement_cost(process, cfg.beta_s, channel0);
        if (name == "de_cool") return cooling_for(cfg, ratio);
        throw ConfigError("unknown quantity \"" + name + "\"");
    }
};

} // namespace

io::CsvTable run_scenario(const ScenarioConfig& config, unsigned threads) {
    static const std::vector<std::string> kDefault = {"w_ideal", "w_nonid", "deviation"};
    const std::vector<std::string>& wanted =
        config.quantities.empty() ? kDefault : config.quantities;
    const std::vector<double> thetas = config.thetas.empty() ? std::vector<double>{0.0}
                                                             : config.thetas;
    const std::size_t nt = thetas.size();
    const std::size_t nr = config.ratios.size();

    io::CsvTable table;
    table.meta = meta_for(config);
    table.header = {"theta", "ratio"};
    table.header.insert(table.header.end(), wanted.begin(), wanted.end());
    table.rows.assign(nr * nt, {});
    parallel_for(nr * nt, threads, [&](std::size_t idx) {
        const std::size_t ri = idx / nt;
        const std::size_t ti = idx % nt;
        RowCtx ctx(config, thetas[ti], config.ratios[ri]);
        std::vector<double> row = {ctx.theta, ctx.ratio};
        row.reserve(2 + wanted.size());
        for (const auto& name : wanted) row.push_back(ctx.value(name));
        table.rows[idx] = std::move(row);
    });
    return table;
}

McEstimate monte_carlo_tpm(const Process& process, double beta, const MeasurementChannel& channel0,
                           const MeasurementChannel& channelf, std::size_t samples,
                           std::uint64_t seed) {
    if (samples < 10000)
        throw CheckFailed("monte_carlo_tpm: need at least 1e4 samples for a usable stderr");
    if (channelf.d_s() != process.dim())
        throw DimensionMismatch("monte_carlo_tpm: final channel dimension");

    const auto joint = tpm::nonideal_joint(process, beta, channel0);
    const std::size_t d = joint.dim();
    const auto& e0 = process.h0().eigenvalues();
    const auto& ef = process.hf().eigenvalues();
    std::vector<double> cumulative;
    std::vector<double> work;
    cumulative.reserve(d * d);
    work.reserve(d * d);
    double total = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            const double p = joint(n, m);
            if (p <= 0.0) continue;
            total += p;
            cumulative.push_back(total);
            work.push_back(ef[m] - e0[n]);
        }
    }

    double sw = 0.0, sww = 0.0, se = 0.0, see = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = rng::uniform(seed, i) * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t cell =
            std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                  cumulative.size() - 1);
        const double w = work[cell];
        const double e = std::exp(-beta * w);
        sw += w;
        sww += w * w;
        se += e;
        see += e * e;
    }
    const double n = static_cast<double>(samples);
    auto stderr_of = [n](double s1, double s2) {
        const double mean = s1 / n;
        const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
        return std::sqrt(var / n);
    };
    McEstimate out;
    out.mean_w = sw / n;
    out.mean_w_stderr = stderr_of(sw, sww);
    out.jarzynski = se / n;
    out.jarzynski_stderr = stderr_of(se, see);
    out.samples = samples;
    out.seed = seed;
    return out;
}

} // namespace qtpm::scen
