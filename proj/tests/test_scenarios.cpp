#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qtpm/csv.hpp"
#include "qtpm/rng.hpp"
#include "qtpm/scenarios.hpp"
#include "qtpm/thermo.hpp"
#include "qtpm/verify.hpp"

using namespace qtpm;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    REQUIRE(f.good());
    f << text;
}

int cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"qtpm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return scen::run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kSingletonConfig = R"({
  "system": {"beta_s": 0.0333333333333333329, "e_s": 1.0},
  "pointer": {"n_qubits": 3, "e_p": 0.1, "ratios": [1.0]},
  "process": {"kind": "rabi", "theta": 3.14159265358979323846},
  "channels": {"forward": "min_invasive", "backward": "min_invasive"},
  "outputs": {"csv": "single.csv",
              "quantities": ["w_ideal", "w_nonid", "deviation", "deviation_bound", "c_max",
                             "chi", "jarzynski", "second_law_bound", "mean_sigma",
                             "max_crooks_violation", "delta_s0", "fannes_bound",
                             "dissipation_residual", "de_meas", "de_tpm", "de_cool"]}
})";

} // namespace

TEST_CASE("counter generator reproduces the splitmix64 vectors") {
    CHECK(rng::at(0, 0) == 0xE220A8397B1DCDAFull);
    CHECK(rng::at(0, 1) == 0x6E789E6AA1B965F4ull);
    CHECK(rng::at(0, 2) == 0x06C45D188009454Full);

    rng::Stream s(42);
    const double a = s.next();
    const double b = s.next();
    CHECK(a == rng::uniform(42, 0));
    CHECK(b == rng::uniform(42, 1));
    CHECK(s.bits() == rng::at(42, 2));
    CHECK(a >= 0.0);
    CHECK(a < 1.0);

    rng::Stream t(42);
    const double lo = -2.0, hi = 5.0;
    const double r = t.range(lo, hi);
    CHECK(r >= lo);
    CHECK(r < hi);
    CHECK(r == lo + (hi - lo) * a);
}

TEST_CASE("csv rendering is byte stable") {
    io::CsvTable table;
    table.meta = {"a"};
    table.header = {"x", "y"};
    table.rows = {{1.5, 2.0 / 3.0}};
    CHECK(io::render(table) == "# a\nx,y\n1.5,0.66666666666666663\n");

    table.rows.push_back({1.0});
    CHECK_THROWS_AS(io::render(table), CheckFailed);

    CHECK(io::fnv1a64("") == 0xCBF29CE484222325ull);
    CHECK(io::fnv1a64("a") != io::fnv1a64("b"));
    CHECK(io::hex64(0xCBF29CE484222325ull) == "cbf29ce484222325");
}

TEST_CASE("csv writing is atomic and round trips") {
    io::CsvTable table;
    table.meta = {"tool: test"};
    table.header = {"v"};
    table.rows = {{0.1}};
    io::write_csv(table, "roundtrip.csv");
    CHECK(slurp("roundtrip.csv") == io::render(table));
    CHECK_THROWS_AS(io::write_csv(table, "no_such_dir/out.csv"), IoError);
    std::remove("roundtrip.csv");
}

TEST_CASE("fourier transition profile is flat") {
    for (std::size_t d : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
        const auto f = scen::fourier_matrix(d);
        CHECK(f.unitarity_defect() <= 1e-14);
        for (const auto& e : f.entries())
            CHECK(std::abs(e) == doctest::Approx(1.0 / std::sqrt(double(d))).epsilon(1e-14));
    }
}

TEST_CASE("qubit register energies count excitations") {
    const auto h = scen::qubit_register(3, 0.2);
    REQUIRE(h.dim() == 8);
    for (std::size_t b = 0; b < 8; ++b) {
        const double expected = 0.2 * (static_cast<double>(std::popcount(b)) - 1.5);
        CHECK(h.eigenvalues()[b] == doctest::Approx(expected).epsilon(1e-15));
    }
    CHECK_THROWS_AS(scen::qubit_register(0, 0.2), DimensionMismatch);
}

TEST_CASE("driven qubit carries its time family") {
    const auto p = scen::rabi_process(2.0, 1.2, 3.0);
    CHECK(p.t_f() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(p.family(p.t_f()).max_abs_diff(p.u()) <= 1e-15);
    CHECK(p.h0().eigenvalues() == std::vector<double>{-1.0, 1.0});
    CHECK(p.hf().eigenvalues() == std::vector<double>{-1.0, 1.0});
    CHECK_THROWS_AS(scen::rabi_process(1.0, 1.0, 0.0), CheckFailed);
    CHECK_THROWS_AS(scen::rabi_process(-1.0, 1.0, 1.0), CheckFailed);
}

TEST_CASE("config parsing round trips the schema") {
    const auto config = scen::parse_config(kSingletonConfig);
    CHECK(config.d_s == 2);
    CHECK(config.e_s == 1.0);
    CHECK(config.beta_s == doctest::Approx(1.0 / 30.0).epsilon(1e-16));
    CHECK(config.pointer_qubits == 3);
    CHECK(config.e_p == 0.1);
    CHECK(config.ratios == std::vector<double>{1.0});
    CHECK(config.kind == scen::ProcessKind::rabi);
    REQUIRE(config.thetas.size() == 1);
    CHECK(config.forward == scen::ChannelKind::min_invasive);
    CHECK(config.csv_path == "single.csv");
    CHECK(config.quantities.size() == 16);
    CHECK_FALSE(config.has_mc);

    // hashing is a function of the canonical form only
    const auto again = scen::parse_config(kSingletonConfig);
    CHECK(scen::config_hash(config) == scen::config_hash(again));
    auto other = std::string(kSingletonConfig);
    other.replace(other.find("3.14159265358979323846"), 22, "1.00000000000000000000");
    CHECK(scen::config_hash(scen::parse_config(other)) != scen::config_hash(config));
}

TEST_CASE("config errors carry diagnostics") {
    auto message_of = [](const std::string& text) {
        try {
            scen::parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    CHECK(message_of("{,}").find("line 1") != std::string::npos);
    CHECK(message_of("[1]").find("object") != std::string::npos);
    CHECK_THROWS_AS(scen::parse_config(R"({"system": {"beta_s": 1.0}, "bogus": {}})"),
                    ConfigError);
    // beta_s is mandatory
    CHECK_THROWS_AS(scen::parse_config(R"({"system": {"e_s": 1.0}})"), ConfigError);
    // pointer needs exactly one spectrum description
    CHECK_THROWS_AS(scen::parse_config(R"({
        "system": {"beta_s": 1.0},
        "pointer": {"n_qubits": 2, "e_p": 0.1, "energies": [0, 1, 2, 3], "ratios": [1]}
    })"),
                    ConfigError);
    // unknown quantity names are rejected up front
    CHECK_THROWS_AS(scen::parse_config(R"({
        "system": {"beta_s": 1.0},
        "pointer": {"n_qubits": 2, "e_p": 0.1, "ratios": [1]},
        "outputs": {"quantities": ["w_idael"]}
    })"),
                    ConfigError);
    // mc demands an explicit seed
    CHECK_THROWS_AS(scen::parse_config(R"({
        "system": {"beta_s": 1.0},
        "pointer": {"n_qubits": 2, "e_p": 0.1, "ratios": [1]},
        "mc": {"samples": 100000}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(scen::load_config("definitely_missing.json"), ConfigError);
}

TEST_CASE("work sweep reproduces the anchor row") {
    const auto table = scen::reproduce_fig2(scen::fig2_config());
    CHECK(table.header ==
          std::vector<std::string>{"theta", "ratio", "w_ideal", "w_nonid", "deviation"});
    REQUIRE(table.rows.size() == 6 * 201);
    REQUIRE(table.meta.size() == 3);
    CHECK(table.meta[0] == "tool: qtpm 0.1.0");
    CHECK(table.meta[1] == "figure: fig2");

    // ratio 1 block comes first; theta = pi sits at grid index 100
    const auto& row = table.rows[100];
    CHECK(row[0] == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(row[1] == 1.0);
    CHECK(std::abs(row[2] - 0.016665123628238632) <= 1e-14);
    CHECK(std::abs(row[3] - 0.0083533931800779948) <= 1e-14);
    CHECK(std::abs(row[4] - std::abs(row[3] - row[2])) <= 1e-17);
    CHECK(std::abs(row[4] / row[2] - 0.49875000231481148) <= 1e-9);

    CHECK_THROWS_AS(scen::reproduce_fig2(scen::figA3_config()), ConfigMismatch);
}

TEST_CASE("figA2 sweep projects the estimate column") {
    const auto table = scen::reproduce_figA2(scen::figA2_config());
    CHECK(table.header == std::vector<std::string>{"theta", "ratio", "w_nonid"});
    REQUIRE(table.rows.size() == 6 * 201);
    CHECK(std::abs(table.rows[100][2] - 0.0083533931800779948) <= 1e-14);
}

TEST_CASE("cost sweep covers both bills") {
    const auto table = scen::reproduce_figA3(scen::figA3_config());
    CHECK(table.header == std::vector<std::string>{"ratio", "theta", "de_tpm", "de_cool"});
    REQUIRE(table.rows.size() == 100);
    CHECK(table.rows.front()[0] == 1.0);
    CHECK(table.rows.front()[3] == 0.0);
    CHECK(table.rows.back()[0] == 750.0);
    CHECK(table.rows.back()[3] == doctest::Approx(93.9745).epsilon(1e-4));

    double max_tpm = 0.0, max_gap = 0.0;
    for (std::size_t r = 0; r < table.rows.size(); r += 2) {
        CHECK(table.rows[r][1] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
        CHECK(table.rows[r + 1][1] == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(table.rows[r][2] > 0.0);
        CHECK(table.rows[r + 1][2] > 0.0);
        max_tpm = std::max({max_tpm, table.rows[r][2], table.rows[r + 1][2]});
        max_gap = std::max(max_gap, std::abs(table.rows[r][2] - table.rows[r + 1][2]));
    }
    CHECK(max_gap / max_tpm == doctest::Approx(0.03889745820847106).epsilon(1e-5));
}

TEST_CASE("scenario runner computes every quantity consistently") {
    const auto config = scen::parse_config(kSingletonConfig);
    const auto table = scen::run_scenario(config);
    REQUIRE(table.rows.size() == 1);
    REQUIRE(table.header.size() == 18); // theta, ratio + 16 quantities
    const auto& row = table.rows[0];
    auto value = [&](const char* name) {
        for (std::size_t j = 0; j < table.header.size(); ++j)
            if (table.header[j] == name) return row[j];
        REQUIRE(false);
        return 0.0;
    };

    CHECK(value("theta") == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(value("ratio") == 1.0);
    CHECK(std::abs(value("deviation") - std::abs(value("w_nonid") - value("w_ideal"))) <= 1e-17);
    CHECK(value("deviation") <= value("deviation_bound"));
    CHECK(std::abs(value("c_max") - 0.5012499976851896) <= 1e-15);
    CHECK(std::abs(value("chi") - 1.0) <= 1e-12); // cyclic readout is doubly stochastic
    CHECK(value("jarzynski") > 0.0);
    CHECK(value("w_nonid") >= value("second_law_bound") - 1e-12);
    CHECK(value("mean_sigma") >= 0.0);
    // forward/backward tables differ by detailed balance alone at a full flip
    CHECK(value("max_crooks_violation") ==
          doctest::Approx(std::exp(1.0 / 30.0) - 1.0).epsilon(1e-10));
    CHECK(value("delta_s0") <= value("fannes_bound") + 1e-10);
    CHECK(value("dissipation_residual") <= 1e-10);
    CHECK(value("de_meas") > 0.0);
    CHECK(value("de_tpm") > 0.0);
    CHECK(value("de_cool") == 0.0);
}

TEST_CASE("sampling oracle is deterministic and matches the analytic table") {
    const auto config = scen::fig2_config();
    const auto process = scen::rabi_process(config.e_s, kPi, 1.0);
    const auto channel0 = scen::channel_for(config, config.forward, config.beta_s);
    const auto channelf = scen::channel_for(config, config.backward, config.beta_s);

    const auto a = scen::monte_carlo_tpm(process, config.beta_s, channel0, channelf, 100000, 9001);
    const auto b = scen::monte_carlo_tpm(process, config.beta_s, channel0, channelf, 100000, 9001);
    CHECK(a.mean_w == b.mean_w);
    CHECK(a.mean_w_stderr == b.mean_w_stderr);
    CHECK(a.jarzynski == b.jarzynski);
    CHECK(a.jarzynski_stderr == b.jarzynski_stderr);

    const double w_ref = tpm::mean_work(tpm::work_distribution(
        tpm::nonideal_joint(process, config.beta_s, channel0), process.h0(), process.hf()));
    CHECK(std::abs(a.mean_w - w_ref) <= 4.0 * a.mean_w_stderr);
    const double j_ref = fluct::jarzynski_functional(process, config.beta_s, channel0);
    CHECK(std::abs(a.jarzynski - j_ref) <= 4.0 * a.jarzynski_stderr);

    CHECK_THROWS_AS(
        scen::monte_carlo_tpm(process, config.beta_s, channel0, channelf, 100, 1),
        CheckFailed);
}

TEST_CASE("cli round trip") {
    spit("cli_config.json", kSingletonConfig);
    CHECK(cli({"run", "cli_config.json", "--out", "cli_out.csv"}) == 0);
    const auto text = slurp("cli_out.csv");
    CHECK(text.rfind("# tool: qtpm", 0) == 0);
    CHECK(text.find("w_ideal") != std::string::npos);
    std::remove("cli_out.csv");
    std::remove("cli_config.json");
}

TEST_CASE("cli rejects broken input with exit code 1") {
    spit("cli_bad.json", "{\"system\": ");
    CHECK(cli({"run", "cli_bad.json"}) == 1);
    CHECK(cli({"run", "cli_missing.json"}) == 1);
    CHECK(cli({"figure", "figX"}) == 1);
    CHECK(cli({"mc", "cli_bad.json"}) == 1);
    CHECK(cli({}) != 0); // a subcommand is mandatory
    std::remove("cli_bad.json");
}

TEST_CASE("cli sweep is identical serial and parallel") {
    const char* grid_config = R"({
      "system": {"beta_s": 0.0333333333333333329},
      "pointer": {"n_qubits": 3, "e_p": 0.1, "ratios": [1.0, 300.0]},
      "process": {"kind": "rabi", "theta": [0.5, 1.0, 1.5, 2.0, 2.5]},
      "outputs": {"csv": "grid.csv"}
    })";
    spit("cli_grid.json", grid_config);
    CHECK(cli({"sweep", "cli_grid.json", "--out", "grid_serial.csv"}) == 0);
    CHECK(cli({"sweep", "cli_grid.json", "--parallel", "3", "--out", "grid_parallel.csv"}) == 0);
    CHECK(slurp("grid_serial.csv") == slurp("grid_parallel.csv"));
    std::remove("grid_serial.csv");
    std::remove("grid_parallel.csv");
    std::remove("cli_grid.json");
}

TEST_CASE("cli mc compares against the analytic values") {
    const char* mc_config = R"({
      "system": {"beta_s": 0.0333333333333333329},
      "pointer": {"n_qubits": 3, "e_p": 0.1, "ratios": [1.0]},
      "process": {"kind": "rabi", "theta": 3.14159265358979323846},
      "mc": {"samples": 20000, "seed": 11}
    })";
    spit("cli_mc.json", mc_config);
    CHECK(cli({"mc", "cli_mc.json", "--out", "mc_out.csv"}) == 0);
    const auto text = slurp("mc_out.csv");
    CHECK(text.find("mean_w") != std::string::npos);
    std::remove("mc_out.csv");
    std::remove("cli_mc.json");
}

TEST_CASE("figure pipeline writes through the cli") {
    CHECK(cli({"figure", "figA3", "--out", "."}) == 0);
    const auto text = slurp("figA3.csv");
    CHECK(text.rfind("# tool: qtpm", 0) == 0);
    CHECK(text.find("figure: figA3") != std::string::npos);
    CHECK(text.find("de_cool") != std::string::npos);
    std::remove("figA3.csv");
}
