#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qtpm/errors.hpp"
#include "qtpm/scenarios.hpp"
#include "qtpm/verify.hpp"
#include "qtpm/version.hpp"

namespace qtpm::scen {

namespace {

void emit_table(const io::CsvTable& table, const std::string& path) {
    if (path.empty()) {
        std::cout << io::render(table);
        return;
    }
    io::write_csv(table, path);
    std::cout << "wrote " << path << "\n";
}

void require_single_point(const ScenarioConfig& config, const char* verb) {
    if (config.thetas.size() > 1 || config.ratios.size() > 1)
        throw ConfigError(std::string(verb) +
                          " expects singleton grids; use sweep for parameter grids");
}

int run_mc(const ScenarioConfig& config, std::uint64_t seed, const std::string& out) {
    if (!config.has_mc) throw ConfigError("config has no mc section");
    const double theta = config.thetas.empty() ? 0.0 : config.thetas.front();
    const double beta_p = config.ratios.front() * config.beta_s;
    const auto process = process_for(config, theta);
    const auto channel0 = channel_for(config, config.forward, beta_p);
    const auto channelf = channel_for(config, config.backward, beta_p);

    const auto est = monte_carlo_tpm(process, config.beta_s, channel0, channelf,
                                     config.mc_samples, seed);
    const double w_ref = tpm::mean_work(tpm::work_distribution(
        tpm::nonideal_joint(process, config.beta_s, channel0), process.h0(), process.hf()));
    const double j_ref = fluct::jarzynski_functional(process, config.beta_s, channel0);

    std::printf("samples        %zu\n", est.samples);
    std::printf("seed           %llu\n", static_cast<unsigned long long>(est.seed));
    std::printf("mean work      %.10g +- %.3g  (analytic %.10g, %.2f se off)\n", est.mean_w,
                est.mean_w_stderr, w_ref, std::abs(est.mean_w - w_ref) / est.mean_w_stderr);
    std::printf("exp(-beta W)   %.10g +- %.3g  (analytic %.10g, %.2f se off)\n", est.jarzynski,
                est.jarzynski_stderr, j_ref,
                std::abs(est.jarzynski - j_ref) / est.jarzynski_stderr);

    if (!out.empty()) {
        io::CsvTable table;
        table.meta = {std::string("tool: qtpm ") + kVersion,
                      "config: " + io::hex64(config_hash(config))};
        table.header = {"mean_w", "mean_w_stderr", "jarzynski", "jarzynski_stderr", "samples",
                        "seed"};
        table.rows = {{est.mean_w, est.mean_w_stderr, est.jarzynski, est.jarzynski_stderr,
                       static_cast<double>(est.samples), static_cast<double>(est.seed)}};
        emit_table(table, out);
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"two-point work estimation with finite-resource readout"};
    app.set_version_flag("--version", std::string("qtpm ") + kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string out_dir = ".";
    std::string figure_name;
    unsigned threads = 1;
    bool quick = false;
    std::uint64_t seed_override = 0;
    bool seed_given = false;

    auto* cmd_run = app.add_subcommand("run", "evaluate one configured scenario point");
    cmd_run->add_option("config", config_path, "JSON scenario config")->required();
    cmd_run->add_option("--out", out_path, "CSV output path (default: stdout)");

    auto* cmd_sweep = app.add_subcommand("sweep", "evaluate the configured parameter grids");
    cmd_sweep->add_option("config", config_path, "JSON scenario config")->required();
    cmd_sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
    cmd_sweep->add_option("--parallel", threads, "worker thread count")
        ->check(CLI::PositiveNumber);

    auto* cmd_figure =
        app.add_subcommand("figure", "rebuild a bundled data set (fig2, figA2, figA3)");
    cmd_figure->add_option("name", figure_name, "fig2 | figA2 | figA3")->required();
    cmd_figure->add_option("--out", out_dir, "output directory");
    cmd_figure->add_option("--parallel", threads, "worker thread count")
        ->check(CLI::PositiveNumber);

    auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
    cmd_verify->add_flag("--quick", quick, "reduced draw counts");

    auto* cmd_mc = app.add_subcommand("mc", "sampling estimate vs analytic values");
    cmd_mc->add_option("config", config_path, "JSON scenario config with an mc section")
        ->required();
    cmd_mc->add_option("--seed", seed_override, "override the configured seed")
        ->each([&](const std::string&) { seed_given = true; });
    cmd_mc->add_option("--out", out_path, "also write the estimates as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_run->parsed()) {
            auto config = load_config(config_path);
            require_single_point(config, "run");
            emit_table(run_scenario(config), out_path.empty() ? config.csv_path : out_path);
        } else if (cmd_sweep->parsed()) {
            auto config = load_config(config_path);
            emit_table(run_scenario(config, threads),
                       out_path.empty() ? config.csv_path : out_path);
        } else if (cmd_figure->parsed()) {
            ScenarioConfig config;
            io::CsvTable table;
            if (figure_name == "fig2") {
                config = fig2_config();
                table = reproduce_fig2(config, threads);
            } else if (figure_name == "figA2") {
                config = figA2_config();
                table = reproduce_figA2(config, threads);
            } else if (figure_name == "figA3") {
                config = figA3_config();
                table = reproduce_figA3(config, threads);
            } else {
                throw ConfigError("unknown figure '" + figure_name +
                                  "' (expected fig2, figA2 or figA3)");
            }
            emit_table(table, out_dir + "/" + config.csv_path);
        } else if (cmd_verify->parsed()) {
            const auto results = verify::run_acceptance(quick);
            std::cout << verify::format_report(results);
            return verify::all_passed(results) ? 0 : 2;
        } else if (cmd_mc->parsed()) {
            auto config = load_config(config_path);
            require_single_point(config, "mc");
            return run_mc(config, seed_given ? seed_override : config.mc_seed, out_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qtpm::scen
