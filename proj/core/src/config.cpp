#include "qtpm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qtpm/csv.hpp"
#include "qtpm/errors.hpp"

namespace qtpm::scen {

using nlohmann::json;

namespace {

// byte offset (1-based, as reported by the parser) -> "line L, column C"
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col;
    return os.str();
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const json& member(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing required key \"") + key + "\"");
    return *it;
}

double number_at(const json& j, const std::string& where, const char* key) {
    const json& v = member(j, where, key);
    if (!v.is_number()) fail(where, std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

double positive_at(const json& j, const std::string& where, const char* key) {
    const double v = number_at(j, where, key);
    if (!(v > 0.0) || !std::isfinite(v)) fail(where, std::string("\"") + key + "\" must be positive and finite");
    return v;
}

std::vector<double> number_list(const json& v, const std::string& where, const char* key) {
    if (!v.is_array() || v.empty()) fail(where, std::string("\"") + key + "\" must be a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) fail(where, std::string("\"") + key + "\" entries must be numbers");
        const double d = x.get<double>();
        if (!std::isfinite(d)) fail(where, std::string("\"") + key + "\" entries must be finite");
        out.push_back(d);
    }
    return out;
}

const char* const kQuantities[] = {
    "w_ideal",      "w_nonid",       "deviation",   "deviation_bound",
    "c_max",        "chi",           "jarzynski",   "second_law_bound",
    "mean_sigma",   "max_crooks_violation",         "delta_s0",
    "fannes_bound", "dissipation_residual",         "de_meas",
    "de_tpm",       "de_cool",
};

bool known_quantity(const std::string& name) {
    for (const char* q : kQuantities)
        if (name == q) return true;
    return false;
}

void parse_system(const json& j, ScenarioConfig& out) {
    const std::string where = "system";
    if (!j.is_object()) fail(where, "must be an object");
    out.beta_s = positive_at(j, where, "beta_s");
    if (j.contains("e_s")) out.e_s = positive_at(j, where, "e_s");
    if (j.contains("energies")) {
        out.system_energies = number_list(j["energies"], where, "energies");
        out.d_s = out.system_energies.size();
        if (j.contains("d_s") && j["d_s"].get<std::size_t>() != out.d_s)
            fail(where, "\"d_s\" disagrees with the length of \"energies\"");
        if (out.d_s < 2) fail(where, "need at least two levels");
        if (out.d_s == 2 && !j.contains("e_s"))
            out.e_s = std::abs(out.system_energies[1] - out.system_energies[0]);
    } else {
        if (j.contains("d_s")) out.d_s = j["d_s"].get<std::size_t>();
        if (out.d_s != 2) fail(where, "explicit \"energies\" required when d_s != 2");
        out.system_energies = {-out.e_s / 2.0, +out.e_s / 2.0};
    }
}

void parse_pointer(const json& j, ScenarioConfig& out) {
    const std::string where = "pointer";
    if (!j.is_object()) fail(where, "must be an object");
    const bool qubits = j.contains("n_qubits");
    const bool spectrum = j.contains("energies");
    if (qubits == spectrum) fail(where, "give exactly one of \"n_qubits\" or \"energies\"");
    if (qubits) {
        out.pointer_qubits = j["n_qubits"].get<std::size_t>();
        if (out.pointer_qubits == 0) fail(where, "\"n_qubits\" must be at least 1");
        out.e_p = positive_at(j, where, "e_p");
    } else {
        out.pointer_energies = number_list(j["energies"], where, "energies");
    }
    const bool has_ratios = j.contains("ratios");
    const bool has_beta_p = j.contains("beta_p");
    if (has_ratios == has_beta_p) fail(where, "give exactly one of \"ratios\" or \"beta_p\"");
    if (has_ratios) {
        out.ratios = number_list(j["ratios"], where, "ratios");
        for (double r : out.ratios)
            if (r < 0.0) fail(where, "\"ratios\" entries must be nonnegative");
    } else {
        const double bp = number_at(j, where, "beta_p");
        if (bp < 0.0 || !std::isfinite(bp)) fail(where, "\"beta_p\" must be nonnegative and finite");
        out.ratios = {bp / out.beta_s};
    }
}

void parse_process(const json& j, ScenarioConfig& out) {
    const std::string where = "process";
    if (!j.is_object()) fail(where, "must be an object");
    const std::string kind = member(j, where, "kind").get<std::string>();
    if (kind == "rabi") {
        out.kind = ProcessKind::rabi;
    } else if (kind == "fourier") {
        out.kind = ProcessKind::fourier;
    } else if (kind == "custom_unitary") {
        out.kind = ProcessKind::custom_unitary;
    } else {
        fail(where, "\"kind\" must be rabi, fourier or custom_unitary");
    }
    if (j.contains("theta")) {
        const json& th = j["theta"];
        if (th.is_number()) {
            out.thetas = {th.get<double>()};
        } else {
            out.thetas = number_list(th, where, "theta");
        }
    }
    if (out.kind == ProcessKind::rabi) {
        if (out.thetas.empty()) fail(where, "rabi needs \"theta\" (number or non-empty array)");
        if (out.d_s != 2) fail(where, "rabi drives a qubit; system.d_s must be 2");
        if (j.contains("omega")) out.omega = positive_at(j, where, "omega");
    } else if (!out.thetas.empty()) {
        fail(where, "\"theta\" only applies to the rabi kind");
    }
    if (j.contains("t_f")) {
        out.t_f = number_at(j, where, "t_f");
        if (out.t_f < 0.0) fail(where, "\"t_f\" must be nonnegative");
    }
    if (out.kind == ProcessKind::custom_unitary) {
        out.unitary_file = member(j, where, "unitary_file").get<std::string>();
        if (out.unitary_file.empty()) fail(where, "\"unitary_file\" must not be empty");
    }
}

ChannelKind channel_kind(const json& v, const std::string& where, const char* key) {
    const std::string s = v.get<std::string>();
    if (s == "minimal_energy") return ChannelKind::minimal_energy;
    if (s == "min_invasive") return ChannelKind::min_invasive;
    fail(where, std::string("\"") + key + "\" must be minimal_energy or min_invasive");
}

void parse_channels(const json& j, ScenarioConfig& out) {
    const std::string where = "channels";
    if (!j.is_object()) fail(where, "must be an object");
    if (j.contains("forward")) out.forward = channel_kind(j["forward"], where, "forward");
    if (j.contains("backward")) out.backward = channel_kind(j["backward"], where, "backward");
}

void parse_outputs(const json& j, ScenarioConfig& out) {
    const std::string where = "outputs";
    if (!j.is_object()) fail(where, "must be an object");
    if (j.contains("csv")) out.csv_path = j["csv"].get<std::string>();
    if (j.contains("quantities")) {
        const json& q = j["quantities"];
        if (!q.is_array()) fail(where, "\"quantities\" must be an array of names");
        for (const auto& name : q) {
            const std::string s = name.get<std::string>();
            if (!known_quantity(s)) fail(where, "unknown quantity \"" + s + "\"");
            out.quantities.push_back(s);
        }
    }
}

void parse_mc(const json& j, ScenarioConfig& out) {
    const std::string where = "mc";
    if (!j.is_object()) fail(where, "must be an object");
    out.has_mc = true;
    const json& samples = member(j, where, "samples");
    if (!samples.is_number_unsigned() || samples.get<std::uint64_t>() == 0)
        fail(where, "\"samples\" must be a positive integer");
    out.mc_samples = samples.get<std::size_t>();
    const json& seed = member(j, where, "seed");
    if (!seed.is_number_unsigned()) fail(where, "\"seed\" must be an unsigned integer");
    out.mc_seed = seed.get<std::uint64_t>();
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON at " + locate(text, e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("top level must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "system" && key != "pointer" && key != "process" && key != "channels" &&
            key != "outputs" && key != "mc")
            throw ConfigError("unknown top-level key \"" + key + "\"");
    }
    ScenarioConfig out;
    try {
        parse_system(member(j, "top level", "system"), out);
        parse_pointer(member(j, "top level", "pointer"), out);
        parse_process(member(j, "top level", "process"), out);
        if (j.contains("channels")) parse_channels(j["channels"], out);
        if (j.contains("outputs")) parse_outputs(j["outputs"], out);
        if (j.contains("mc")) parse_mc(j["mc"], out);
    } catch (const json::exception& e) {
        // wrong JSON type for a key the schema walk read directly
        throw ConfigError(std::string("schema error: ") + e.what());
    }
    out.canonical = j.dump();
    return out;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t config_hash(const ScenarioConfig& config) {
    return io::fnv1a64(config.canonical);
}

la::ComplexMatrix load_unitary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open unitary file " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("d") || !j.contains("entries"))
        throw ConfigError(path + ": expected {\"d\": n, \"entries\": [[re, im], ...]}");
    const std::size_t d = j["d"].get<std::size_t>();
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != d * d)
        throw ConfigError(path + ": \"entries\" must hold d*d [re, im] pairs (row-major)");
    std::vector<la::complex> data;
    data.reserve(d * d);
    for (const auto& pair : entries) {
        if (!pair.is_array() || pair.size() != 2)
            throw ConfigError(path + ": each entry must be an [re, im] pair");
        data.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return la::ComplexMatrix(d, d, std::move(data));
}

const char* to_string(ProcessKind kind) {
    switch (kind) {
    case ProcessKind::rabi: return "rabi";
    case ProcessKind::fourier: return "fourier";
    case ProcessKind::custom_unitary: return "custom_unitary";
    }
    return "?";
}

const char* to_string(ChannelKind kind) {
    return kind == ChannelKind::minimal_energy ? "minimal_energy" : "min_invasive";
}

} // namespace qtpm::scen
