#include "csdp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace csdp {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& key,
                         const std::string& why)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: key '{}': {}", origin, line, key, why)
                                  : fmt::format("{}: {}", origin, why)),
      line_(line),
      key_(key) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || !std::isfinite(x))
        throw std::invalid_argument(fmt::format("'{}' is not a finite number", v));
    return x;
}

long long to_integer(const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw std::invalid_argument(fmt::format("'{}' is not an integer", v));
    return x;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw std::invalid_argument(fmt::format("'{}' is not a boolean", v));
}

std::vector<int> to_int_list(const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');)
        out.push_back(static_cast<int>(to_integer(trim(item))));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::string num(double x) { return fmt::format("{}", x); }

struct KeySpec {
    const char* name;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define CSDP_REAL_KEY(key, field)                                                         \
    KeySpec {                                                                             \
        key, [](ExperimentConfig& c, const std::string& v) { c.field = to_double(v); },   \
            [](const ExperimentConfig& c) { return num(c.field); }                        \
    }

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        // device
        CSDP_REAL_KEY("g_on", network.device.g_on),
        CSDP_REAL_KEY("g_off", network.device.g_off),
        CSDP_REAL_KEY("v_tp", network.device.v_tp),
        CSDP_REAL_KEY("v_tn", network.device.v_tn),
        CSDP_REAL_KEY("xi_pos", network.device.xi_pos),
        CSDP_REAL_KEY("xi_neg", network.device.xi_neg),
        CSDP_REAL_KEY("k_switch", network.device.k_switch),
        // neuron
        CSDP_REAL_KEY("phi", network.neuron.phi),
        CSDP_REAL_KEY("c_m", network.neuron.c_m),
        CSDP_REAL_KEY("i_leak", network.neuron.i_leak),
        CSDP_REAL_KEY("t_r", network.neuron.t_r),
        CSDP_REAL_KEY("t_w", network.neuron.t_w),
        // trace
        CSDP_REAL_KEY("c_tr", network.trace.c_tr),
        CSDP_REAL_KEY("i_charge", network.trace.i_charge),
        CSDP_REAL_KEY("i_discharge", network.trace.i_discharge),
        CSDP_REAL_KEY("v_buf", network.trace.v_buf),
        CSDP_REAL_KEY("v_dd", network.trace.v_dd),
        CSDP_REAL_KEY("window", network.trace.window),
        KeySpec{"tau_z",
                [](ExperimentConfig& c, const std::string& v) {
                    c.network.trace.tau_z = (v == "inf" || v == "none") ? 0.0 : to_double(v);
                },
                [](const ExperimentConfig& c) {
                    return c.network.trace.tau_z > 0.0 ? num(c.network.trace.tau_z)
                                                       : std::string("inf");
                }},
        // network
        KeySpec{"layer_sizes",
                [](ExperimentConfig& c, const std::string& v) {
                    c.network.layer_sizes = to_int_list(v);
                },
                [](const ExperimentConfig& c) {
                    return fmt::format("{}", fmt::join(c.network.layer_sizes, ","));
                }},
        KeySpec{"input_bits",
                [](ExperimentConfig& c, const std::string& v) {
                    c.network.input_bits = static_cast<int>(to_integer(v));
                },
                [](const ExperimentConfig& c) { return std::to_string(c.network.input_bits); }},
        KeySpec{"label_bits",
                [](ExperimentConfig& c, const std::string& v) {
                    c.network.label_bits = static_cast<int>(to_integer(v));
                },
                [](const ExperimentConfig& c) { return std::to_string(c.network.label_bits); }},
        CSDP_REAL_KEY("i_hi", network.i_hi),
        CSDP_REAL_KEY("i_s", network.i_s),
        CSDP_REAL_KEY("goodness_weight", network.goodness_weight),
        CSDP_REAL_KEY("program_overdrive", network.program_overdrive),
        KeySpec{"task",
                [](ExperimentConfig& c, const std::string& v) { c.task = v; },
                [](const ExperimentConfig& c) { return c.task; }},
        KeySpec{"truth_table",
                [](ExperimentConfig& c, const std::string& v) {
                    c.truth_table.clear();
                    for (char ch : v) {
                        if (ch < '0' || ch > '9')
                            throw std::invalid_argument("truth_table must be a string of digits");
                        c.truth_table.push_back(ch - '0');
                    }
                    c.task = "custom";
                },
                [](const ExperimentConfig& c) {
                    std::string s;
                    for (int t : c.truth_table) s += static_cast<char>('0' + t);
                    return s;
                }},
        // training
        CSDP_REAL_KEY("alpha", training.alpha),
        KeySpec{"epochs",
                [](ExperimentConfig& c, const std::string& v) {
                    c.training.epochs = static_cast<int>(to_integer(v));
                },
                [](const ExperimentConfig& c) { return std::to_string(c.training.epochs); }},
        CSDP_REAL_KEY("init_weight_range", training.init_weight_range),
        KeySpec{"use_min_approx",
                [](ExperimentConfig& c, const std::string& v) {
                    c.training.use_min_approx = to_bool(v);
                },
                [](const ExperimentConfig& c) {
                    return std::string(c.training.use_min_approx ? "true" : "false");
                }},
        KeySpec{"seed",
                [](ExperimentConfig& c, const std::string& v) {
                    const auto s = to_integer(v);
                    if (s < 0) throw std::invalid_argument("seed must be non-negative");
                    c.training.seed = static_cast<std::uint64_t>(s);
                },
                [](const ExperimentConfig& c) { return std::to_string(c.training.seed); }},
        CSDP_REAL_KEY("gamma_pos", training.gamma_pos),
        CSDP_REAL_KEY("gamma_neg", training.gamma_neg),
        KeySpec{"program_mode",
                [](ExperimentConfig& c, const std::string& v) {
                    if (v == "device")
                        c.training.program_mode = ProgramMode::device;
                    else if (v == "direct")
                        c.training.program_mode = ProgramMode::direct;
                    else
                        throw std::invalid_argument("program_mode must be 'device' or 'direct'");
                },
                [](const ExperimentConfig& c) {
                    return std::string(c.training.program_mode == ProgramMode::device ? "device"
                                                                                      : "direct");
                }},
    };
    return table;
}

#undef CSDP_REAL_KEY

std::vector<int> named_task(const std::string& task) {
    // Outputs for inputs 00, 01, 10, 11.
    if (task == "xor") return {0, 1, 1, 0};
    if (task == "xnor") return {1, 0, 0, 1};
    if (task == "and") return {0, 0, 0, 1};
    if (task == "nand") return {1, 1, 1, 0};
    if (task == "or") return {0, 1, 1, 1};
    if (task == "nor") return {1, 0, 0, 0};
    throw std::invalid_argument(fmt::format("unknown task '{}'", task));
}

}  // namespace

void ExperimentConfig::finalize() {
    if (truth_table.empty()) {
        if (network.input_bits != 2)
            throw std::invalid_argument("named tasks need input_bits = 2; use truth_table otherwise");
        truth_table = named_task(task);
    }
    network.validate();
    training.validate();
    if (truth_table.size() != (std::size_t{1} << network.input_bits))
        throw std::invalid_argument(fmt::format("truth_table needs {} entries, one per input pattern",
                                                std::size_t{1} << network.input_bits));
    for (int t : truth_table)
        if (t < 0 || t >= (1 << network.label_bits))
            throw std::invalid_argument("truth_table entry does not fit in label_bits");
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    ExperimentConfig config;
    std::set<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin, line_no, line, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin, line_no, key, "missing key");
        if (value.empty()) throw ConfigError(origin, line_no, key, "missing value");

        const auto& table = key_table();
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const KeySpec& k) { return key == k.name; });
        if (it == table.end()) throw ConfigError(origin, line_no, key, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(origin, line_no, key, "duplicate key");
        try {
            it->set(config, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(origin, line_no, key, e.what());
        }
    }
    try {
        config.finalize();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin, 0, "", fmt::format("invalid configuration: {}", e.what()));
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config '{}'", path.string()));
    return parse_config(in, path.string());
}

std::string echo_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& k : key_table()) out += fmt::format("{} = {}\n", k.name, k.get(config));
    return out;
}

}  // namespace csdp
