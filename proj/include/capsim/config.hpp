// CLI/config-file parsing shared by every subcommand. Precedence is
// flags > config file > built-in defaults; every rejection names the
// offending key.
#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capsim/io.hpp"
#include "capsim/model.hpp"

namespace capsim {

struct SweepSpec {
    std::vector<double> rho_values;
    std::vector<WindowRadius> r_values;
    int horizon = 150;
    std::uint64_t seed = 42;
    int window_size = 10;
    std::string out_dir = "out";
};

// Union of every subcommand's knobs, resolved from defaults, config file
// and flags.
struct CliConfig {
    ModelParams params;  // rho=0.5, r=inf, horizon=150, seed=42
    int window_size = 10;
    int replicates = 20000;
    std::string out_dir = "out";
    // Sweep grid: defaults reproduce the full 15-cell figure grid.
    std::vector<double> rho_values = {0.25, 0.5, 0.75};
    std::vector<WindowRadius> r_values = {WindowRadius::unbounded(), WindowRadius::bounded(25),
                                          WindowRadius::bounded(20), WindowRadius::bounded(10),
                                          WindowRadius::bounded(1)};
    // Oracle check target.
    int n = 12;
    int l = 12;

    SweepSpec sweep_spec() const {
        return SweepSpec{rho_values, r_values, params.horizon, params.seed, window_size, out_dir};
    }
};

namespace detail {

inline double parse_double_key(const std::string& key, const std::string& value) {
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw std::invalid_argument(key + ": not a real number: '" + value + "'");
    }
    return v;
}

inline long long parse_ll_key(const std::string& key, const std::string& value) {
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw std::invalid_argument(key + ": not an integer: '" + value + "'");
    }
    return v;
}

inline std::uint64_t parse_u64_key(const std::string& key, const std::string& value) {
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE ||
        value.find('-') != std::string::npos) {
        throw std::invalid_argument(key + ": not an unsigned integer: '" + value + "'");
    }
    return v;
}

inline WindowRadius parse_radius_key(const std::string& key, const std::string& value) {
    if (value == "inf") return WindowRadius::unbounded();
    long long r = parse_ll_key(key, value);
    if (r < 1) throw std::invalid_argument(key + ": must be 'inf' or an integer >= 1");
    return WindowRadius::bounded(static_cast<int>(r));
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) items.push_back(item);
    return items;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace detail

// Plain key=value lines; '#' starts a comment, blank lines ignored.
inline std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected key=value");
        }
        kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

// Applies key/value pairs onto a config; keys match the long flag names
// with '-' replaced by '_'.
inline void apply_kv(CliConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "rho") {
        cfg.params.rho = parse_double_key(key, value);
    } else if (key == "r") {
        cfg.params.window_radius = parse_radius_key(key, value);
    } else if (key == "horizon") {
        long long h = parse_ll_key(key, value);
        if (h < 1) throw std::invalid_argument("horizon: must be >= 1, got " + value);
        cfg.params.horizon = static_cast<int>(h);
    } else if (key == "seed") {
        cfg.params.seed = parse_u64_key(key, value);
    } else if (key == "window_size") {
        long long w = parse_ll_key(key, value);
        if (w < 1) throw std::invalid_argument("window_size: must be >= 1, got " + value);
        cfg.window_size = static_cast<int>(w);
    } else if (key == "replicates") {
        long long r = parse_ll_key(key, value);
        if (r < 0) throw std::invalid_argument("replicates: must be >= 0, got " + value);
        cfg.replicates = static_cast<int>(r);
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "rho_values") {
        cfg.rho_values.clear();
        for (const auto& item : split_list(value)) {
            cfg.rho_values.push_back(parse_double_key("rho_values", item));
        }
        if (cfg.rho_values.empty()) throw std::invalid_argument("rho_values: empty list");
    } else if (key == "r_values") {
        cfg.r_values.clear();
        for (const auto& item : split_list(value)) {
            cfg.r_values.push_back(parse_radius_key("r_values", item));
        }
        if (cfg.r_values.empty()) throw std::invalid_argument("r_values: empty list");
    } else if (key == "n") {
        long long n = parse_ll_key(key, value);
        if (n < 0) throw std::invalid_argument("n: must be >= 0, got " + value);
        cfg.n = static_cast<int>(n);
    } else if (key == "l") {
        long long l = parse_ll_key(key, value);
        if (l < 0) throw std::invalid_argument("l: must be >= 0, got " + value);
        cfg.l = static_cast<int>(l);
    } else {
        throw std::invalid_argument("unknown key: '" + key + "'");
    }
}

// Resolves a flag list (without the subcommand) against optional
// --config file contents and the built-in defaults. Flags win over file
// entries, file entries over defaults. Validation happens after the full
// overlay so the winning value is what gets checked.
inline CliConfig parse_config(const std::vector<std::string>& flags) {
    // Pass 1: collect flag key/values, find --config.
    std::vector<std::pair<std::string, std::string>> flag_kv;
    std::optional<std::string> config_path;
    std::vector<std::string> positional;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        const std::string& flag = flags[i];
        if (flag.rfind("--", 0) != 0) {
            positional.push_back(flag);
            continue;
        }
        std::string key = flag.substr(2);
        std::string value;
        auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key.erase(eq);
        } else {
            if (i + 1 >= flags.size()) {
                throw std::invalid_argument("--" + key + ": missing value");
            }
            value = flags[++i];
        }
        for (char& c : key) {
            if (c == '-') c = '_';
        }
        if (key == "config") {
            config_path = value;
        } else {
            flag_kv.emplace_back(key, value);
        }
    }
    if (!positional.empty()) {
        throw std::invalid_argument("unexpected argument: '" + positional.front() + "'");
    }

    CliConfig cfg;
    if (config_path) {
        for (const auto& [key, value] : parse_kv_text(read_file(*config_path))) {
            apply_kv(cfg, key, value);
        }
    }
    for (const auto& [key, value] : flag_kv) apply_kv(cfg, key, value);

    cfg.params.validate();
    for (double rho : cfg.rho_values) {
        if (!(rho > 0.0) || rho > 1.0) {
            throw std::invalid_argument("rho_values: must be in (0, 1], got " +
                                        std::to_string(rho));
        }
    }
    return cfg;
}

}  // namespace capsim
