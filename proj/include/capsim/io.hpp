// File formats: trajectory/panels CSV, analysis and manifest JSON, FNV
// content digests. Reals print with 17 significant digits so doubles
// round-trip bit-exactly across platforms.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "capsim/analysis.hpp"
#include "capsim/model.hpp"
#include "capsim/policy.hpp"

namespace capsim {

using OrderedJson = nlohmann::ordered_json;

inline std::string format_real17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_real(const std::string& token, const char* key) {
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw std::invalid_argument(std::string(key) + ": not a real number: '" + token + "'");
    }
    return value;
}

inline long parse_int(const std::string& token, const char* key) {
    char* end = nullptr;
    long value = std::strtol(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0') {
        throw std::invalid_argument(std::string(key) + ": not an integer: '" + token + "'");
    }
    return value;
}

// 64-bit FNV-1a. A content fingerprint for determinism checks in the run
// manifest, not a cryptographic hash.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline constexpr const char* kTrajectoryHeader =
    "step,policy,n,l,s_min,variety,avg_complexity,gain_vertical,gain_horizontal";

inline std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << kTrajectoryHeader << '\n';
    for (const TrajectoryStep& s : traj.steps) {
        out << s.t << ',' << policy_letter(s.choice) << ',' << s.n_after << ',' << s.l_after
            << ',' << s.s_min_after << ',' << format_real17(s.variety) << ','
            << format_real17(s.avg_complexity) << ',' << format_real17(s.gain_vertical) << ','
            << (s.gain_horizontal ? format_real17(*s.gain_horizontal) : "NA") << '\n';
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace detail

// Reads a trajectory.csv back into steps (params are not stored in the
// CSV and must come from the caller when kernel values are recomputed).
inline std::vector<TrajectoryStep> parse_trajectory_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader) {
        throw std::invalid_argument("trajectory csv: bad or missing header");
    }
    std::vector<TrajectoryStep> steps;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 9) {
            throw std::invalid_argument("trajectory csv: expected 9 fields, got " +
                                        std::to_string(f.size()));
        }
        TrajectoryStep s;
        s.t = static_cast<int>(parse_int(f[0], "step"));
        if (f[1] != "V" && f[1] != "H") {
            throw std::invalid_argument("policy: expected V or H, got '" + f[1] + "'");
        }
        s.choice = f[1] == "V" ? PolicyChoice::Vertical : PolicyChoice::Horizontal;
        s.n_after = static_cast<int>(parse_int(f[2], "n"));
        s.l_after = static_cast<int>(parse_int(f[3], "l"));
        s.s_min_after = static_cast<int>(parse_int(f[4], "s_min"));
        s.variety = parse_real(f[5], "variety");
        s.avg_complexity = parse_real(f[6], "avg_complexity");
        s.gain_vertical = parse_real(f[7], "gain_vertical");
        if (f[8] != "NA") s.gain_horizontal = parse_real(f[8], "gain_horizontal");
        steps.push_back(s);
    }
    return steps;
}

// Panel-ready series: one row per step with both possible x-axes (step
// and n) plus the three figure rows (variety, complexity, incidence).
inline std::string panels_csv(const Trajectory& traj, const IncidenceSeries& incidence) {
    std::ostringstream out;
    out << "step,n,variety,avg_complexity,vertical_fraction,cumulative_vertical_share\n";
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        const TrajectoryStep& s = traj.steps[i];
        double cum_share = static_cast<double>(incidence.cumulative_vertical[i]) / s.t;
        out << s.t << ',' << s.n_after << ',' << format_real17(s.variety) << ','
            << format_real17(s.avg_complexity) << ','
            << format_real17(incidence.vertical_fraction[i]) << ','
            << format_real17(cum_share) << '\n';
    }
    return out.str();
}

inline OrderedJson analysis_json(const Trajectory& traj, const ModelParams& params,
                                 int incidence_window) {
    HumpReport hump = detect_hump(traj);
    PhaseBoundaries phases = classify_phases(traj, params);
    IncidenceSeries incidence = incidence_rates(traj, incidence_window);

    OrderedJson j;
    j["params"] = {{"rho", params.rho},
                   {"r", params.window_radius.str()},
                   {"horizon", static_cast<int>(traj.steps.size())},
                   {"seed", params.seed}};
    j["hump"] = {{"found", hump.found},
                 {"t_peak", hump.t_peak},
                 {"variety_peak", hump.variety_peak},
                 {"variety_final", hump.variety_final}};
    OrderedJson jp = OrderedJson::object();
    if (phases.t_window_binds) jp["t_window_binds"] = *phases.t_window_binds;
    if (phases.t_frontier) jp["t_frontier"] = *phases.t_frontier;
    j["phases"] = jp;
    const int total = static_cast<int>(traj.steps.size());
    const int vertical_total = incidence.cumulative_vertical.empty()
                                   ? 0
                                   : incidence.cumulative_vertical.back();
    j["incidence"] = {{"window_size", incidence.window_size},
                      {"cumulative_vertical", vertical_total},
                      {"cumulative_horizontal", total - vertical_total},
                      {"final_vertical_fraction",
                       incidence.vertical_fraction.empty() ? 0.0
                                                           : incidence.vertical_fraction.back()},
                      {"cumulative_vertical_share",
                       total > 0 ? static_cast<double>(vertical_total) / total : 0.0}};
    if (hump.found) {
        AccelerationReport accel = complexity_acceleration(traj);
        j["complexity_acceleration"] = {{"pre_peak_mean_delta", accel.pre_peak_mean_delta},
                                        {"post_peak_mean_delta", accel.post_peak_mean_delta}};
    }
    return j;
}

}  // namespace capsim
