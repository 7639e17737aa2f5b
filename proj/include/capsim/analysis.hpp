// Post-processing of trajectories: hump detection, policy incidence,
// phase boundaries, complexity acceleration.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "capsim/model.hpp"
#include "capsim/policy.hpp"

namespace capsim {

struct HumpReport {
    bool found = false;
    int t_peak = 0;  // earliest global maximum of the variety series, 1-based
    double variety_peak = 0.0;
    double variety_final = 0.0;
};

// A hump is an earliest global maximum that is interior (neither first
// nor last step) with the final variety strictly below the peak. Flat
// plateaus and boundary maxima do not count.
inline HumpReport detect_hump(const Trajectory& traj) {
    if (traj.steps.empty()) throw std::invalid_argument("trajectory: empty");
    HumpReport report;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < traj.steps.size(); ++i) {
        if (traj.steps[i].variety > traj.steps[peak].variety) peak = i;
    }
    report.t_peak = static_cast<int>(peak) + 1;
    report.variety_peak = traj.steps[peak].variety;
    report.variety_final = traj.steps.back().variety;
    report.found = peak > 0 && peak + 1 < traj.steps.size() &&
                   report.variety_final < report.variety_peak;
    return report;
}

struct IncidenceSeries {
    int window_size = 0;
    std::vector<double> vertical_fraction;  // moving-window share per step
    std::vector<int> cumulative_vertical;   // running count per step
};

inline IncidenceSeries incidence_rates(const Trajectory& traj, int window_size) {
    if (window_size < 1) {
        throw std::invalid_argument("window_size: must be >= 1, got " +
                                    std::to_string(window_size));
    }
    IncidenceSeries series;
    series.window_size = window_size;
    const int count = static_cast<int>(traj.steps.size());
    series.vertical_fraction.reserve(count);
    series.cumulative_vertical.reserve(count);
    int cumulative = 0;
    int in_window = 0;
    for (int i = 0; i < count; ++i) {
        bool vertical = traj.steps[i].choice == PolicyChoice::Vertical;
        cumulative += vertical;
        in_window += vertical;
        if (i >= window_size &&
            traj.steps[i - window_size].choice == PolicyChoice::Vertical) {
            --in_window;
        }
        int span = std::min(i + 1, window_size);
        series.vertical_fraction.push_back(static_cast<double>(in_window) / span);
        series.cumulative_vertical.push_back(cumulative);
    }
    return series;
}

struct PhaseBoundaries {
    std::optional<int> t_window_binds;  // first step with l > r (bounded r only)
    // First step on the frontier l = n at or after the window first binds;
    // a bare first touch would trigger during the early complementary
    // phase (l = n already at t = 2 for larger rho) and precede
    // t_window_binds, so the frontier marker is anchored to the binding
    // event when there is one.
    std::optional<int> t_frontier;
};

inline PhaseBoundaries classify_phases(const Trajectory& traj, const ModelParams& params) {
    PhaseBoundaries phases;
    for (const TrajectoryStep& step : traj.steps) {
        if (!phases.t_window_binds && params.window_radius.is_bounded() &&
            step.l_after > params.window_radius.value()) {
            phases.t_window_binds = step.t;
        }
        if (!phases.t_frontier && step.l_after == step.n_after &&
            (!params.window_radius.is_bounded() || phases.t_window_binds)) {
            phases.t_frontier = step.t;
        }
    }
    return phases;
}

struct AccelerationReport {
    double pre_peak_mean_delta = 0.0;
    double post_peak_mean_delta = 0.0;
};

// Mean one-step change of average complexity strictly before vs strictly
// after the variety peak; differences touching the peak step are excluded
// on both sides. Errors when the trajectory has no hump.
inline AccelerationReport complexity_acceleration(const Trajectory& traj) {
    HumpReport hump = detect_hump(traj);
    if (!hump.found) {
        throw std::domain_error("complexity_acceleration: trajectory has no hump");
    }
    const auto& steps = traj.steps;
    const int peak = hump.t_peak;  // 1-based
    double pre_sum = 0.0;
    int pre_count = 0;
    for (int t = 2; t <= peak - 1; ++t) {
        pre_sum += steps[t - 1].avg_complexity - steps[t - 2].avg_complexity;
        ++pre_count;
    }
    double post_sum = 0.0;
    int post_count = 0;
    for (int t = peak + 2; t <= static_cast<int>(steps.size()); ++t) {
        post_sum += steps[t - 1].avg_complexity - steps[t - 2].avg_complexity;
        ++post_count;
    }
    AccelerationReport report;
    report.pre_peak_mean_delta = pre_count > 0 ? pre_sum / pre_count : 0.0;
    report.post_peak_mean_delta = post_count > 0 ? post_sum / post_count : 0.0;
    return report;
}

}  // namespace capsim
