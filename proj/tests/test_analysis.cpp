#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "capsim/analysis.hpp"
#include "capsim/policy.hpp"

using namespace capsim;

namespace {

// Synthetic trajectory with prescribed variety/complexity series; choices
// alternate V,H arbitrarily unless given.
Trajectory synthetic(const std::vector<double>& varieties,
                     const std::vector<double>& complexities = {},
                     const std::vector<char>& choices = {}) {
    Trajectory traj;
    traj.params = ModelParams{0.5, WindowRadius::unbounded(), static_cast<int>(varieties.size()),
                              0};
    int n = 1, l = 1;
    for (std::size_t i = 0; i < varieties.size(); ++i) {
        TrajectoryStep s;
        s.t = static_cast<int>(i) + 1;
        char c = i < choices.size() ? choices[i] : 'V';
        s.choice = c == 'V' ? PolicyChoice::Vertical : PolicyChoice::Horizontal;
        (s.choice == PolicyChoice::Vertical ? n : l) += 1;
        s.n_after = n;
        s.l_after = l;
        s.variety = varieties[i];
        s.avg_complexity = i < complexities.size() ? complexities[i] : 0.0;
        traj.steps.push_back(s);
    }
    return traj;
}

}  // namespace

TEST_CASE("hump detection on constructed series", "[analysis]") {
    HumpReport h = detect_hump(synthetic({1, 3, 7, 12, 9, 4}));
    CHECK(h.found);
    CHECK(h.t_peak == 4);
    CHECK(h.variety_peak == 12.0);
    CHECK(h.variety_final == 4.0);

    h = detect_hump(synthetic({1, 2, 3, 4, 5}));
    CHECK_FALSE(h.found);
    CHECK(h.t_peak == 5);

    // ties resolve to the earliest peak step
    h = detect_hump(synthetic({1, 5, 5, 3}));
    CHECK(h.found);
    CHECK(h.t_peak == 2);

    // boundary maximum at the first step
    h = detect_hump(synthetic({9, 5, 3}));
    CHECK_FALSE(h.found);

    // flat series: peak is the first step, not interior
    h = detect_hump(synthetic({2, 2, 2}));
    CHECK_FALSE(h.found);
}

TEST_CASE("hump report ignores appended sub-final steps", "[analysis]") {
    std::vector<double> base{1, 3, 7, 12, 9, 4};
    HumpReport before = detect_hump(synthetic(base));
    std::vector<double> extended = base;
    for (double v : {3.9, 2.0, 3.5}) extended.push_back(v);
    HumpReport after = detect_hump(synthetic(extended));
    CHECK(after.found == before.found);
    CHECK(after.t_peak == before.t_peak);
    CHECK(after.variety_peak == before.variety_peak);
}

TEST_CASE("incidence rates over moving and cumulative windows", "[analysis]") {
    Trajectory traj = synthetic({1, 1, 1, 1, 1}, {}, {'V', 'H', 'V', 'V', 'H'});
    IncidenceSeries s = incidence_rates(traj, 5);
    CHECK(s.vertical_fraction.back() == 0.6);
    CHECK(s.cumulative_vertical == std::vector<int>{1, 1, 2, 3, 3});

    // width-1 window: per-step indicator
    s = incidence_rates(traj, 1);
    CHECK(s.vertical_fraction == std::vector<double>{1, 0, 1, 1, 0});

    // an all-horizontal stretch has zero fraction once the window is inside it
    Trajectory hrun = synthetic({1, 1, 1, 1, 1, 1}, {}, {'V', 'H', 'H', 'H', 'H', 'H'});
    s = incidence_rates(hrun, 2);
    for (std::size_t i = 2; i < s.vertical_fraction.size(); ++i) {
        CHECK(s.vertical_fraction[i] == 0.0);
    }
    CHECK_THROWS_AS(incidence_rates(traj, 0), std::invalid_argument);
}

TEST_CASE("window-sized-as-horizon incidence equals the cumulative share", "[analysis]") {
    Trajectory traj = simulate(ModelParams{0.5, WindowRadius::unbounded(), 80, 0});
    IncidenceSeries s = incidence_rates(traj, 80);
    CHECK(s.vertical_fraction.back() ==
          static_cast<double>(s.cumulative_vertical.back()) / 80.0);
}

TEST_CASE("phase boundaries on simulated runs", "[analysis]") {
    ModelParams p10{0.5, WindowRadius::bounded(10), 150, 0};
    Trajectory traj = simulate(p10);
    PhaseBoundaries phases = classify_phases(traj, p10);
    REQUIRE(phases.t_window_binds.has_value());
    REQUIRE(phases.t_frontier.has_value());
    CHECK(*phases.t_window_binds < *phases.t_frontier);
    // frozen from the exact reference run
    CHECK(*phases.t_window_binds == 32);
    CHECK(*phases.t_frontier == 70);

    ModelParams pinf{0.5, WindowRadius::unbounded(), 150, 0};
    phases = classify_phases(simulate(pinf), pinf);
    CHECK_FALSE(phases.t_window_binds.has_value());

    // r=1 binds at the first step where l reaches 2
    ModelParams p1{0.5, WindowRadius::bounded(1), 150, 0};
    traj = simulate(p1);
    phases = classify_phases(traj, p1);
    REQUIRE(phases.t_window_binds.has_value());
    int first_l2 = 0;
    for (const auto& step : traj.steps) {
        if (step.l_after == 2) {
            first_l2 = step.t;
            break;
        }
    }
    CHECK(*phases.t_window_binds == first_l2);
}

TEST_CASE("phase markers re-derivable from the state columns", "[analysis]") {
    for (double rho : {0.25, 0.75}) {
        ModelParams params{rho, WindowRadius::bounded(10), 200, 0};
        Trajectory traj = simulate(params);
        PhaseBoundaries phases = classify_phases(traj, params);
        std::optional<int> binds, frontier;
        for (const auto& s : traj.steps) {
            if (!binds && s.l_after > 10) binds = s.t;
            if (!frontier && binds && s.l_after == s.n_after) frontier = s.t;
        }
        CHECK(phases.t_window_binds == binds);
        CHECK(phases.t_frontier == frontier);
    }
}

TEST_CASE("complexity acceleration around the peak", "[analysis]") {
    // constant complexity with an artificial variety peak
    Trajectory flat = synthetic({1, 2, 5, 2, 1}, {3, 3, 3, 3, 3});
    AccelerationReport a = complexity_acceleration(flat);
    CHECK(a.pre_peak_mean_delta == 0.0);
    CHECK(a.post_peak_mean_delta == 0.0);

    // deltas exclude the two differences touching the peak step
    Trajectory shaped = synthetic({1, 2, 9, 2, 1, 0.5}, {1, 2, 10, 3, 4, 6});
    a = complexity_acceleration(shaped);
    CHECK(a.pre_peak_mean_delta == 1.0);   // 2-1
    CHECK(a.post_peak_mean_delta == 1.5);  // (4-3 + 6-4)/2

    CHECK_THROWS_AS(complexity_acceleration(synthetic({1, 2, 3})), std::domain_error);

    for (double rho : {0.25, 0.5}) {
        ModelParams params{rho, WindowRadius::bounded(10), 150, 0};
        AccelerationReport accel = complexity_acceleration(simulate(params));
        CHECK(accel.post_peak_mean_delta > accel.pre_peak_mean_delta);
    }
}
