#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "capsim/analysis.hpp"
#include "capsim/policy.hpp"

using namespace capsim;

namespace {

ModelParams params_of(double rho, WindowRadius r, int horizon) {
    return ModelParams{rho, r, horizon, 0};
}

std::string choice_string(const Trajectory& traj) {
    std::string s;
    for (const auto& step : traj.steps) s.push_back(policy_letter(step.choice));
    return s;
}

}  // namespace

TEST_CASE("decide picks the larger gain, vertical on ties/frontier", "[policy]") {
    auto [c1, g1] = decide(State{1, 1}, params_of(0.5, WindowRadius::unbounded(), 1));
    CHECK(c1 == PolicyChoice::Vertical);
    CHECK(std::abs(g1.vertical - 1.0 / 6.0) < 1e-12);
    CHECK_FALSE(g1.horizontal.has_value());

    auto [c2, g2] = decide(State{4, 2}, params_of(0.5, WindowRadius::unbounded(), 1));
    CHECK(c2 == PolicyChoice::Horizontal);
    CHECK(*g2.horizontal > g2.vertical);

    for (double rho : {0.25, 1.0}) {
        for (WindowRadius r : {WindowRadius::unbounded(), WindowRadius::bounded(3)}) {
            auto [c, g] = decide(State{7, 7}, params_of(rho, r, 1));
            CHECK(c == PolicyChoice::Vertical);
            CHECK_FALSE(g.horizontal.has_value());
        }
    }
}

TEST_CASE("apply_choice increments one coordinate", "[policy]") {
    CHECK(apply_choice(State{3, 2}, PolicyChoice::Vertical) == State{4, 2});
    CHECK(apply_choice(State{3, 2}, PolicyChoice::Horizontal) == State{3, 3});
    CHECK_THROWS_AS(apply_choice(State{3, 3}, PolicyChoice::Horizontal), std::domain_error);
    CHECK_THROWS_AS(apply_choice(State{2, 3}, PolicyChoice::Vertical), std::invalid_argument);
}

TEST_CASE("two-step simulation from the initial state", "[policy]") {
    Trajectory traj = simulate(params_of(0.5, WindowRadius::unbounded(), 2));
    REQUIRE(traj.steps.size() == 2);
    CHECK(traj.steps[0].choice == PolicyChoice::Vertical);
    CHECK(traj.steps[1].choice == PolicyChoice::Horizontal);
    CHECK(traj.steps[1].n_after == 2);
    CHECK(traj.steps[1].l_after == 2);
    // step 2 gains at pre-state (2,1): vertical 0.6-0.5, horizontal 2/3-1/2
    CHECK(std::abs(traj.steps[1].gain_vertical - 0.1) < 1e-12);
    REQUIRE(traj.steps[1].gain_horizontal.has_value());
    CHECK(std::abs(*traj.steps[1].gain_horizontal - 1.0 / 6.0) < 1e-12);
    // post-step stats at (2,2)
    CHECK(std::abs(traj.steps[1].variety - 2.25) < 1e-12);
    CHECK(std::abs(traj.steps[1].avg_complexity - 2.0 / 3.0) < 1e-12);

    Trajectory one = simulate(params_of(1.0, WindowRadius::unbounded(), 1));
    REQUIRE(one.steps.size() == 1);
    CHECK(one.steps[0].choice == PolicyChoice::Vertical);
}

TEST_CASE("baseline rho=0.5 opening choices match the exact-arithmetic oracle", "[policy]") {
    // Frozen from an exact rational-arithmetic evaluation of the decision
    // rule (Fraction-based reference implementation).
    Trajectory traj = simulate(params_of(0.5, WindowRadius::unbounded(), 12));
    CHECK(choice_string(traj) == "VHVVHVVHVVVH");
    CHECK(traj.steps.back().n_after == 9);
    CHECK(traj.steps.back().l_after == 5);
}

TEST_CASE("windowed run rho=0.5 r=10 hits the frozen peak state", "[policy]") {
    Trajectory traj = simulate(params_of(0.5, WindowRadius::bounded(10), 150));
    REQUIRE(traj.steps.size() == 150);
    // Frozen from the exact reference: peak of the variety series at t=51,
    // state (36,17), with the exact windowed sums below.
    const TrajectoryStep& peak = traj.steps[50];
    CHECK(peak.n_after == 36);
    CHECK(peak.l_after == 17);
    CHECK(std::abs(peak.variety - 2075279.2606506348) / 2075279.2606506348 < 1e-10);
    CHECK(std::abs(peak.avg_complexity - 11.946472637261254) < 1e-9);
    HumpReport hump = detect_hump(traj);
    CHECK(hump.found);
    CHECK(hump.t_peak == 51);
}

TEST_CASE("each step increments exactly one coordinate", "[policy]") {
    for (double rho : {0.25, 0.5, 0.75}) {
        for (WindowRadius r : {WindowRadius::unbounded(), WindowRadius::bounded(10)}) {
            Trajectory traj = simulate(params_of(rho, r, 120));
            State state = traj.initial;
            for (const auto& step : traj.steps) {
                REQUIRE(step.n_after + step.l_after == 2 + step.t);
                State next = apply_choice(state, step.choice);
                REQUIRE(next == State{step.n_after, step.l_after});
                REQUIRE(step.s_min_after ==
                        complexity_window(next, r).s_min);
                state = next;
            }
        }
    }
}

TEST_CASE("simulation is deterministic", "[policy]") {
    ModelParams params = params_of(0.75, WindowRadius::bounded(20), 200);
    Trajectory a = simulate(params);
    Trajectory b = simulate(params);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        REQUIRE(a.steps[i].choice == b.steps[i].choice);
        REQUIRE(a.steps[i].variety == b.steps[i].variety);
        REQUIRE(a.steps[i].avg_complexity == b.steps[i].avg_complexity);
        REQUIRE(a.steps[i].gain_vertical == b.steps[i].gain_vertical);
        REQUIRE(a.steps[i].gain_horizontal == b.steps[i].gain_horizontal);
    }
}

TEST_CASE("strict alternation after the frontier is reached", "[policy]") {
    // Once the post-binding frontier arrival happens, the run alternates
    // V,H,V,H to the end of the horizon with positive chosen gains.
    for (double rho : {0.25, 0.5, 0.75}) {
        for (int r : {1, 10, 20, 25}) {
            ModelParams params = params_of(rho, WindowRadius::bounded(r), 300);
            Trajectory traj = simulate(params);
            PhaseBoundaries phases = classify_phases(traj, params);
            if (!phases.t_frontier) continue;  // frontier beyond this horizon
            int t_frontier = *phases.t_frontier;
            for (int t = t_frontier + 1; t <= 300; ++t) {
                const auto& step = traj.steps[t - 1];
                const auto& prev = traj.steps[t - 2];
                REQUIRE(step.choice != prev.choice);
                REQUIRE_FALSE(step.degenerate);
            }
        }
    }
}

TEST_CASE("hump-period steps are horizontal until the frontier", "[policy]") {
    // After the variety peak, every step taken off the frontier chooses
    // horizontal policy, for all nine hump cells.
    for (double rho : {0.25, 0.5, 0.75}) {
        for (int r : {10, 20, 25}) {
            ModelParams params = params_of(rho, WindowRadius::bounded(r), 600);
            Trajectory traj = simulate(params);
            HumpReport hump = detect_hump(traj);
            REQUIRE(hump.found);
            State state = traj.initial;
            for (const auto& step : traj.steps) {
                State pre = state;
                state = State{step.n_after, step.l_after};
                if (step.t <= hump.t_peak) continue;
                if (pre.l < pre.n) {
                    INFO("rho=" << rho << " r=" << r << " t=" << step.t);
                    REQUIRE(step.choice == PolicyChoice::Horizontal);
                }
            }
        }
    }
}

TEST_CASE("baseline policies are complementary and rho-sensitive", "[policy]") {
    double fractions[3];
    int idx = 0;
    for (double rho : {0.25, 0.5, 0.75}) {
        Trajectory traj = simulate(params_of(rho, WindowRadius::unbounded(), 200));
        int vertical = 0;
        for (const auto& step : traj.steps) {
            vertical += step.choice == PolicyChoice::Vertical;
        }
        int horizontal = 200 - vertical;
        REQUIRE(vertical >= 20);
        REQUIRE(horizontal >= 20);
        fractions[idx++] = vertical / 200.0;
    }
    bool all_equal = fractions[0] == fractions[1] && fractions[1] == fractions[2];
    REQUIRE_FALSE(all_equal);
}
