// Greedy policymaker: at each step, take whichever unit policy (vertical
// n+1 or horizontal l+1) promises the larger expected gain in average
// product complexity under the active window.
#pragma once

#include <utility>
#include <vector>

#include "capsim/kernel.hpp"
#include "capsim/model.hpp"

namespace capsim {

struct TrajectoryStep {
    int t = 0;  // 1-based
    PolicyChoice choice = PolicyChoice::Vertical;
    int n_after = 0;
    int l_after = 0;
    int s_min_after = 0;
    double variety = 0.0;         // at the post-step state
    double avg_complexity = 0.0;  // at the post-step state
    // Gains evaluated at the pre-step state, as seen by the decision.
    double gain_vertical = 0.0;
    std::optional<double> gain_horizontal;
    // Audit flags: exact gain tie (broken toward Vertical) and steps where
    // even the chosen gain was not positive.
    bool tie = false;
    bool degenerate = false;
};

struct Trajectory {
    ModelParams params;
    State initial = kInitialState;
    std::vector<TrajectoryStep> steps;
};

// Vertical wins strict ties and any state where horizontal is unavailable.
inline std::pair<PolicyChoice, MarginalGains> decide(State state, const ModelParams& params) {
    MarginalGains g = marginal_gains(state, params);
    PolicyChoice choice = (g.horizontal && *g.horizontal > g.vertical) ? PolicyChoice::Horizontal
                                                                       : PolicyChoice::Vertical;
    return {choice, g};
}

inline State apply_choice(State state, PolicyChoice choice) {
    state.validate();
    if (choice == PolicyChoice::Vertical) return State{state.n + 1, state.l};
    if (state.l >= state.n) {
        throw std::domain_error("apply: horizontal policy requires l < n, got n=" +
                                std::to_string(state.n) + " l=" + std::to_string(state.l));
    }
    return State{state.n, state.l + 1};
}

// Deterministic run of `horizon` decisions from (n=1, l=1).
inline Trajectory simulate(const ModelParams& params) {
    params.validate();
    Trajectory traj{params, kInitialState, {}};
    traj.steps.reserve(params.horizon);
    State state = traj.initial;
    for (int t = 1; t <= params.horizon; ++t) {
        auto [choice, gains] = decide(state, params);
        TrajectoryStep step;
        step.t = t;
        step.choice = choice;
        step.gain_vertical = gains.vertical;
        step.gain_horizontal = gains.horizontal;
        step.tie = gains.horizontal && *gains.horizontal == gains.vertical;
        double chosen = choice == PolicyChoice::Vertical ? gains.vertical : *gains.horizontal;
        step.degenerate = !(chosen > 0.0);
        state = apply_choice(state, choice);
        step.n_after = state.n;
        step.l_after = state.l;
        step.s_min_after = complexity_window(state, params.window_radius).s_min;
        step.variety = variety(state, params);
        step.avg_complexity = avg_complexity(state, params);
        traj.steps.push_back(step);
    }
    return traj;
}

}  // namespace capsim
