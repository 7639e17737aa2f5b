// Core domain types: model parameters, country state, complexity window.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace capsim {

// Competitiveness window radius r. A country with coordination limit l
// produces complexities in [l - r, l]; unbounded radius recovers the
// baseline model where every complexity up to l stays in the portfolio.
class WindowRadius {
  public:
    constexpr WindowRadius() = default;

    static constexpr WindowRadius unbounded() { return WindowRadius{}; }

    static WindowRadius bounded(int r) {
        if (r < 1) {
            throw std::invalid_argument("window_radius: bounded radius must be >= 1, got " +
                                        std::to_string(r));
        }
        WindowRadius w;
        w.radius_ = r;
        return w;
    }

    constexpr bool is_bounded() const { return radius_.has_value(); }

    // Only valid for bounded radii.
    constexpr int value() const {
        if (!radius_) throw std::logic_error("window_radius: value() on unbounded radius");
        return *radius_;
    }

    std::string str() const { return radius_ ? std::to_string(*radius_) : "inf"; }

    friend constexpr bool operator==(WindowRadius a, WindowRadius b) {
        return a.radius_ == b.radius_;
    }

  private:
    std::optional<int> radius_;
};

struct ModelParams {
    double rho = 0.5;
    WindowRadius window_radius = WindowRadius::unbounded();
    int horizon = 150;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(rho > 0.0) || rho > 1.0) {
            throw std::invalid_argument("rho: must be in (0, 1], got " + std::to_string(rho));
        }
        if (horizon < 1) {
            throw std::invalid_argument("horizon: must be >= 1, got " + std::to_string(horizon));
        }
    }
};

// Country state: n capabilities, maximum producible product length l.
// l <= n always; the degenerate regime l > n (raising the coordination
// limit past the capability count) is forbidden.
struct State {
    int n = 1;
    int l = 1;

    bool valid() const { return n >= 0 && l >= 0 && l <= n; }

    void validate() const {
        if (!valid()) {
            throw std::invalid_argument("state: require 0 <= l <= n, got n=" + std::to_string(n) +
                                        " l=" + std::to_string(l));
        }
    }

    friend constexpr bool operator==(State a, State b) { return a.n == b.n && a.l == b.l; }
};

inline constexpr State kInitialState{1, 1};

// Produced-complexity range [s_min, s_max] implied by (l, r).
struct ComplexityWindow {
    int s_min = 0;
    int s_max = 0;
};

inline ComplexityWindow complexity_window(State state, WindowRadius r) {
    state.validate();
    int s_min = r.is_bounded() ? std::max(0, state.l - r.value()) : 0;
    return ComplexityWindow{s_min, state.l};
}

// Expected change in average product complexity from one unit of policy.
// The horizontal gain is absent on the frontier (l = n), where raising l
// would only shrink the window without enabling any new product.
struct MarginalGains {
    double vertical = 0.0;
    std::optional<double> horizontal;
};

enum class PolicyChoice { Vertical, Horizontal };

inline char policy_letter(PolicyChoice c) { return c == PolicyChoice::Vertical ? 'V' : 'H'; }

}  // namespace capsim
