#pragma once

#include "growthkit/model.hpp"

#include <vector>

namespace growthkit {

inline constexpr int kDefaultHorizon = 200;
inline constexpr double kDefaultSimulationTol = 1e-9;

/// Perfect-foresight path of the planner problem in effective units.
struct TransitionPath {
    int horizon = 0;
    double k_bar = 0.0;               ///< closed-form steady state used as terminal target
    std::vector<double> k;            ///< T+1 values, k[0] is the initial condition
    std::vector<double> c;            ///< T values
    std::vector<double> euler_gaps;   ///< T-1 Euler residuals at interior dates
    bool converged = false;
    double terminal_error = 0.0;      ///< |k_T - k_bar| / k_bar
    int segments = 0;                 ///< shooting restarts used (1 = single shot)

    [[nodiscard]] double output(std::size_t t, const BgpParams& p) const;
    /// Gross investment per effective worker: (1+g) k_{t+1} - (1-delta) k_t.
    [[nodiscard]] double investment(std::size_t t, const BgpParams& p) const;
};

struct FixedPointReport {
    double k_bar = 0.0;
    double error_from_below = 0.0;  ///< terminal error of the path started at 0.9 k_bar
    double error_from_above = 0.0;  ///< terminal error of the path started at 1.1 k_bar
    double max_terminal_error = 0.0;
    bool passed = false;
};

/// CRRA period utility c^(1-gamma) / (1-gamma).
[[nodiscard]] double utility(double c, double gamma);

/// beta (1+g)^(1-gamma): discount factor of the problem written in effective units.
[[nodiscard]] double effective_discount(const BgpParams& p) noexcept;

/// Solves for the path from k0 whose capital reaches k_bar at date T while
/// satisfying the Euler condition at every interior date.
///
/// Initial consumption is found by bisection on [eps, k0^alpha + (1-delta) k0].
/// A candidate overshooting k_bar saved too much; one that turns back or
/// ends short of it consumed too much. Forward iteration amplifies rounding
/// error, so once the two bracketing paths separate by more than 1e-11 the
/// shot is restarted from the last date where they still agree.
///
/// Throws Error (module "simulate") for infeasible parameters, an effective
/// discount factor >= 1, k0 <= 0, T < 2, tol <= 0, or when no bracket exists
/// (k_bar unreachable within the horizon).
[[nodiscard]] TransitionPath simulate_transition(double k0, const BgpParams& p, int horizon = kDefaultHorizon,
                                                 double tol = kDefaultSimulationTol);

/// Simulates from 0.9 k_bar and 1.1 k_bar and passes when both terminal
/// errors are below `tol` (so tol = 0 always fails).
[[nodiscard]] FixedPointReport verify_fixed_point(const BgpParams& p, double tol, int horizon = kDefaultHorizon);

/// Discounted utility of the path plus the value of holding k_T forever.
[[nodiscard]] double path_welfare(const TransitionPath& path, const BgpParams& p);

/// Discounted utility of keeping capital at k0 forever.
[[nodiscard]] double constant_capital_welfare(double k0, const BgpParams& p);

}  // namespace growthkit
