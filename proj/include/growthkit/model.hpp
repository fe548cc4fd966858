#pragma once

#include "growthkit/data.hpp"

#include <vector>

namespace growthkit {

/// Parameters of the planner model with CRRA utility, written in terms of
/// the balanced-growth rate g of output per effective-labor deflator.
struct BgpParams {
    double alpha = 0.0;  ///< capital share
    double beta = 0.0;   ///< discount factor
    double gamma = 0.0;  ///< relative risk aversion
    double delta = 0.0;  ///< depreciation rate
    double g = 0.0;      ///< balanced-growth-path rate
};

/// Structural parameters with exogenous productivity growth `a` and labor
/// growth `n`; g follows from them.
struct ModelParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double a = 0.0;
    double n = 0.0;

    [[nodiscard]] double growth() const;
    [[nodiscard]] BgpParams bgp() const;
};

struct SteadyState {
    double g = 0.0;
    double k_bar = 0.0;  ///< capital per effective worker
    double ky = 0.0;     ///< K/Y
    double iy = 0.0;     ///< I/Y
};

/// Per-effective-labor panel: each level series divided by A^(1/(1-alpha)) * L.
struct EffectivePanel {
    int first_year = 0;
    std::vector<double> y;
    std::vector<double> k;
    std::vector<double> c;
    std::vector<double> i;
};

/// 1+g = (1+a)^(1/(1-alpha)) * (1+n).
[[nodiscard]] double bgp_growth(double a, double n, double alpha);

/// (1+g)^gamma - beta*(1-delta); a finite steady state needs this > 0.
[[nodiscard]] double feasibility_margin(const BgpParams& p) noexcept;

/// Range checks plus the feasibility margin, without throwing.
[[nodiscard]] bool is_feasible(const BgpParams& p) noexcept;

/// Throws Error (module "model") on any range or feasibility violation.
void validate(const BgpParams& p);
void validate(const ModelParams& p);

[[nodiscard]] double capital_output_ratio(const BgpParams& p);
[[nodiscard]] double capital_output_ratio(const ModelParams& p);

/// (g + delta) * K/Y.
[[nodiscard]] double investment_output_ratio(const BgpParams& p);
[[nodiscard]] double investment_output_ratio(const ModelParams& p);

/// k_bar = (K/Y)^(1/(1-alpha)) together with g, K/Y and I/Y.
[[nodiscard]] SteadyState steady_state_k(const BgpParams& p);
[[nodiscard]] SteadyState steady_state_k(const ModelParams& p);

/// Effective consumption implied by moving from k_t to k_next. Next-period
/// effective capital is scaled by (1+g):
///   c_t = k_t^alpha + (1-delta) k_t - (1+g) k_next.
[[nodiscard]] double effective_consumption(double k_t, double k_next, const BgpParams& p);

/// Euler gap
///   beta (c_{t+1}/c_t)^(-gamma) (alpha k_{t+1}^(alpha-1) + 1 - delta) (1+g)^(-gamma) - 1
/// with consumption implied by the capital triple. Zero on an optimal path.
/// Throws when either implied consumption is non-positive.
[[nodiscard]] double euler_residual(double k_t, double k_t1, double k_t2, const BgpParams& p);
[[nodiscard]] double euler_residual(double k_t, double k_t1, double k_t2, const ModelParams& p);

/// Divides Y, K, C, I by A^(1/(1-alpha)) * L. Uses the panel's tfp column
/// when present, otherwise the Solow residual under the same alpha.
[[nodiscard]] EffectivePanel to_effective(const MacroPanel& panel, double alpha);

}  // namespace growthkit
