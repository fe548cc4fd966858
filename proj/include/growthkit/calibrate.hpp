#pragma once

#include "growthkit/data.hpp"
#include "growthkit/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace growthkit {

/// Data moments the model is matched to.
struct MomentTargets {
    double iy_target = 0.0;  ///< mean I/Y over the window
    double ky_target = 0.0;  ///< mean K/Y over the window
    YearRange window;
};

/// Parameters held fixed while (beta, gamma) are searched.
struct FixedParams {
    double alpha = 0.0;
    double delta = 0.0;
    double g = 0.0;

    [[nodiscard]] BgpParams with(double beta, double gamma) const noexcept {
        return {alpha, beta, gamma, delta, g};
    }
};

struct GridSpec {
    double beta_min = 0.80;
    double beta_max = 0.999;
    double beta_step = 0.001;
    double gamma_min = 0.05;
    double gamma_max = 5.00;
    double gamma_step = 0.05;

    /// Throws unless min < max, step > 0 and the box lies inside beta in (0,1), gamma > 0.
    void validate() const;
    /// Grid coordinates. Each point is min + i*step snapped to the nearest
    /// multiple of 1e-12, so decimal inputs land on their decimal values.
    [[nodiscard]] std::vector<double> betas() const;
    /// Gamma coordinates with the log-utility band (0.999, 1.001) removed.
    [[nodiscard]] std::vector<double> gammas() const;
};

struct MomentWeights {
    double iy = 1.0;
    double ky = 1.0;
};

struct ImpliedMoments {
    double iy = 0.0;
    double ky = 0.0;
};

struct CalibrationResult {
    double beta = 0.0;
    double gamma = 0.0;
    double objective = 0.0;
    double implied_iy = 0.0;
    double implied_ky = 0.0;
    SteadyState steady_state;
    std::size_t infeasible_count = 0;
    std::size_t evaluated_count = 0;  ///< feasible grid points scored
};

/// Means of I/Y and K/Y over `window`.
[[nodiscard]] MomentTargets moments(const MacroPanel& panel, const YearRange& window);

/// Model I/Y and K/Y at (beta, gamma); nullopt when the point is infeasible.
[[nodiscard]] std::optional<ImpliedMoments> implied_moments(double beta, double gamma, const FixedParams& fixed);

/// Weighted squared relative moment error.
[[nodiscard]] double calibration_objective(const ImpliedMoments& implied, const MomentTargets& targets,
                                           const MomentWeights& weights) noexcept;

/// Exhaustive search over the grid. Ties on the objective go to the smaller
/// beta, then the smaller gamma, so the result does not depend on `threads`
/// (0 = hardware concurrency).
[[nodiscard]] CalibrationResult grid_search(const MomentTargets& targets, const GridSpec& grid,
                                            const FixedParams& fixed, const MomentWeights& weights = {},
                                            unsigned threads = 1);

struct Scenario {
    double beta = 0.0;
    double gamma = 0.0;
};

struct ScenarioRow {
    double beta = 0.0;
    double gamma = 0.0;
    std::optional<SteadyState> steady_state;  ///< empty when the scenario is infeasible
    std::string error_code;
    std::string error;
};

[[nodiscard]] std::vector<ScenarioRow> scenario_table(std::span<const Scenario> scenarios, const FixedParams& fixed);

/// Reads `beta,gamma` rows (header required).
[[nodiscard]] std::vector<Scenario> parse_scenarios(std::string_view csv_text);

}  // namespace growthkit
