#include "growthkit/calibrate.hpp"

#include "growthkit/error.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace growthkit {

namespace {

constexpr const char* kModule = "calibrate";
constexpr double kSnap = 1e12;

double snap(double v) { return std::round(v * kSnap) / kSnap; }

std::vector<double> axis(double lo, double hi, double step) {
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(snap(lo + static_cast<double>(i) * step));
    return out;
}

struct Candidate {
    double objective = std::numeric_limits<double>::infinity();
    double beta = 0.0;
    double gamma = 0.0;
    ImpliedMoments implied;
    bool found = false;
};

// Strict total order: objective, then beta, then gamma.
bool better(const Candidate& a, const Candidate& b) {
    if (!a.found) return false;
    if (!b.found) return true;
    if (a.objective != b.objective) return a.objective < b.objective;
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.gamma < b.gamma;
}

struct Partial {
    Candidate best;
    std::size_t infeasible = 0;
    std::size_t evaluated = 0;
};

void validate_targets(const MomentTargets& t) {
    if (!(t.iy_target > 0.0 && t.iy_target < 1.0)) {
        throw Error(kModule, "bad_targets", "I/Y target must lie in (0,1)");
    }
    if (!(t.ky_target > 0.0) || !std::isfinite(t.ky_target)) {
        throw Error(kModule, "bad_targets", "K/Y target must be > 0");
    }
}

}  // namespace

void GridSpec::validate() const {
    auto check_axis = [](const char* name, double lo, double hi, double step) {
        if (!(lo < hi)) throw Error(kModule, "bad_grid", std::string(name) + " grid needs min < max");
        if (!(step >= 1e-9) || !std::isfinite(step)) {
            throw Error(kModule, "bad_grid", std::string(name) + " grid step must be >= 1e-9");
        }
    };
    check_axis("beta", beta_min, beta_max, beta_step);
    check_axis("gamma", gamma_min, gamma_max, gamma_step);
    if (!(beta_min > 0.0 && beta_max < 1.0)) {
        throw Error(kModule, "bad_grid", "beta grid must lie inside (0,1)");
    }
    if (!(gamma_min > 0.0)) throw Error(kModule, "bad_grid", "gamma grid must lie above 0");
}

std::vector<double> GridSpec::betas() const { return axis(beta_min, beta_max, beta_step); }

std::vector<double> GridSpec::gammas() const {
    auto out = axis(gamma_min, gamma_max, gamma_step);
    std::erase_if(out, [](double g) { return g > 0.999 && g < 1.001; });
    return out;
}

MomentTargets moments(const MacroPanel& panel, const YearRange& window) {
    if (!panel.span().contains(window)) {
        throw Error(kModule, "window_out_of_span",
                    "window " + std::to_string(window.start) + ":" + std::to_string(window.end) +
                        " outside panel span");
    }
    const auto s = static_cast<std::size_t>(window.start - panel.first_year);
    const auto n = static_cast<std::size_t>(window.length());
    double iy = 0.0;
    double ky = 0.0;
    for (std::size_t t = s; t < s + n; ++t) {
        iy += panel.investment[t] / panel.output[t];
        ky += panel.capital[t] / panel.output[t];
    }
    return {iy / static_cast<double>(n), ky / static_cast<double>(n), window};
}

std::optional<ImpliedMoments> implied_moments(double beta, double gamma, const FixedParams& fixed) {
    const BgpParams p = fixed.with(beta, gamma);
    if (!is_feasible(p)) return std::nullopt;
    const ImpliedMoments m{investment_output_ratio(p), capital_output_ratio(p)};
    // same admissibility as steady_state_k: positive investment and consumption
    if (!(m.iy > 0.0 && m.iy < 1.0)) return std::nullopt;
    return m;
}

double calibration_objective(const ImpliedMoments& implied, const MomentTargets& targets,
                             const MomentWeights& weights) noexcept {
    const double e_iy = (implied.iy - targets.iy_target) / targets.iy_target;
    const double e_ky = (implied.ky - targets.ky_target) / targets.ky_target;
    return weights.iy * e_iy * e_iy + weights.ky * e_ky * e_ky;
}

CalibrationResult grid_search(const MomentTargets& targets, const GridSpec& grid, const FixedParams& fixed,
                              const MomentWeights& weights, unsigned threads) {
    validate_targets(targets);
    grid.validate();
    if (!(weights.iy >= 0.0 && weights.ky >= 0.0) || (weights.iy == 0.0 && weights.ky == 0.0)) {
        throw Error(kModule, "bad_weights", "weights must be >= 0 and not both zero");
    }

    const auto betas = grid.betas();
    const auto gammas = grid.gammas();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(betas.size()));

    std::vector<Partial> partials(threads);
    auto work = [&](unsigned worker) {
        Partial& part = partials[worker];
        for (std::size_t i = worker; i < betas.size(); i += threads) {
            for (const double gamma : gammas) {
                const auto implied = implied_moments(betas[i], gamma, fixed);
                if (!implied) {
                    ++part.infeasible;
                    continue;
                }
                ++part.evaluated;
                const Candidate c{calibration_objective(*implied, targets, weights), betas[i], gamma, *implied, true};
                if (better(c, part.best)) part.best = c;
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }

    Partial total;
    for (const auto& part : partials) {
        total.infeasible += part.infeasible;
        total.evaluated += part.evaluated;
        if (better(part.best, total.best)) total.best = part.best;
    }
    if (!total.best.found) {
        throw Error(kModule, "all_infeasible",
                    "every grid point violates feasibility (1+g)^gamma - beta*(1-delta) > 0");
    }

    CalibrationResult result;
    result.beta = total.best.beta;
    result.gamma = total.best.gamma;
    result.objective = total.best.objective;
    result.implied_iy = total.best.implied.iy;
    result.implied_ky = total.best.implied.ky;
    result.steady_state = steady_state_k(fixed.with(result.beta, result.gamma));
    result.infeasible_count = total.infeasible;
    result.evaluated_count = total.evaluated;
    return result;
}

std::vector<ScenarioRow> scenario_table(std::span<const Scenario> scenarios, const FixedParams& fixed) {
    std::vector<ScenarioRow> rows;
    rows.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        ScenarioRow row{s.beta, s.gamma, std::nullopt, {}, {}};
        try {
            row.steady_state = steady_state_k(fixed.with(s.beta, s.gamma));
        } catch (const Error& e) {
            row.error_code = e.code();
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Scenario> parse_scenarios(std::string_view csv_text) {
    const auto lines = csv::lines(csv_text);
    if (lines.empty()) throw Error(kModule, "empty_input", "scenario CSV is empty");

    const auto header = csv::split(lines.front().second, ',');
    const auto beta_col = std::find(header.begin(), header.end(), "beta") - header.begin();
    const auto gamma_col = std::find(header.begin(), header.end(), "gamma") - header.begin();
    if (beta_col == std::ssize(header) || gamma_col == std::ssize(header)) {
        throw Error(kModule, "missing_column", "scenario CSV needs 'beta' and 'gamma' columns",
                    "row " + std::to_string(lines.front().first));
    }

    std::vector<Scenario> out;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t row = lines[r].first;
        const auto cells = csv::split(lines[r].second, ',');
        auto read = [&](std::ptrdiff_t col, const char* name) {
            const auto idx = static_cast<std::size_t>(col);
            const auto value = idx < cells.size() ? csv::to_double(cells[idx]) : std::nullopt;
            if (!value) {
                throw Error(kModule, "non_numeric", std::string(name) + " is not a number",
                            csv::location(row, name));
            }
            return *value;
        };
        out.push_back({read(beta_col, "beta"), read(gamma_col, "gamma")});
    }
    return out;
}

}  // namespace growthkit
