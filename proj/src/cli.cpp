#include "growthkit/cli.hpp"

#include "growthkit/accounting.hpp"
#include "growthkit/calibrate.hpp"
#include "growthkit/data.hpp"
#include "growthkit/error.hpp"
#include "growthkit/model.hpp"
#include "growthkit/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace growthkit::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json num(double v) { return report_precision(v); }

// Range flags are part of the flag grammar, so malformed values are usage errors.
YearRange flag_range(const std::string& flag, const std::string& text) {
    try {
        return parse_year_range(text);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<YearRange> flag_ranges(const std::string& flag, const std::string& text) {
    try {
        return parse_year_ranges(text);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

struct OutputFlags {
    std::string format = "json";
    std::string path;

    void add(CLI::App* sub, const std::string& default_format = "json") {
        format = default_format;
        sub->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--output", path, "Write the report to this file instead of stdout");
    }
    [[nodiscard]] bool csv() const { return format == "csv"; }

    void emit(const std::string& text, std::ostream& out) const {
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error("cli", "cannot_write", "cannot open '" + path + "' for writing", path);
        file << text;
    }
};

/// alpha, delta and the growth rate, given either as g or as (a, n).
struct GrowthFlags {
    double alpha = 0.0;
    double delta = 0.0;
    std::optional<double> g;
    std::optional<double> a;
    std::optional<double> n;

    void add(CLI::App* sub) {
        sub->add_option("--alpha", alpha, "Capital share in (0,1)")->required();
        sub->add_option("--delta", delta, "Depreciation rate in (0,1)")->required();
        auto* g_opt = sub->add_option("--g", g, "Balanced-growth rate (alternative to --a/--n)");
        auto* a_opt = sub->add_option("--a", a, "Productivity growth rate per year");
        auto* n_opt = sub->add_option("--n", n, "Labor growth rate per year");
        a_opt->needs(n_opt);
        n_opt->needs(a_opt);
        g_opt->excludes(a_opt);
        g_opt->excludes(n_opt);
    }

    [[nodiscard]] double growth() const {
        if (g) return *g;
        if (a && n) return bgp_growth(*a, *n, alpha);
        throw UsageError("one of --g or --a/--n is required");
    }
};

struct PreferenceFlags {
    double beta = 0.0;
    double gamma = 0.0;

    void add(CLI::App* sub) {
        sub->add_option("--beta", beta, "Discount factor in (0,1)")->required();
        sub->add_option("--gamma", gamma, "Relative risk aversion, > 0 and != 1")->required();
    }
};

BgpParams bgp_from(const GrowthFlags& gf, const PreferenceFlags& pf) {
    if (gf.a && gf.n) return ModelParams{gf.alpha, pf.beta, pf.gamma, gf.delta, *gf.a, *gf.n}.bgp();
    return {gf.alpha, pf.beta, pf.gamma, gf.delta, gf.growth()};
}

json error_object(const Error& e) {
    json j;
    j["code"] = e.code();
    j["module"] = e.module();
    j["message"] = e.what();
    if (e.location()) j["location"] = *e.location();
    return j;
}

json usage_object(const std::string& message) {
    return json{{"code", "cli.usage"}, {"module", "cli"}, {"message", message}};
}

// --- account -------------------------------------------------------------

struct AccountCommand {
    std::string input;
    std::optional<double> alpha;
    std::string alpha_window;
    std::string ranges;
    bool percent = false;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("account", "Growth-accounting table: log growth of output split into "
                                                  "capital, labor and TFP contributions");
        sub->add_option("--input", input, "Panel CSV")->required();
        auto* a = sub->add_option("--alpha", alpha,
                                  "Capital share; default is 1 - mean(labor_share) when the panel has that column");
        auto* w = sub->add_option("--alpha-window", alpha_window,
                                  "START:END over which labor_share is averaged (default: full span)");
        a->excludes(w);
        sub->add_option("--ranges", ranges, "Comma-separated START:END periods (default: full span)");
        sub->add_flag("--percent", percent, "Also report exp(growth)-1 as growth_pct");
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        const MacroPanel panel = parse_panel(read_text_file(input));
        const AlphaSpec spec = alpha ? AlphaSpec::fixed(*alpha)
                                     : AlphaSpec::from_labor_share(alpha_window.empty()
                                                                       ? std::nullopt
                                                                       : std::optional(flag_range("--alpha-window", alpha_window)));
        const std::vector<YearRange> periods =
            ranges.empty() ? std::vector<YearRange>{panel.span()} : flag_ranges("--ranges", ranges);
        const auto rows = accounting_table(panel, spec, periods);

        if (output.csv()) {
            std::string text = std::string("start,end,growth,capital,labor,tfp") + (percent ? ",growth_pct" : "") + "\n";
            for (const auto& r : rows) {
                text += std::to_string(r.range.start) + "," + std::to_string(r.range.end) + "," + fmt12(r.growth) +
                        "," + fmt12(r.contrib_capital) + "," + fmt12(r.contrib_labor) + "," + fmt12(r.contrib_tfp);
                if (percent) text += "," + fmt12(std::expm1(r.growth));
                text += "\n";
            }
            return text;
        }
        json arr = json::array();
        for (const auto& r : rows) {
            json j{{"start", r.range.start},           {"end", r.range.end},
                   {"growth", num(r.growth)},          {"capital", num(r.contrib_capital)},
                   {"labor", num(r.contrib_labor)},    {"tfp", num(r.contrib_tfp)}};
            if (percent) j["growth_pct"] = num(std::expm1(r.growth));
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }
};

// --- stats ---------------------------------------------------------------

struct StatsCommand {
    std::string input;
    std::string series = "output";
    std::string transform = "level";
    std::string windows;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "stats", "Per-window mean and population standard deviation (divides by N, not N-1) of one series");
        sub->add_option("--input", input, "Panel CSV")->required();
        sub->add_option("--series", series, "Column name")
            ->check(CLI::IsMember({"output", "capital", "labor", "consumption", "investment", "tfp", "labor_share"}))
            ->capture_default_str();
        sub->add_option("--transform", transform,
                        "level, log-growth (ln x[t+1]/x[t]) or pct-growth (x[t+1]/x[t]-1); growth values "
                        "are labelled with the earlier year t")
            ->check(CLI::IsMember({"level", "log-growth", "pct-growth"}))
            ->capture_default_str();
        sub->add_option("--windows", windows, "Comma-separated START:END windows")->required();
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        const MacroPanel panel = parse_panel(read_text_file(input));
        YearSeries s = panel.series(series);
        if (transform != "level") {
            s = log_growth(s);
            if (transform == "pct-growth") {
                for (double& v : s.values) v = std::expm1(v);
            }
        }
        const auto ranges = flag_ranges("--windows", windows);
        const auto stats = window_stats(s, ranges);

        if (output.csv()) {
            std::string text = "start,end,mean,std\n";
            for (const auto& w : stats) {
                text += std::to_string(w.range.start) + "," + std::to_string(w.range.end) + "," + fmt12(w.mean) +
                        "," + fmt12(w.std) + "\n";
            }
            return text;
        }
        json arr = json::array();
        for (const auto& w : stats) {
            arr.push_back({{"start", w.range.start}, {"end", w.range.end}, {"mean", num(w.mean)}, {"std", num(w.std)}});
        }
        return arr.dump(2) + "\n";
    }
};

// --- window --------------------------------------------------------------

struct WindowCommand {
    std::string input;
    int min_len = kDefaultWindowMinLength;
    double tol = kDefaultWindowTolerance;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("window",
                                       "Candidate steady-state windows: maximal spans where consumption and "
                                       "output log growth differ by at most --tol on average");
        sub->add_option("--input", input, "Panel CSV")->required();
        sub->add_option("--min-len", min_len, "Minimum window length in years")->capture_default_str();
        sub->add_option("--tol", tol, "Maximum mean |dln C - dln Y|")->capture_default_str();
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        const MacroPanel panel = parse_panel(read_text_file(input));
        const auto found = select_steady_window(panel, min_len, tol);
        if (output.csv()) {
            std::string text = "start,end,length,mean_abs_diff\n";
            for (const auto& w : found) {
                text += std::to_string(w.range.start) + "," + std::to_string(w.range.end) + "," +
                        std::to_string(w.range.length()) + "," + fmt12(w.mean_abs_diff) + "\n";
            }
            return text;
        }
        json arr = json::array();
        for (const auto& w : found) {
            arr.push_back({{"start", w.range.start},
                           {"end", w.range.end},
                           {"length", w.range.length()},
                           {"mean_abs_diff", num(w.mean_abs_diff)}});
        }
        return arr.dump(2) + "\n";
    }
};

// --- calibrate -----------------------------------------------------------

struct CalibrateCommand {
    std::optional<double> iy;
    std::optional<double> ky;
    std::string input;
    std::string window;
    GrowthFlags growth;
    GridSpec grid;
    MomentWeights weights;
    unsigned threads = 0;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("calibrate",
                                       "Exhaustive (beta, gamma) grid search matching model I/Y and K/Y to targets");
        auto* iy_opt = sub->add_option("--iy", iy, "Target mean I/Y");
        auto* ky_opt = sub->add_option("--ky", ky, "Target mean K/Y");
        auto* in_opt = sub->add_option("--input", input, "Panel CSV to derive targets from (with --window)");
        auto* win_opt = sub->add_option("--window", window, "START:END window for data moments");
        iy_opt->needs(ky_opt);
        ky_opt->needs(iy_opt);
        in_opt->needs(win_opt);
        win_opt->needs(in_opt);
        iy_opt->excludes(in_opt);
        ky_opt->excludes(in_opt);
        growth.add(sub);
        sub->add_option("--beta-min", grid.beta_min)->capture_default_str();
        sub->add_option("--beta-max", grid.beta_max)->capture_default_str();
        sub->add_option("--beta-step", grid.beta_step)->capture_default_str();
        sub->add_option("--gamma-min", grid.gamma_min)->capture_default_str();
        sub->add_option("--gamma-max", grid.gamma_max, "gamma in (0.999, 1.001) is always skipped")
            ->capture_default_str();
        sub->add_option("--gamma-step", grid.gamma_step)->capture_default_str();
        sub->add_option("--w-iy", weights.iy, "Weight on the squared relative I/Y error")->capture_default_str();
        sub->add_option("--w-ky", weights.ky, "Weight on the squared relative K/Y error")->capture_default_str();
        sub->add_option("--threads", threads, "Worker threads (0 = hardware concurrency); result is independent of it")
            ->capture_default_str();
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        MomentTargets targets;
        if (iy && ky) {
            targets = {*iy, *ky, {}};
        } else if (!input.empty()) {
            targets = moments(parse_panel(read_text_file(input)), flag_range("--window", window));
        } else {
            throw UsageError("targets required: --iy/--ky or --input/--window");
        }
        const FixedParams fixed{growth.alpha, growth.delta, growth.growth()};
        const CalibrationResult r = grid_search(targets, grid, fixed, weights, threads);

        const std::vector<std::pair<const char*, double>> fields = {
            {"beta", r.beta},
            {"gamma", r.gamma},
            {"objective", r.objective},
            {"implied_iy", r.implied_iy},
            {"implied_ky", r.implied_ky},
            {"iy_target", targets.iy_target},
            {"ky_target", targets.ky_target},
            {"g", r.steady_state.g},
            {"k_bar", r.steady_state.k_bar},
            {"ky", r.steady_state.ky},
            {"iy", r.steady_state.iy},
        };
        if (output.csv()) {
            std::string header;
            std::string values;
            for (const auto& [k, v] : fields) {
                header += std::string(k) + ",";
                values += fmt12(v) + ",";
            }
            return header + "infeasible_count\n" + values + std::to_string(r.infeasible_count) + "\n";
        }
        json j;
        for (const auto& [k, v] : fields) j[k] = num(v);
        j["infeasible_count"] = r.infeasible_count;
        return j.dump(2) + "\n";
    }
};

// --- scenarios -----------------------------------------------------------

struct ScenariosCommand {
    std::string input;
    GrowthFlags growth;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("scenarios", "Closed-form K/Y, I/Y and k_bar for each (beta, gamma) row");
        sub->add_option("--input", input, "CSV with beta,gamma columns")->required();
        growth.add(sub);
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        const auto scenarios = parse_scenarios(read_text_file(input));
        const auto rows = scenario_table(scenarios, FixedParams{growth.alpha, growth.delta, growth.growth()});
        if (output.csv()) {
            std::string text = "beta,gamma,ky,iy,k_bar,error\n";
            for (const auto& r : rows) {
                text += fmt12(r.beta) + "," + fmt12(r.gamma) + ",";
                if (r.steady_state) {
                    text += fmt12(r.steady_state->ky) + "," + fmt12(r.steady_state->iy) + "," +
                            fmt12(r.steady_state->k_bar) + ",\n";
                } else {
                    text += ",,," + r.error_code + "\n";
                }
            }
            return text;
        }
        json arr = json::array();
        for (const auto& r : rows) {
            json j{{"beta", num(r.beta)}, {"gamma", num(r.gamma)}};
            if (r.steady_state) {
                j["ky"] = num(r.steady_state->ky);
                j["iy"] = num(r.steady_state->iy);
                j["k_bar"] = num(r.steady_state->k_bar);
            } else {
                j["error"] = {{"code", r.error_code}, {"message", r.error}};
            }
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }
};

// --- steady-state --------------------------------------------------------

struct SteadyStateCommand {
    GrowthFlags growth;
    PreferenceFlags prefs;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("steady-state", "Closed-form g, k_bar, K/Y and I/Y");
        growth.add(sub);
        prefs.add(sub);
        output.add(sub);
    }

    [[nodiscard]] std::string execute() const {
        const SteadyState ss = steady_state_k(bgp_from(growth, prefs));
        if (output.csv()) {
            return "g,k_bar,ky,iy\n" + fmt12(ss.g) + "," + fmt12(ss.k_bar) + "," + fmt12(ss.ky) + "," + fmt12(ss.iy) +
                   "\n";
        }
        json j{{"g", num(ss.g)}, {"k_bar", num(ss.k_bar)}, {"ky", num(ss.ky)}, {"iy", num(ss.iy)}};
        return j.dump(2) + "\n";
    }
};

// --- simulate ------------------------------------------------------------

struct SimulateCommand {
    GrowthFlags growth;
    PreferenceFlags prefs;
    std::optional<double> k0;
    std::optional<double> k0_ratio;
    int horizon = kDefaultHorizon;
    double tol = kDefaultSimulationTol;
    OutputFlags output;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("simulate", "Transition path to the steady state by shooting on c0");
        growth.add(sub);
        prefs.add(sub);
        auto* abs_opt = sub->add_option("--k0", k0, "Initial effective capital");
        auto* rel_opt = sub->add_option("--k0-ratio", k0_ratio, "Initial effective capital as a multiple of k_bar");
        abs_opt->excludes(rel_opt);
        sub->add_option("--horizon", horizon, "Periods T")->capture_default_str();
        sub->add_option("--tol", tol, "Euler-gap tolerance; converged iff terminal error < 10*tol")
            ->capture_default_str();
        output.add(sub, "csv");
    }

    [[nodiscard]] std::string execute() const {
        if (!k0 && !k0_ratio) throw UsageError("one of --k0 or --k0-ratio is required");
        const BgpParams p = bgp_from(growth, prefs);
        const double start = k0 ? *k0 : *k0_ratio * steady_state_k(p).k_bar;
        const TransitionPath path = simulate_transition(start, p, horizon, tol);
        const auto T = static_cast<std::size_t>(path.horizon);

        if (output.csv()) {
            std::string text = "t,k,c,y,i,euler_gap\n";
            for (std::size_t t = 0; t <= T; ++t) {
                text += std::to_string(t) + "," + fmt12(path.k[t]) + ",";
                text += (t < T ? fmt12(path.c[t]) : "") + "," + fmt12(path.output(t, p)) + ",";
                text += (t < T ? fmt12(path.investment(t, p)) : "") + ",";
                text += (t + 1 < T ? fmt12(path.euler_gaps[t]) : "") + "\n";
            }
            return text;
        }
        json rows = json::array();
        for (std::size_t t = 0; t <= T; ++t) {
            json j{{"t", t}, {"k", num(path.k[t])}};
            if (t < T) j["c"] = num(path.c[t]);
            j["y"] = num(path.output(t, p));
            if (t < T) j["i"] = num(path.investment(t, p));
            if (t + 1 < T) j["euler_gap"] = num(path.euler_gaps[t]);
            rows.push_back(std::move(j));
        }
        json j{{"k_bar", num(path.k_bar)},
               {"converged", path.converged},
               {"terminal_error", num(path.terminal_error)},
               {"segments", path.segments},
               {"path", std::move(rows)}};
        return j.dump(2) + "\n";
    }
};

}  // namespace

double report_precision(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"growthkit: growth accounting, steady-state calibration and transition dynamics.\n"
                 "All inputs must be in one consistent constant-price unit; results are ratios or log "
                 "differences and therefore unit-free."};
    app.name("growthkit");
    app.require_subcommand(1, 1);

    AccountCommand account;
    StatsCommand stats;
    WindowCommand window;
    CalibrateCommand calibrate;
    ScenariosCommand scenarios;
    SteadyStateCommand steady;
    SimulateCommand simulate;
    account.add(app);
    stats.add(app);
    window.add(app);
    calibrate.add(app);
    scenarios.add(app);
    steady.add(app);
    simulate.add(app);

    std::vector<std::string> storage{"growthkit"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << usage_object(e.what()).dump() << "\n";
        return kExitUsageError;
    }

    try {
        std::string report;
        const OutputFlags* output = nullptr;
        if (app.got_subcommand("account")) {
            report = account.execute();
            output = &account.output;
        } else if (app.got_subcommand("stats")) {
            report = stats.execute();
            output = &stats.output;
        } else if (app.got_subcommand("window")) {
            report = window.execute();
            output = &window.output;
        } else if (app.got_subcommand("calibrate")) {
            report = calibrate.execute();
            output = &calibrate.output;
        } else if (app.got_subcommand("scenarios")) {
            report = scenarios.execute();
            output = &scenarios.output;
        } else if (app.got_subcommand("steady-state")) {
            report = steady.execute();
            output = &steady.output;
        } else {
            report = simulate.execute();
            output = &simulate.output;
        }
        output->emit(report, out);
        return kExitOk;
    } catch (const UsageError& e) {
        err << usage_object(e.what()).dump() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << error_object(e).dump() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << json{{"code", "cli.internal"}, {"module", "cli"}, {"message", e.what()}}.dump() << "\n";
        return kExitDomainError;
    }
}

}  // namespace growthkit::cli
