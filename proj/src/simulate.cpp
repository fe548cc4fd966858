#include "growthkit/simulate.hpp"

#include "growthkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace growthkit {

namespace {

constexpr const char* kModule = "simulate";
constexpr double kSpreadLimit = 1e-11;
constexpr double kConsumptionFloor = 1e-300;
constexpr int kMaxBisections = 2000;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double production(double k, double alpha) { return std::exp(alpha * std::log(k)); }

// Forward dynamics in effective units: resource constraint for k, Euler
// equation for c.
struct Dynamics {
    const BgpParams& p;
    double log_growth_gamma;  // gamma * ln(1+g)

    explicit Dynamics(const BgpParams& params)
        : p(params), log_growth_gamma(params.gamma * std::log1p(params.g)) {}

    [[nodiscard]] double next_capital(double k, double c) const {
        return (production(k, p.alpha) + (1.0 - p.delta) * k - c) / (1.0 + p.g);
    }
    [[nodiscard]] double next_consumption(double c, double k_next) const {
        const double gross_return = p.alpha * std::exp((p.alpha - 1.0) * std::log(k_next)) + 1.0 - p.delta;
        return c * std::exp((std::log(p.beta * gross_return) - log_growth_gamma) / p.gamma);
    }
};

enum class Verdict { SavedTooMuch, ConsumedTooMuch };

struct Shot {
    std::vector<double> k;  // k[0] = start, up to horizon end or first invalid value
    std::vector<double> c;
};

Shot shoot(const Dynamics& dyn, double k_start, double c_start, std::size_t steps) {
    Shot s;
    s.k.reserve(steps + 1);
    s.c.reserve(steps);
    s.k.push_back(k_start);
    double c = c_start;
    for (std::size_t t = 0; t < steps; ++t) {
        s.c.push_back(c);
        const double k_next = dyn.next_capital(s.k.back(), c);
        if (!(k_next > 0.0) || !std::isfinite(k_next)) break;
        s.k.push_back(k_next);
        if (t + 1 < steps) c = dyn.next_consumption(c, k_next);
    }
    return s;
}

// Classifies a candidate initial consumption against the terminal target.
Verdict classify(const Dynamics& dyn, double k_start, double c_start, std::size_t steps, double target) {
    const bool from_below = k_start <= target;
    double k = k_start;
    double c = c_start;
    for (std::size_t t = 0; t < steps; ++t) {
        const double k_next = dyn.next_capital(k, c);
        if (!(k_next > 0.0) || !std::isfinite(k_next)) return Verdict::ConsumedTooMuch;
        if (from_below) {
            if (k_next > target) return Verdict::SavedTooMuch;
            if (k_next < k) return Verdict::ConsumedTooMuch;
        } else {
            if (k_next < target) return Verdict::ConsumedTooMuch;
            if (k_next > k) return Verdict::SavedTooMuch;
        }
        k = k_next;
        if (t + 1 < steps) c = dyn.next_consumption(c, k_next);
    }
    // Never reached the target: short on the way up, still above on the way down.
    return from_below ? Verdict::ConsumedTooMuch : Verdict::SavedTooMuch;
}

// Number of leading dates (counted from the segment start) on which the two
// bracketing shots agree.
std::size_t agreeing_prefix(const Shot& a, const Shot& b, double k_scale) {
    const std::size_t n = std::min(a.k.size(), b.k.size());
    std::size_t t = 0;
    for (; t < n; ++t) {
        if (std::abs(a.k[t] - b.k[t]) > kSpreadLimit * k_scale) break;
        if (t < a.c.size() && t < b.c.size() &&
            std::abs(a.c[t] - b.c[t]) > kSpreadLimit * std::max(a.c[t], b.c[t])) {
            break;
        }
    }
    return t;
}

}  // namespace

double TransitionPath::output(std::size_t t, const BgpParams& p) const { return production(k.at(t), p.alpha); }

double TransitionPath::investment(std::size_t t, const BgpParams& p) const {
    return (1.0 + p.g) * k.at(t + 1) - (1.0 - p.delta) * k.at(t);
}

double utility(double c, double gamma) {
    if (!(c > 0.0)) throw Error(kModule, "non_positive_consumption", "utility needs c > 0, got " + num(c));
    if (!(gamma > 0.0)) throw Error(kModule, "param_out_of_range", "gamma must be > 0");
    if (gamma == 1.0) {
        throw Error(kModule, "log_utility_excluded", "gamma = 1 (log utility) is excluded; use 1 +/- epsilon");
    }
    return std::exp((1.0 - gamma) * std::log(c)) / (1.0 - gamma);
}

double effective_discount(const BgpParams& p) noexcept {
    return p.beta * std::exp((1.0 - p.gamma) * std::log1p(p.g));
}

TransitionPath simulate_transition(double k0, const BgpParams& p, int horizon, double tol) {
    const SteadyState ss = steady_state_k(p);
    if (!(effective_discount(p) < 1.0)) {
        throw Error(kModule, "transformed_discount",
                    "beta*(1+g)^(1-gamma) = " + num(effective_discount(p)) +
                        " must be < 1 for the effective-unit problem to converge");
    }
    if (!(k0 > 0.0) || !std::isfinite(k0)) {
        throw Error(kModule, "infeasible_k0", "initial capital must be finite and > 0, got " + num(k0));
    }
    if (horizon < 2) throw Error(kModule, "bad_horizon", "horizon must be >= 2");
    if (!(tol > 0.0)) throw Error(kModule, "bad_tolerance", "tolerance must be > 0");

    const Dynamics dyn(p);
    const double target = ss.k_bar;
    const auto T = static_cast<std::size_t>(horizon);

    TransitionPath path;
    path.horizon = horizon;
    path.k_bar = target;
    path.k.assign(T + 1, 0.0);
    path.c.assign(T, 0.0);
    path.k[0] = k0;

    std::size_t start = 0;
    while (true) {
        ++path.segments;
        const std::size_t steps = T - start;
        const double k_start = path.k[start];

        double lo = kConsumptionFloor;
        double hi = production(k_start, p.alpha) + (1.0 - p.delta) * k_start;
        if (classify(dyn, k_start, lo, steps, target) != Verdict::SavedTooMuch) {
            throw Error(kModule, "no_bracket",
                        "no initial consumption in [" + num(lo) + ", " + num(hi) + "] reaches k_bar = " +
                            num(target) + " from k = " + num(k_start) + " within " + std::to_string(steps) +
                            " periods",
                        "t = " + std::to_string(start));
        }
        for (int it = 0; it < kMaxBisections; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (classify(dyn, k_start, mid, steps, target) == Verdict::SavedTooMuch ? lo : hi) = mid;
        }

        const Shot saver = shoot(dyn, k_start, lo, steps);
        const Shot spender = shoot(dyn, k_start, hi, steps);
        const std::size_t agree = agreeing_prefix(saver, spender, target);

        if (agree > steps) {
            const bool saver_full = saver.k.size() == steps + 1;
            const bool spender_full = spender.k.size() == steps + 1;
            const Shot* best = saver_full ? &saver : &spender;
            if (saver_full && spender_full &&
                std::abs(spender.k.back() - target) < std::abs(saver.k.back() - target)) {
                best = &spender;
            }
            std::copy(best->k.begin() + 1, best->k.end(), path.k.begin() + static_cast<std::ptrdiff_t>(start) + 1);
            std::copy(best->c.begin(), best->c.end(), path.c.begin() + static_cast<std::ptrdiff_t>(start));
            break;
        }

        // Keep the dates where both shots agree (at least one step) and
        // restart from there.
        const std::size_t keep = std::clamp<std::size_t>(agree == 0 ? 1 : agree - 1, 1, steps);
        if (saver.k.size() <= keep) {
            throw Error(kModule, "non_convergence",
                        "shooting lost the path at t = " + std::to_string(start + saver.k.size()) +
                            "; bracket [" + num(lo) + ", " + num(hi) + "]");
        }
        for (std::size_t t = 1; t <= keep; ++t) path.k[start + t] = saver.k[t];
        for (std::size_t t = 0; t < keep; ++t) path.c[start + t] = saver.c[t];
        start += keep;
        if (start >= T) break;
    }

    path.euler_gaps.reserve(T - 1);
    for (std::size_t t = 0; t + 1 < T; ++t) {
        path.euler_gaps.push_back(euler_residual(path.k[t], path.k[t + 1], path.k[t + 2], p));
    }
    path.terminal_error = std::abs(path.k[T] - target) / target;
    path.converged = path.terminal_error < 10.0 * tol;
    return path;
}

FixedPointReport verify_fixed_point(const BgpParams& p, double tol, int horizon) {
    FixedPointReport report;
    report.k_bar = steady_state_k(p).k_bar;
    report.error_from_below = simulate_transition(0.9 * report.k_bar, p, horizon).terminal_error;
    report.error_from_above = simulate_transition(1.1 * report.k_bar, p, horizon).terminal_error;
    report.max_terminal_error = std::max(report.error_from_below, report.error_from_above);
    report.passed = report.max_terminal_error < tol;
    return report;
}

double path_welfare(const TransitionPath& path, const BgpParams& p) {
    const double discount = effective_discount(p);
    double total = 0.0;
    double weight = 1.0;
    for (const double c : path.c) {
        total += weight * utility(c, p.gamma);
        weight *= discount;
    }
    const double k_T = path.k.back();
    const double c_stay = production(k_T, p.alpha) - (p.g + p.delta) * k_T;
    return total + weight * utility(c_stay, p.gamma) / (1.0 - discount);
}

double constant_capital_welfare(double k0, const BgpParams& p) {
    const double c = production(k0, p.alpha) - (p.g + p.delta) * k0;
    return utility(c, p.gamma) / (1.0 - effective_discount(p));
}

}  // namespace growthkit
