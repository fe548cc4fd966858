#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths: plain std::pow, textbook formulas, brute-force loops.

#include "growthkit/data.hpp"
#include "growthkit/model.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline double bgp_growth(double a, double n, double alpha) {
    return std::pow(1.0 + a, 1.0 / (1.0 - alpha)) * (1.0 + n) - 1.0;
}

inline double capital_output(double alpha, double beta, double gamma, double delta, double g) {
    return alpha * beta / (std::pow(1.0 + g, gamma) - beta * (1.0 - delta));
}

inline double investment_output(double alpha, double beta, double gamma, double delta, double g) {
    return capital_output(alpha, beta, gamma, delta, g) * (g + delta);
}

inline double k_bar(double alpha, double beta, double gamma, double delta, double g) {
    return std::pow(capital_output(alpha, beta, gamma, delta, g), 1.0 / (1.0 - alpha));
}

/// Euler gap written as marginal-utility ratio minus one, from the resource
/// constraint and first-order condition in effective units.
inline double euler_gap(double k0, double k1, double k2, const growthkit::BgpParams& p) {
    const double c0 = std::pow(k0, p.alpha) - (1.0 + p.g) * k1 + (1.0 - p.delta) * k0;
    const double c1 = std::pow(k1, p.alpha) - (1.0 + p.g) * k2 + (1.0 - p.delta) * k1;
    const double marginal_today = std::pow(c0, -p.gamma);
    const double marginal_tomorrow = std::pow((1.0 + p.g) * c1, -p.gamma);
    return p.beta * marginal_tomorrow * (p.alpha * std::pow(k1, p.alpha - 1.0) + 1.0 - p.delta) / marginal_today -
           1.0;
}

inline double mean(const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return static_cast<double>(s / v.size());
}

inline double population_std(const std::vector<double>& v) {
    const long double m = mean(v);
    long double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return static_cast<double>(std::sqrt(s / v.size()));
}

/// Panel with Y = A K^alpha L^(1-alpha); C and I are fixed output shares.
inline growthkit::MacroPanel synthesize(int first_year, const std::vector<double>& A, const std::vector<double>& K,
                                        const std::vector<double>& L, double alpha, bool with_tfp = false) {
    growthkit::MacroPanel p;
    p.first_year = first_year;
    for (std::size_t t = 0; t < A.size(); ++t) {
        const double y = A[t] * std::pow(K[t], alpha) * std::pow(L[t], 1.0 - alpha);
        p.output.push_back(y);
        p.capital.push_back(K[t]);
        p.labor.push_back(L[t]);
        p.consumption.push_back(0.7 * y);
        p.investment.push_back(0.3 * y);
    }
    if (with_tfp) p.tfp = A;
    return p;
}

/// Panel with every series constant at `value`.
inline growthkit::MacroPanel constant_panel(int first_year, int years, double value) {
    growthkit::MacroPanel p;
    p.first_year = first_year;
    const std::vector<double> v(static_cast<std::size_t>(years), value);
    p.output = p.capital = p.labor = p.consumption = p.investment = v;
    return p;
}

/// Random parameters satisfying the range invariants and feasibility
/// (finite steady state with positive consumption, so I/Y < 1); when
/// `transformed` is set the effective discount beta (1+g)^(1-gamma) is also < 1.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    growthkit::ModelParams next(bool transformed = false) {
        while (true) {
            growthkit::ModelParams p{uni(0.15, 0.6), uni(0.80, 0.995), uni(0.2, 5.0), uni(0.01, 0.2),
                                     uni(-0.01, 0.04), uni(-0.01, 0.04)};
            if (std::abs(p.gamma - 1.0) < 1e-3) continue;
            const double g = bgp_growth(p.a, p.n, p.alpha);
            if (!(g + p.delta > 0.0)) continue;
            if (!(std::pow(1.0 + g, p.gamma) - p.beta * (1.0 - p.delta) > 0.0)) continue;
            if (!(investment_output(p.alpha, p.beta, p.gamma, p.delta, g) < 1.0)) continue;
            if (transformed && !(p.beta * std::pow(1.0 + g, 1.0 - p.gamma) < 1.0)) continue;
            return p;
        }
    }

private:
    double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::mt19937_64 rng_;
};

}  // namespace oracle
