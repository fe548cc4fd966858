#include "growthkit/model.hpp"

#include "growthkit/accounting.hpp"
#include "growthkit/error.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace growthkit {

namespace {

constexpr const char* kModule = "model";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void check_open_unit(const char* name, double v) {
    if (!(v > 0.0 && v < 1.0)) {
        throw Error(kModule, "param_out_of_range", std::string(name) + " must lie in (0,1), got " + num(v));
    }
}

void check_ranges(const BgpParams& p) {
    check_open_unit("alpha", p.alpha);
    check_open_unit("beta", p.beta);
    check_open_unit("delta", p.delta);
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
        throw Error(kModule, "param_out_of_range", "gamma must be > 0, got " + num(p.gamma));
    }
    if (p.gamma == 1.0) {
        throw Error(kModule, "log_utility_excluded",
                    "gamma = 1 (log utility) is excluded; use gamma = 1 +/- epsilon instead");
    }
    if (!(p.g > -1.0) || !std::isfinite(p.g)) {
        throw Error(kModule, "param_out_of_range", "g must be > -1, got " + num(p.g));
    }
}

// (1+g)^gamma
double growth_factor_pow(double g, double gamma) { return std::exp(gamma * std::log1p(g)); }

}  // namespace

double bgp_growth(double a, double n, double alpha) {
    check_open_unit("alpha", alpha);
    if (!(a > -1.0) || !(n > -1.0)) {
        throw Error(kModule, "param_out_of_range", "a and n must be > -1");
    }
    return std::exp(std::log1p(a) / (1.0 - alpha) + std::log1p(n)) - 1.0;
}

double ModelParams::growth() const { return bgp_growth(a, n, alpha); }

BgpParams ModelParams::bgp() const { return {alpha, beta, gamma, delta, growth()}; }

double feasibility_margin(const BgpParams& p) noexcept {
    return growth_factor_pow(p.g, p.gamma) - p.beta * (1.0 - p.delta);
}

bool is_feasible(const BgpParams& p) noexcept {
    try {
        validate(p);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void validate(const BgpParams& p) {
    check_ranges(p);
    const double margin = feasibility_margin(p);
    if (!(margin > 0.0)) {
        throw Error(kModule, "no_steady_state",
                    "no finite steady state: (1+g)^gamma - beta*(1-delta) = " + num(margin) + " must be > 0");
    }
}

void validate(const ModelParams& p) { validate(p.bgp()); }

double capital_output_ratio(const BgpParams& p) {
    validate(p);
    return p.alpha * p.beta / feasibility_margin(p);
}

double capital_output_ratio(const ModelParams& p) { return capital_output_ratio(p.bgp()); }

double investment_output_ratio(const BgpParams& p) { return (p.g + p.delta) * capital_output_ratio(p); }

double investment_output_ratio(const ModelParams& p) { return investment_output_ratio(p.bgp()); }

SteadyState steady_state_k(const BgpParams& p) {
    SteadyState ss;
    ss.g = p.g;
    ss.ky = capital_output_ratio(p);
    ss.iy = (p.g + p.delta) * ss.ky;
    if (!(ss.iy > 0.0)) {
        throw Error(kModule, "no_steady_state", "g + delta must be > 0 for positive steady-state investment");
    }
    if (!(ss.iy < 1.0)) {
        throw Error(kModule, "no_steady_state",
                    "steady-state I/Y = " + num(ss.iy) + " leaves no positive consumption");
    }
    ss.k_bar = std::exp(std::log(ss.ky) / (1.0 - p.alpha));
    return ss;
}

SteadyState steady_state_k(const ModelParams& p) { return steady_state_k(p.bgp()); }

double effective_consumption(double k_t, double k_next, const BgpParams& p) {
    return std::exp(p.alpha * std::log(k_t)) + (1.0 - p.delta) * k_t - (1.0 + p.g) * k_next;
}

double euler_residual(double k_t, double k_t1, double k_t2, const BgpParams& p) {
    validate(p);
    if (!(k_t > 0.0 && k_t1 > 0.0 && k_t2 > 0.0)) {
        throw Error(kModule, "non_positive_capital", "capital must be > 0");
    }
    const double c_t = effective_consumption(k_t, k_t1, p);
    const double c_t1 = effective_consumption(k_t1, k_t2, p);
    if (!(c_t > 0.0 && c_t1 > 0.0)) {
        throw Error(kModule, "non_positive_consumption",
                    "implied consumption must be > 0 (c_t = " + num(c_t) + ", c_t+1 = " + num(c_t1) + ")");
    }
    const double gross_return = p.alpha * std::exp((p.alpha - 1.0) * std::log(k_t1)) + 1.0 - p.delta;
    const double growth_discount = std::exp(-p.gamma * (std::log(c_t1 / c_t) + std::log1p(p.g)));
    return p.beta * growth_discount * gross_return - 1.0;
}

double euler_residual(double k_t, double k_t1, double k_t2, const ModelParams& p) {
    return euler_residual(k_t, k_t1, k_t2, p.bgp());
}

EffectivePanel to_effective(const MacroPanel& panel, double alpha) {
    check_open_unit("alpha", alpha);
    const std::vector<double> tfp = panel.tfp ? *panel.tfp : tfp_residual(panel, AlphaSpec::fixed(alpha)).values;

    EffectivePanel out{panel.first_year, {}, {}, {}, {}};
    for (std::size_t t = 0; t < panel.size(); ++t) {
        const double deflator = std::exp(std::log(tfp[t]) / (1.0 - alpha)) * panel.labor[t];
        if (!(deflator > 0.0) || !std::isfinite(deflator)) {
            throw Error(kModule, "bad_deflator", "effective-labor deflator must be finite and > 0",
                        "year " + std::to_string(panel.first_year + static_cast<int>(t)));
        }
        out.y.push_back(panel.output[t] / deflator);
        out.k.push_back(panel.capital[t] / deflator);
        out.c.push_back(panel.consumption[t] / deflator);
        out.i.push_back(panel.investment[t] / deflator);
    }
    return out;
}

}  // namespace growthkit
