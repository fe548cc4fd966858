#include "growthkit/accounting.hpp"
#include "growthkit/error.hpp"
#include "growthkit/model.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace growthkit;

namespace {

std::string error_code(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

const BgpParams kScenario1{0.33, 0.97, 1.8, 0.05, 0.02};
const BgpParams kScenario3{0.33, 0.93, 0.4, 0.05, 0.02};
const ModelParams kCalibrated{0.34, 0.93, 0.4, 0.05, 0.0004, 0.02};

}  // namespace

TEST_CASE("bgp_growth") {
    CHECK(bgp_growth(0.0, 0.0, 0.34) == 0.0);
    // frozen from direct evaluation: 1.020618245505525
    CHECK(1.0 + bgp_growth(0.0004, 0.02, 0.34) == doctest::Approx(1.020618245505525).epsilon(1e-14));
    CHECK(1.0 + bgp_growth(0.01, 0.01, 0.5) == doctest::Approx(1.030301).epsilon(1e-14));
    CHECK(error_code([] { (void)bgp_growth(0.01, 0.01, 1.0); }) == "model.param_out_of_range");
    CHECK(error_code([] { (void)bgp_growth(-1.0, 0.01, 0.3); }) == "model.param_out_of_range");
}

TEST_CASE("BGP rate satisfies the level growth relation") {
    oracle::ParamSampler sampler(21);
    for (int i = 0; i < 1000; ++i) {
        const auto p = sampler.next();
        const double g = bgp_growth(p.a, p.n, p.alpha);
        const double lhs = std::pow(1.0 + g, 1.0 - p.alpha);
        const double rhs = (1.0 + p.a) * std::pow(1.0 + p.n, 1.0 - p.alpha);
        CHECK(std::abs(lhs - rhs) < 1e-12);
        CHECK(std::abs(g - oracle::bgp_growth(p.a, p.n, p.alpha)) < 1e-13);
    }
}

TEST_CASE("capital_output_ratio against direct evaluation") {
    // frozen oracle values: 2.7886282927153445 and 2.46600097699042
    CHECK(capital_output_ratio(kScenario1) == doctest::Approx(2.7886282927153445).epsilon(1e-13));
    CHECK(capital_output_ratio(kScenario3) == doctest::Approx(2.46600097699042).epsilon(1e-13));
    CHECK(capital_output_ratio(kScenario1) ==
          doctest::Approx(oracle::capital_output(0.33, 0.97, 1.8, 0.05, 0.02)).epsilon(1e-13));
}

TEST_CASE("feasibility boundary") {
    // with g < 0 the margin (1+g)^gamma - beta (1-delta) can reach zero for beta < 1
    const BgpParams shrinking{0.33, 0.9, 2.0, 0.05, -0.04};
    const double margin = feasibility_margin(shrinking);
    CHECK(margin == doctest::Approx(std::pow(0.96, 2.0) - 0.9 * 0.95).epsilon(1e-14));
    CHECK(margin > 0.0);
    const double boundary_beta = std::pow(0.96, 2.0) / 0.95;
    CHECK(boundary_beta < 1.0);
    const BgpParams near{0.33, boundary_beta * (1.0 - 1e-9), 2.0, 0.05, -0.04};
    CHECK(capital_output_ratio(near) > 1e7);
    // K/Y is finite but I/Y = 0.01 K/Y exceeds one: no steady state with positive consumption
    CHECK(error_code([&] { (void)steady_state_k(near); }) == "model.no_steady_state");
    const BgpParams beyond{0.33, boundary_beta * 1.001, 2.0, 0.05, -0.04};
    CHECK(error_code([&] { (void)capital_output_ratio(beyond); }) == "model.no_steady_state");
    CHECK_FALSE(is_feasible(beyond));
    CHECK(is_feasible(near));
}

TEST_CASE("parameter range checks") {
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.33, 0.97, 1.0, 0.05, 0.02}); }) ==
          "model.log_utility_excluded");
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.0, 0.97, 1.8, 0.05, 0.02}); }) ==
          "model.param_out_of_range");
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.33, 1.0, 1.8, 0.05, 0.02}); }) ==
          "model.param_out_of_range");
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.33, 0.97, 1.8, 0.0, 0.02}); }) ==
          "model.param_out_of_range");
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.33, 0.97, -0.5, 0.05, 0.02}); }) ==
          "model.param_out_of_range");
    CHECK(error_code([] { (void)capital_output_ratio(BgpParams{0.33, 0.97, 1.8, 0.05, -1.0}); }) ==
          "model.param_out_of_range");
    CHECK(capital_output_ratio(BgpParams{0.33, 0.97, 1.0 + 1e-9, 0.05, 0.02}) > 0.0);
}

TEST_CASE("investment_output_ratio") {
    // frozen oracle value 0.19520398049007415
    CHECK(investment_output_ratio(kScenario1) == doctest::Approx(0.19520398049007415).epsilon(1e-13));
    // g + delta = 0: no gross investment on a stationary effective path
    const BgpParams stationary{0.33, 0.9, 2.0, 0.05, -0.05};
    CHECK(investment_output_ratio(stationary) == 0.0);
}

TEST_CASE("great-ratio and steady-state identities over random draws") {
    oracle::ParamSampler sampler(1);
    for (int i = 0; i < 1000; ++i) {
        const auto p = sampler.next();
        const SteadyState ss = steady_state_k(p);
        const double g = p.growth();
        CHECK(std::abs(investment_output_ratio(p) - (g + p.delta) * capital_output_ratio(p)) < 1e-12);
        CHECK(std::abs(std::pow(ss.k_bar, 1.0 - p.alpha) - capital_output_ratio(p)) < 1e-12 * ss.ky);
        CHECK(std::abs(ss.iy - (g + p.delta) * ss.ky) < 1e-12);
        CHECK(ss.k_bar == doctest::Approx(oracle::k_bar(p.alpha, p.beta, p.gamma, p.delta, g)).epsilon(1e-11));
        CHECK(ss.g == g);
        CHECK(ss.k_bar > 0.0);
        CHECK(ss.iy > 0.0);
    }
}

TEST_CASE("steady_state_k at the calibrated parameters") {
    const SteadyState ss = steady_state_k(kCalibrated);
    // frozen from direct evaluation: 4.0952692447998755 (the often-quoted 4.27 does not follow from these inputs)
    CHECK(ss.k_bar == doctest::Approx(4.0952692447998755).epsilon(1e-12));
    CHECK(ss.g == doctest::Approx(0.020618245505525046).epsilon(1e-12));
    CHECK(std::abs(euler_residual(ss.k_bar, ss.k_bar, ss.k_bar, kCalibrated)) < 1e-10);
}

TEST_CASE("k_bar rises with beta and falls with delta") {
    oracle::ParamSampler sampler(8);
    for (int i = 0; i < 50; ++i) {
        ModelParams p = sampler.next();
        double previous = 0.0;
        for (double beta = 0.80; beta < 0.99; beta += 0.01) {
            p.beta = beta;
            if (!is_feasible(p.bgp()) || investment_output_ratio(p) >= 1.0) break;
            const double k = steady_state_k(p).k_bar;
            CHECK(k > previous);
            previous = k;
        }
        p = sampler.next();
        previous = std::numeric_limits<double>::infinity();
        for (double delta = 0.01; delta < 0.3; delta += 0.01) {
            p.delta = delta;
            if (!is_feasible(p.bgp()) || p.growth() + delta <= 0.0 || investment_output_ratio(p) >= 1.0) continue;
            const double k = steady_state_k(p).k_bar;
            CHECK(k < previous);
            previous = k;
        }
    }
}

TEST_CASE("euler_residual") {
    const BgpParams p = kCalibrated.bgp();
    const double k = steady_state_k(p).k_bar;
    CHECK(std::abs(euler_residual(k, k, k, p)) < 1e-10);
    // more capital tomorrow lowers its marginal product
    CHECK(euler_residual(k, 1.01 * k, k, p) < 0.0);

    oracle::ParamSampler sampler(5);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> jitter(0.8, 1.2);
    int checked = 0;
    while (checked < 500) {
        const BgpParams q = sampler.next().bgp();
        const double kb = steady_state_k(q).k_bar;
        const double k0 = kb * jitter(rng), k1 = kb * jitter(rng), k2 = kb * jitter(rng);
        if (effective_consumption(k0, k1, q) <= 0.0 || effective_consumption(k1, k2, q) <= 0.0) continue;
        CHECK(euler_residual(k0, k1, k2, q) == doctest::Approx(oracle::euler_gap(k0, k1, k2, q)).epsilon(1e-9));
        ++checked;
    }

    CHECK(error_code([&] { (void)euler_residual(k, 100.0 * k, k, p); }) == "model.non_positive_consumption");
}

TEST_CASE("Euler fixed point holds for random draws") {
    oracle::ParamSampler sampler(2);
    for (int i = 0; i < 1000; ++i) {
        const auto p = sampler.next();
        const double k = steady_state_k(p).k_bar;
        CHECK(std::abs(euler_residual(k, k, k, p)) < 1e-10);
    }
}

TEST_CASE("growth-adjusted accumulation differs from the unadjusted form by g k_bar") {
    const BgpParams p = kCalibrated.bgp();
    const double k = steady_state_k(p).k_bar;
    const double adjusted = effective_consumption(k, k, p);
    const double unadjusted = std::pow(k, p.alpha) - k + (1.0 - p.delta) * k;
    CHECK(unadjusted - adjusted == doctest::Approx(p.g * k).epsilon(1e-12));
    // steady-state consumption share in the adjusted form equals 1 - I/Y
    CHECK(adjusted / std::pow(k, p.alpha) == doctest::Approx(1.0 - steady_state_k(p).iy).epsilon(1e-12));
}

TEST_CASE("to_effective") {
    const MacroPanel raw = []{
        MacroPanel p = oracle::constant_panel(2000, 3, 1.0);
        p.output = {2.0, 3.0, 4.0};
        p.capital = {5.0, 6.0, 7.0};
        p.tfp = std::vector<double>{1.0, 1.0, 1.0};
        return p;
    }();
    const auto same = to_effective(raw, 0.4);
    CHECK(same.y == raw.output);
    CHECK(same.k == raw.capital);

    MacroPanel p = oracle::constant_panel(2000, 2, 1.0);
    p.output = {8.0, 8.0};
    p.capital = {8.0, 8.0};
    p.labor = {2.0, 2.0};
    p.tfp = std::vector<double>{2.0, 2.0};
    const auto eff = to_effective(p, 0.5);
    CHECK(eff.y[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eff.k[0] == doctest::Approx(1.0).epsilon(1e-14));

    // residual-based deflator gives y = k^alpha
    std::mt19937_64 rng(9);
    std::lognormal_distribution<double> d(0.0, 0.5);
    std::vector<double> A, K, L;
    for (int t = 0; t < 30; ++t) {
        A.push_back(d(rng));
        K.push_back(50.0 * d(rng));
        L.push_back(10.0 * d(rng));
    }
    const auto synth = oracle::synthesize(1990, A, K, L, 0.34);
    const auto e = to_effective(synth, 0.34);
    for (std::size_t t = 0; t < e.y.size(); ++t) {
        CHECK(std::abs(e.y[t] - std::pow(e.k[t], 0.34)) < 1e-10 * e.y[t]);
    }
}

TEST_CASE("effective units are constant on an exact balanced growth path") {
    const double alpha = 0.34, a = 0.015, n = 0.01;
    const double g = bgp_growth(a, n, alpha);
    std::vector<double> A, K, L;
    for (int t = 0; t < 40; ++t) {
        A.push_back(1.3 * std::pow(1.0 + a, t));
        L.push_back(20.0 * std::pow(1.0 + n, t));
        K.push_back(75.0 * std::pow(1.0 + g, t));
    }
    const auto e = to_effective(oracle::synthesize(1980, A, K, L, alpha, true), alpha);
    for (std::size_t t = 1; t < e.k.size(); ++t) {
        CHECK(std::abs(e.k[t] - e.k[0]) < 1e-10 * e.k[0]);
        CHECK(std::abs(e.y[t] - e.y[0]) < 1e-10 * e.y[0]);
        CHECK(std::abs(e.y[t] - std::pow(e.k[t], alpha)) < 1e-10 * e.y[t]);
    }
}
