// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eewf/channel.hpp"
#include "eewf/oracle.hpp"
#include "eewf/solver.hpp"
#include "eewf/waterfilling.hpp"

using namespace eewf;

namespace {

EigenSpectrum spectrum_of(std::vector<double> lambdas) {
    EigenSpectrum s;
    s.lambdas = std::move(lambdas);
    return s;
}

} // namespace

TEST_CASE("rate") {
    CHECK(rate(std::vector{2.0, 2.0}, std::vector{0.25, 0.25}, 1.0) ==
          doctest::Approx(2.0 * std::log2(1.5)).epsilon(1e-12));
    CHECK(rate(std::vector{2.0, 2.0}, std::vector{0.0, 0.0}, 1.0) == 0.0);
    // zero-gain channel carries no rate regardless of its allocation
    CHECK(rate(std::vector{4.0, 0.0}, std::vector{0.25, 0.3}, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rate(std::vector{4.0, 0.0}, std::vector{0.25, 7.0}, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(rate(std::vector{1.0}, std::vector{1.0, 2.0}, 1.0), invalid_input);
}

TEST_CASE("energy efficiency") {
    CHECK(energy_efficiency(2.0 * std::log2(1.5), 0.5) ==
          doctest::Approx(2.33985000288).epsilon(1e-10));
    CHECK(energy_efficiency(1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(energy_efficiency(1.0, 0.0), undefined_efficiency);
}

TEST_CASE("allocation from levels") {
    // boundary of the clamp: 1/(ln2 (eta - muPt lambda)) == sigma2/lambda
    const double mu_pt = 0.5;
    const double eta = 1.0 / std::numbers::ln2 + mu_pt;
    const auto p = allocation_from_levels(std::vector{1.0}, eta, mu_pt, 1.0);
    CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));

    // identical water levels over an isotropic set give equal powers
    const auto q =
        allocation_from_levels(std::vector{4.0, 4.0, 4.0, 4.0}, 10.0, 0.1, 1.0);
    for (double v : q) CHECK(v == doctest::Approx(q[0]).epsilon(1e-14));

    CHECK_THROWS_AS(allocation_from_levels(std::vector{1.0}, 1.0, 2.0, 1.0),
                    infeasible_multiplier);
}

TEST_CASE("alpha coefficients") {
    const auto a = alpha_coefficients(std::vector{1.0}, 1.0, 1.0, 1.0);
    CHECK(a[0] == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-14));

    const auto b = alpha_coefficients(std::vector{2.0}, 1.0, 1.0, 1.0);
    CHECK(b[0] == doctest::Approx(a[0] / 2.0).epsilon(1e-14));

    const auto c = alpha_coefficients(std::vector{3.0, 3.0, 3.0}, 2.0, 1.0, 1.0);
    CHECK(c[0] == c[1]);
    CHECK(c[1] == c[2]);

    CHECK_THROWS_AS(alpha_coefficients(std::vector{1.0, 0.0}, 1.0, 1.0, 1.0),
                    invalid_input);
}

TEST_CASE("solve on a single channel achieves channel inversion") {
    const auto sol = solve_eewf(spectrum_of({1.0}), SolveSettings{});
    CHECK(sol.p[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.ptx == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.eta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.active == 1);
    CHECK(sol.mu > 0.0);
}

TEST_CASE("solve on the isotropic two-channel spectrum") {
    const auto sol = solve_eewf(spectrum_of({2.0, 2.0}), SolveSettings{});
    CHECK(sol.p[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(sol.p[1] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(sol.ptx == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.rate == doctest::Approx(1.16992500144).epsilon(1e-10));
    CHECK(sol.eta == doctest::Approx(2.33985000288).epsilon(1e-10));
    CHECK(sol.active == 2);
    CHECK(sol.mu > 0.0);
}

TEST_CASE("solve on a rank-1 spectrum") {
    const auto sol = solve_eewf(spectrum_of({4.0, 0.0}), SolveSettings{});
    CHECK(sol.p[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sol.p[1] == 0.0);
    CHECK(sol.ptx == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sol.rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.eta == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sol.active == 1);
}

TEST_CASE("solve matches the grid oracle on an asymmetric spectrum") {
    const auto sol = solve_eewf(spectrum_of({3.0, 1.0}), SolveSettings{});
    const auto oracle = simplex_grid_search(std::vector{3.0, 1.0}, 1.0, 1.0, 200);
    CHECK(sol.eta == doctest::Approx(oracle.eta).epsilon(1e-4));
    for (int i = 0; i < 2; ++i) {
        CHECK(sol.p[i] == doctest::Approx(oracle.p[i]).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("degenerate spectrum rejected") {
    CHECK_THROWS_AS(solve_eewf(spectrum_of({0.0, 0.0}), SolveSettings{}),
                    degenerate_channel);
}

TEST_CASE("non-convergence carries the last iterate") {
    SolveSettings s;
    s.max_outer = 1; // the asymmetric case needs two outer steps
    try {
        solve_eewf(spectrum_of({3.0, 1.0}), s);
        FAIL("expected convergence_failure");
    } catch (const convergence_failure& e) {
        CHECK(e.last_iterate.iterations == 1);
        CHECK(e.last_iterate.eta > 0.0);
        CHECK(e.last_iterate.ptx > 0.0);
    }
}

TEST_CASE("kkt residual certifies converged points") {
    SolveSettings settings;

    auto iso = solve_eewf(spectrum_of({2.0, 2.0}), settings);
    CHECK(kkt_residual(iso, std::vector{2.0, 2.0}, settings) < 1e-8);

    auto siso = solve_eewf(spectrum_of({1.0}), settings);
    CHECK(kkt_residual(siso, std::vector{1.0}, settings) < 1e-10);

    // a 1% perturbation moved back onto the constraint is clearly non-stationary
    auto sol = solve_eewf(spectrum_of({3.0, 2.0}), settings);
    REQUIRE(sol.active == 2);
    const std::vector<double> lam{3.0, 2.0};
    EewfSolution bent = sol;
    bent.p[0] *= 1.01;
    const double prx = receive_power(lam, bent.p);
    for (double& v : bent.p) v *= settings.p_r / prx;
    bent.ptx = bent.p[0] + bent.p[1];
    bent.rate = rate(lam, bent.p, settings.sigma2);
    bent.eta = bent.rate / bent.ptx;
    CHECK(kkt_residual(bent, lam, settings) > 1e-4);
}

TEST_CASE("constraint is tight on random spectra") {
    SolveSettings settings;
    for (int t = 0; t < 50; ++t) {
        const auto s = eigen_spectrum(sample_rayleigh(1 + t % 16, 2024, t));
        const auto sol = solve_eewf(s, settings);
        const double prx = receive_power(s.lambdas, sol.p);
        CHECK(std::abs(prx - settings.p_r) / settings.p_r <= 1e-8);
        int strictly_positive = 0;
        for (double v : sol.p) strictly_positive += v > 0.0;
        CHECK(strictly_positive == sol.active);
        CHECK(sol.eta == doctest::Approx(sol.rate / sol.ptx).epsilon(1e-10));
    }
}

TEST_CASE("no feasible point beats the solution") {
    SolveSettings settings;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto s = eigen_spectrum(sample_rayleigh(4, 555, 3));
    const auto sol = solve_eewf(s, settings);

    for (int k = 0; k < 100; ++k) {
        // random point of the receive-power simplex (Dirichlet via exponentials)
        std::vector<double> q(s.lambdas.size());
        double total = 0.0;
        for (double& v : q) {
            v = -std::log(unit(rng));
            total += v;
        }
        std::vector<double> p(q.size());
        double ptx = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] *= settings.p_r / total;
            p[i] = q[i] / s.lambdas[i];
            ptx += p[i];
        }
        const double eta = rate(s.lambdas, p, settings.sigma2) / ptx;
        CHECK(eta <= sol.eta * (1.0 + 1e-9));
    }
}

TEST_CASE("solution rate never exceeds capacity at the same transmit power") {
    SolveSettings settings;
    for (int t = 0; t < 30; ++t) {
        const auto s = eigen_spectrum(sample_rayleigh(2 + t % 8, 77, t));
        const auto sol = solve_eewf(s, settings);
        const auto wf = solve_wf(s, sol.ptx, settings.sigma2);
        CHECK(sol.rate <= wf.capacity * (1.0 + 1e-9));
    }
}

TEST_CASE("joint scaling of noise and receive power") {
    const std::vector<double> lam{5.0, 2.5, 1.0};
    SolveSettings base;
    const auto a = solve_eewf(spectrum_of(lam), base);

    const double c = 3.7;
    SolveSettings scaled;
    scaled.sigma2 = base.sigma2 * c;
    scaled.p_r = base.p_r * c;
    const auto b = solve_eewf(spectrum_of(lam), scaled);

    for (std::size_t i = 0; i < lam.size(); ++i) {
        CHECK(b.p[i] == doctest::Approx(a.p[i] * c).epsilon(1e-8));
    }
    CHECK(b.rate == doctest::Approx(a.rate).epsilon(1e-8));
    CHECK(b.eta == doctest::Approx(a.eta / c).epsilon(1e-8));
}
