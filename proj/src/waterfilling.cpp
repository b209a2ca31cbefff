// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/waterfilling.hpp"

#include <algorithm>
#include <cmath>

#include "eewf/error.hpp"

namespace eewf {

WfSolution solve_wf(const EigenSpectrum& spectrum, double p_t, double sigma2) {
    if (!(p_t > 0.0) || !(sigma2 > 0.0)) {
        throw invalid_input("solve_wf: p_t and sigma2 must be positive");
    }

    std::vector<double> inv_gain; // sigma2 / lambda over positive channels
    for (double lam : spectrum.lambdas) {
        if (lam > 0.0) inv_gain.push_back(sigma2 / lam);
    }
    if (inv_gain.empty()) {
        throw degenerate_channel("solve_wf: no positive eigenvalue");
    }

    auto spilled = [&](double w) {
        double s = 0.0;
        for (double g : inv_gain) s += std::max(0.0, w - g);
        return s;
    };

    // bracket: at the floor nothing is filled; adding the full budget to the
    // floor overfills through the strongest channel alone
    double lo = *std::min_element(inv_gain.begin(), inv_gain.end());
    double hi = lo + p_t;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (spilled(mid) < p_t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // snap to the exact level for the active set the bisection settled on,
    // re-deriving the set until stable
    double w = 0.5 * (lo + hi);
    for (std::size_t pass = 0; pass < inv_gain.size() + 1; ++pass) {
        double sum_inv = 0.0;
        int count = 0;
        for (double g : inv_gain) {
            if (w > g) {
                sum_inv += g;
                ++count;
            }
        }
        if (count == 0) {
            throw numeric_error("solve_wf: empty active set after bisection");
        }
        const double w_exact = (p_t + sum_inv) / count;
        if (w_exact == w) break;
        w = w_exact;
    }

    WfSolution sol;
    sol.water_level = w;
    sol.p.assign(spectrum.lambdas.size(), 0.0);
    for (std::size_t i = 0; i < spectrum.lambdas.size(); ++i) {
        const double lam = spectrum.lambdas[i];
        if (lam <= 0.0) continue;
        const double p = std::max(0.0, w - sigma2 / lam);
        sol.p[i] = p;
        if (p > 0.0) {
            ++sol.active;
            sol.capacity += std::log2(1.0 + lam * p / sigma2);
            sol.ptx += p;
            sol.prx += lam * p;
        }
    }
    return sol;
}

double ergodic_capacity(int n, double p_t, double sigma2, int trials,
                        std::uint64_t seed) {
    if (trials < 1) {
        throw invalid_input("ergodic_capacity: trials must be >= 1");
    }
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto spectrum =
            eigen_spectrum(sample_rayleigh(n, seed, static_cast<std::uint64_t>(t)));
        sum += solve_wf(spectrum, p_t, sigma2).capacity;
    }
    return sum / trials;
}

} // namespace eewf
