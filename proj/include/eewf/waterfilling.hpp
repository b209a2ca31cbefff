// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "eewf/channel.hpp"

namespace eewf {

/// Capacity-achieving allocation under a total transmit-power budget.
struct WfSolution {
    std::vector<double> p;
    double water_level = 0.0;
    double capacity = 0.0; // bit/s/Hz
    double ptx = 0.0;      // Σ pᵢ
    double prx = 0.0;      // Σ λᵢpᵢ
    int active = 0;
};

/// Classical water-filling: pᵢ = (w − σ²/λᵢ)⁺ with w chosen by bisection so
/// that Σpᵢ = Pₜ, then snapped to the exact level for the final active set.
WfSolution solve_wf(const EigenSpectrum& spectrum, double p_t, double sigma2);

/// Sample mean of the water-filling capacity over Rayleigh realizations
/// (raw spectra). Deterministic for a fixed seed.
double ergodic_capacity(int n, double p_t, double sigma2, int trials,
                        std::uint64_t seed);

} // namespace eewf
