// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace eewf {

struct OracleResult {
    std::vector<double> p; // full-length allocation, zeros on zero-gain channels
    double eta = 0.0;
    int grid_resolution = 0;
};

/// Brute-force maximizer of the efficiency ratio on the receive-power
/// simplex: enumerates qᵢ = λᵢpᵢ on a uniform grid of {q ≥ 0, Σq = P_r},
/// then locally refines the best cell by coordinate transfers with 20 step
/// halvings. A test instrument for up to 4 positive eigenvalues; fully
/// independent of the solver path.
OracleResult simplex_grid_search(std::span<const double> lambdas, double p_r,
                                 double sigma2, int resolution);

} // namespace eewf
