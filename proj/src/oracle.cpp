// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "eewf/error.hpp"

namespace eewf {

namespace {

// objective of the ratio problem in q-space (q_i = lambda_i p_i)
double eta_of_q(std::span<const double> q, std::span<const double> lam, double sigma2) {
    double rate = 0.0;
    double ptx = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        rate += std::log2(1.0 + q[i] / sigma2);
        ptx += q[i] / lam[i];
    }
    return ptx > 0.0 ? rate / ptx : -1.0;
}

// enumerate compositions of `res` into m nonnegative parts
void enumerate(std::vector<int>& parts, std::size_t pos, int remaining,
               const auto& visit) {
    if (pos + 1 == parts.size()) {
        parts[pos] = remaining;
        visit(parts);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        parts[pos] = k;
        enumerate(parts, pos + 1, remaining - k, visit);
    }
}

} // namespace

OracleResult simplex_grid_search(std::span<const double> lambdas, double p_r,
                                 double sigma2, int resolution) {
    if (resolution < 100) {
        throw invalid_input("simplex_grid_search: resolution must be >= 100");
    }
    if (!(p_r > 0.0) || !(sigma2 > 0.0)) {
        throw invalid_input("simplex_grid_search: p_r and sigma2 must be positive");
    }

    std::vector<std::size_t> idx;
    std::vector<double> lam;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] > 0.0) {
            idx.push_back(i);
            lam.push_back(lambdas[i]);
        }
    }
    const std::size_t m = lam.size();
    if (m < 1) {
        throw degenerate_channel("simplex_grid_search: no positive eigenvalue");
    }
    if (m > 4) {
        throw unsupported_dimension(
            "simplex_grid_search: more than 4 positive eigenvalues");
    }

    const double cell = p_r / resolution;
    std::vector<double> best_q(m, 0.0);
    double best_eta = -1.0;

    std::vector<int> parts(m, 0);
    std::vector<double> q(m, 0.0);
    enumerate(parts, 0, resolution, [&](const std::vector<int>& k) {
        for (std::size_t i = 0; i < m; ++i) q[i] = k[i] * cell;
        const double e = eta_of_q(q, lam, sigma2);
        if (e > best_eta ||
            (e == best_eta && std::lexicographical_compare(q.begin(), q.end(),
                                                           best_q.begin(), best_q.end()))) {
            best_eta = e;
            best_q = q;
        }
    });

    // refinement: pairwise transfers along the simplex, halving the step
    double step = cell;
    for (int halving = 0; halving < 20; ++halving) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    if (i == j || best_q[j] <= 0.0) continue;
                    const double d = std::min(step, best_q[j]);
                    std::vector<double> trial = best_q;
                    trial[i] += d;
                    trial[j] -= d;
                    const double e = eta_of_q(trial, lam, sigma2);
                    if (e > best_eta) {
                        best_eta = e;
                        best_q = std::move(trial);
                        improved = true;
                    }
                }
            }
        }
        step *= 0.5;
    }

    OracleResult result;
    result.eta = best_eta;
    result.grid_resolution = resolution;
    result.p.assign(lambdas.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        result.p[idx[i]] = best_q[i] / lam[i];
    }
    return result;
}

} // namespace eewf
