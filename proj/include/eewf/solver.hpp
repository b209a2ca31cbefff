// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "eewf/channel.hpp"
#include "eewf/error.hpp"

namespace eewf {

struct SolveSettings {
    double eta_tol = 1e-10;  // relative convergence tolerance of the outer loop
    double root_tol = 1e-12; // residual tolerance for the multiplier root
    int max_outer = 200;
    double sigma2 = 1.0;     // noise variance
    double p_r = 1.0;        // receive-power constraint

    void validate() const;
};

/// Receive-power-constrained efficiency maximum: allocation, multiplier and
/// the achieved rate/power/efficiency triple.
struct EewfSolution {
    std::vector<double> p;   // per-channel transmit power, full length
    double mu = 0.0;         // equality-constraint multiplier, > 0
    double eta = 0.0;        // rate / transmit power
    double rate = 0.0;
    double ptx = 0.0;        // total transmit power
    int active = 0;          // channels with p_i > 0
    int iterations = 0;      // outer-loop count
};

/// Outer loop hit max_outer without the efficiency settling.
class convergence_failure : public error {
public:
    convergence_failure(const std::string& what, EewfSolution last)
        : error(what), last_iterate(std::move(last)) {}

    EewfSolution last_iterate;
};

/// Σ log2(1 + λᵢ pᵢ / σ²).
double rate(std::span<const double> lambdas, std::span<const double> p, double sigma2);

/// rate / transmit power; zero power is rejected (the unconstrained problem's
/// trivial maximizer, excluded by the receive-power constraint).
double energy_efficiency(double rate_val, double ptx_val);

/// Per-channel power from the variable water levels,
/// pᵢ = (1/(ln2·(η − μPₜλᵢ)) − σ²/λᵢ)⁺. mu_pt is the product μ·Pₜ.
/// A nonpositive level denominator for an active channel is infeasible.
std::vector<double> allocation_from_levels(std::span<const double> lambdas_active,
                                           double eta, double mu_pt, double sigma2);

/// αᵢ = ln2 · η · (nσ² + P_r) / λᵢ over the active set.
std::vector<double> alpha_coefficients(std::span<const double> lambdas_active,
                                       double eta, double sigma2, double p_r);

/// Monic coefficients c₀..cₙ (ascending, cₙ = 1) of
/// Pₙ(x) = Π(x−αᵢ) + Σᵢ Π_{j≠i}(x−αⱼ), built from the elementary symmetric
/// sums by incremental polynomial multiplication.
std::vector<double> mu_polynomial_coefficients(std::span<const double> alphas);

struct MuRoot {
    double x = 0.0;          // root of Σ 1/(x−αᵢ) = −1 on (−∞, min α)
    bool mu_positive = true; // x > 0; a nonpositive x means μ ≤ 0
    int iterations = 0;
};

/// Locate the unique root of Σ 1/(x−αᵢ) = −1 below min α by bisection on the
/// strictly increasing g(x) = Σ 1/(αᵢ−x) − 1. Flags x ≤ 0 instead of failing;
/// only a converged solution requires μ > 0.
MuRoot solve_mu_root(std::span<const double> alphas, double root_tol = 1e-12);

/// μ = x / (ln2 · Pₜ · (nσ² + P_r)). Note μPₜ is independent of Pₜ.
double mu_from_root(double x, double ptx, double sigma2, double p_r, int n_active);

/// Maximize Σlog2(1+λᵢpᵢ/σ²) / Σpᵢ subject to Σλᵢpᵢ = P_r, p ≥ 0.
EewfSolution solve_eewf(const EigenSpectrum& spectrum, const SolveSettings& settings);

/// Dimensionless first-order optimality residual, measured relative to the
/// gradient scale η/Pₜ: max over active channels of the stationarity defect
/// plus the worst sign violation over inactive channels.
double kkt_residual(const EewfSolution& solution, std::span<const double> lambdas,
                    const SolveSettings& settings);

/// Real roots of a polynomial given by ascending coefficients
/// (companion-matrix eigenvalues); ascending order.
std::vector<double> polynomial_real_roots(std::span<const double> coeffs);

struct RootCrossCheck {
    double bisection_root = 0.0;
    double matched_polynomial_root = 0.0;
    double rel_diff = 0.0;             // |bisection − matched| / max(1, |bisection|)
    std::vector<double> real_roots;    // all real roots of the monic polynomial
    int roots_below_min_alpha = 0;     // must be exactly 1
};

/// Independent check of the bisection root against the polynomial route.
RootCrossCheck cross_check_mu_root(std::span<const double> alphas);

} // namespace eewf
