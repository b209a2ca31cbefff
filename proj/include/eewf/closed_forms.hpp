// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>

namespace eewf {

enum class ChannelFamily { Isotropic, Rank1, Siso };

/// Exact efficiency-optimal operating point of a special static channel.
struct ClosedFormSolution {
    double p_per_channel = 0.0; // power on each active channel
    double eta = 0.0;
    double rate = 0.0;
    double ptx = 0.0;
    ChannelFamily family = ChannelFamily::Siso;
};

/// All eigenvalues equal (λᵢ = N under the trace-N² convention):
/// pᵢ = P_r/N², R = N log2(1 + P_r/(σ²N)), Pₜ = P_r/N.
ClosedFormSolution isotropic_eewf(int n, double p_r, double sigma2);

/// Single nonzero eigenvalue λ₁ = N²:
/// p₁ = P_r/N², R = log2(1 + P_r/σ²), Pₜ = P_r/N².
ClosedFormSolution rank1_eewf(int n, double p_r, double sigma2);

/// Large-antenna rate limits.
double isotropic_rate_limit(double p_r, double sigma2); // P_r / (ln2 σ²)
double rank1_rate_limit(double p_r, double sigma2);     // log2(1 + P_r/σ²)

/// Bounds on Rᵃ/C_e for the fading SISO channel under the equal-SNR
/// condition Pₜ = ⟨1/λ⟩P_r: returns (1/⟨1/λ⟩, 1).
std::pair<double, double> siso_rate_ratio_bounds(double inv_lambda_mean);

/// Bounds on ηᵃ/ηᵃ_Ce under the same condition (and ⟨λ⟩ = 1): (1, ⟨1/λ⟩).
std::pair<double, double> siso_efficiency_ratio_bounds(double inv_lambda_mean);

struct InequalitySlack {
    bool holds = false;
    double slack = 0.0; // right side minus left side; nonnegative when it holds
};

/// log2(1 + n/Σ(1/(λᵢγ))) ≤ (1/n)Σ log2(1+λᵢγ)
/// (mean-inequality chain through the product bound).
InequalitySlack check_hm_logsum_inequality(std::span<const double> lambdas, double gamma);

struct BernoulliJensenSlacks {
    bool holds = false;
    double bernoulli_slack = 0.0; // log2(1+γ/⟨1/λ⟩) − (1/⟨1/λ⟩)log2(1+γ)
    double jensen_slack = 0.0;    // log2(1+⟨λ⟩γ) − ⟨log2(1+λγ)⟩
};

/// Both lower-bound inequalities evaluated on a sample (needs ⟨1/λ⟩ ≥ 1).
BernoulliJensenSlacks check_bernoulli_jensen_bounds(std::span<const double> lambdas,
                                                    double gamma);

} // namespace eewf
