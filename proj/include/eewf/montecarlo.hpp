// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eewf/solver.hpp"

namespace eewf {

struct SimConfig {
    std::vector<int> antenna_counts{1, 2, 4, 8, 16};
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20};
    double p_r = 1.0;            // receive constraint for the efficiency solver
    double p_t = 1.0;            // transmit budget for the water-filling baseline
    int trials = 10000;
    std::uint64_t seed = 20260810;
    double truncation_cut = 0.01; // λ cutoff for the SISO bound experiments
    int pilot_trials = 500;       // calibration run length
    int workers = 0;              // 0: EEWF_THREADS env var, else hardware
    SolveSettings solver;         // sigma2/p_r are overridden per grid point

    void validate() const;
};

/// Ensemble averages of one algorithm family at one grid point.
struct Moments {
    double eta_avg = 0.0;
    double eta_stderr = 0.0;
    double rate_avg = 0.0;
    double rate_stderr = 0.0;
    double ptx_avg = 0.0;
    double ptx_stderr = 0.0;
    double nchan_avg = 0.0;
    double nchan_stderr = 0.0;
    double prx_avg = 0.0;
    double prx_stderr = 0.0;
};

/// Both families solved on the same realizations at one (n, sigma2) point.
struct EnsembleStats {
    int n = 0;
    double sigma2 = 0.0;
    int trials = 0;   // trials that entered the averages
    int failures = 0; // excluded trials
    std::uint64_t seed = 0;
    Moments eewf;
    Moments wf;

    double eewf_snr_db() const;
    double wf_snr_db() const;
};

/// Per-trial: sample a Rayleigh channel, solve the receive-power-constrained
/// efficiency problem and the transmit-power-constrained water-filling on the
/// same realization, and average. Deterministic for fixed (seed, n, sigma2)
/// regardless of worker count.
EnsembleStats run_ensemble(int n, double sigma2, const SimConfig& config);

struct SweepRow {
    std::string algorithm; // "eewf" or "wf"
    int n = 0;
    double target_snr_db = 0.0;
    double realized_snr_db = 0.0;
    Moments m;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
};

/// Full grid: for every antenna count and target SNR, pick the noise variance
/// that realizes the target average SNR (exact mapping for the water-filling
/// family; pilot run plus one fixed-point correction for the efficiency
/// family, whose transmit power is an output) and emit one row per family.
std::vector<SweepRow> sweep(const SimConfig& config);

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
std::vector<SweepRow> parse_sweep_csv(std::istream& in);

/// Fading-SISO bound experiment: truncated channel inversion (drop λ below
/// the cutoff, rescale the retained sample to mean 1) under the equal-SNR
/// condition Pₜ = ⟨1/λ⟩ P_r.
struct BoundsRow {
    double snr_db = 0.0;
    double inv_lambda_mean = 0.0; // over the retained, rescaled sample
    double rate_ratio = 0.0;      // Rᵃ / C_e
    double rate_lower = 0.0;
    double rate_upper = 1.0;
    double eff_ratio = 0.0;       // ηᵃ / ηᵃ_Ce
    double eff_lower = 1.0;
    double eff_upper = 0.0;
    bool inside = false;
    int kept = 0;
};

std::vector<BoundsRow> siso_bounds_experiment(const SimConfig& config,
                                              std::span<const double> snr_grid_db);

/// Order-fixed tree reduction; identical result for any worker count.
double pairwise_sum(std::span<const double> values);

/// Worker cap: explicit override, else EEWF_THREADS, else hardware.
int worker_count(int requested);

/// "%.12g" serialization used for every floating-point CSV field.
std::string format_g12(double value);

} // namespace eewf
