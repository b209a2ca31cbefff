// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eewf {

/// How the eigenvalue trace is scaled.
///  - Raw: eigenvalues of H†H as computed.
///  - StaticTrace: rescaled so Σλᵢ = N² (static-channel convention).
///  - EnsembleUnit: raw spectrum of a unit-variance Rayleigh draw, whose
///    trace equals N² in expectation over the ensemble.
enum class Normalization { StaticTrace, EnsembleUnit, Raw };

/// Square complex channel realization with its sampling provenance.
struct ChannelMatrix {
    Eigen::MatrixXcd entries;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;

    int n() const { return static_cast<int>(entries.rows()); }
};

/// Nonincreasing, nonnegative eigenvalues of H†H (squared singular values).
struct EigenSpectrum {
    std::vector<double> lambdas;
    Normalization normalization = Normalization::Raw;

    int size() const { return static_cast<int>(lambdas.size()); }
};

/// i.i.d. circularly symmetric complex Gaussian entries with unit second
/// moment (real/imag parts each N(0, 1/2)). Pure function of
/// (n, seed, trial_index): the same key always yields the same matrix, on any
/// worker and in any call order.
ChannelMatrix sample_rayleigh(int n, std::uint64_t seed, std::uint64_t trial_index);

/// Eigenvalues of H†H, sorted nonincreasing; values below 1e-12·λ₁ are
/// clamped to zero. Result is tagged Raw.
EigenSpectrum eigen_spectrum(const ChannelMatrix& h);

/// Uniformly rescale so the trace equals N².
EigenSpectrum normalize_static(const EigenSpectrum& s);

/// Noiseless power collected at the receiver, Σλᵢpᵢ.
double receive_power(std::span<const double> lambdas, std::span<const double> p);

/// Matrices from file: each record is a JSON array of [re, im] pairs,
/// row-major; a file may hold one record or an array of records.
std::vector<ChannelMatrix> read_matrix_records(const std::string& path);

} // namespace eewf
