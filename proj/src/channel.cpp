// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/channel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "eewf/error.hpp"
#include "eewf/rng.hpp"

namespace eewf {

ChannelMatrix sample_rayleigh(int n, std::uint64_t seed, std::uint64_t trial_index) {
    if (n < 1) {
        throw invalid_input("sample_rayleigh: antenna count must be >= 1");
    }
    auto engine = substream_engine(seed, static_cast<std::uint64_t>(n), trial_index);
    // variance 1/2 per component so that <|H_ij|^2> = 1
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

    ChannelMatrix h;
    h.seed = seed;
    h.trial_index = trial_index;
    h.entries.resize(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            h.entries(r, c) = {re, im};
        }
    }
    return h;
}

EigenSpectrum eigen_spectrum(const ChannelMatrix& h) {
    const int n = h.n();
    if (n < 1 || h.entries.cols() != h.entries.rows()) {
        throw invalid_input("eigen_spectrum: matrix must be square and nonempty");
    }
    if (!h.entries.allFinite()) {
        throw numeric_error("eigen_spectrum: channel matrix has non-finite entries");
    }

    Eigen::MatrixXcd gram = h.entries.adjoint() * h.entries;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("eigen_spectrum: eigendecomposition failed");
    }

    EigenSpectrum s;
    s.normalization = Normalization::Raw;
    s.lambdas.resize(n);
    for (int i = 0; i < n; ++i) {
        s.lambdas[i] = solver.eigenvalues()(n - 1 - i); // descending
    }
    // numerical rank detection
    const double floor = 1e-12 * std::max(s.lambdas.front(), 0.0);
    for (double& l : s.lambdas) {
        if (l < floor) l = 0.0;
    }
    return s;
}

EigenSpectrum normalize_static(const EigenSpectrum& s) {
    const double trace = std::accumulate(s.lambdas.begin(), s.lambdas.end(), 0.0);
    if (trace <= 0.0) {
        throw degenerate_channel("normalize_static: all-zero spectrum");
    }
    const double n = static_cast<double>(s.size());
    const double scale = n * n / trace;

    EigenSpectrum out = s;
    for (double& l : out.lambdas) l *= scale;
    out.normalization = Normalization::StaticTrace;
    return out;
}

double receive_power(std::span<const double> lambdas, std::span<const double> p) {
    if (lambdas.size() != p.size()) {
        throw invalid_input("receive_power: lambda/allocation length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) {
            throw invalid_input("receive_power: negative allocation entry");
        }
        sum += lambdas[i] * p[i];
    }
    return sum;
}

} // namespace eewf
