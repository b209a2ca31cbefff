// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/QR>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "eewf/channel.hpp"
#include "eewf/error.hpp"

using namespace eewf;

TEST_CASE("sampling is deterministic in (n, seed, trial)") {
    const auto a = sample_rayleigh(1, 42, 7);
    const auto b = sample_rayleigh(1, 42, 7);
    CHECK(a.entries == b.entries);

    const auto c = sample_rayleigh(4, 9, 0);
    const auto d = sample_rayleigh(4, 9, 0);
    CHECK(c.entries == d.entries);
}

TEST_CASE("distinct trials give distinct matrices") {
    const auto a = sample_rayleigh(4, 5, 0);
    const auto b = sample_rayleigh(4, 5, 1);
    CHECK(a.entries != b.entries);

    const auto c = sample_rayleigh(4, 6, 0);
    CHECK(a.entries != c.entries);
}

TEST_CASE("entry second moment is one") {
    // Monte Carlo estimate of <|H_11|^2> over 1e5 draws
    double sum = 0.0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        const auto h = sample_rayleigh(1, 123, t);
        sum += std::norm(h.entries(0, 0));
    }
    CHECK(sum / trials == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("zero antennas rejected") {
    CHECK_THROWS_AS(sample_rayleigh(0, 1, 0), invalid_input);
}

TEST_CASE("spectrum of simple matrices") {
    ChannelMatrix id2;
    id2.entries = Eigen::MatrixXcd::Identity(2, 2);
    const auto s = eigen_spectrum(id2);
    CHECK(s.lambdas[0] == doctest::Approx(1.0));
    CHECK(s.lambdas[1] == doctest::Approx(1.0));
    CHECK(s.normalization == Normalization::Raw);

    ChannelMatrix ones;
    ones.entries = Eigen::MatrixXcd::Constant(2, 2, {1.0, 0.0});
    const auto r = eigen_spectrum(ones);
    CHECK(r.lambdas[0] == doctest::Approx(4.0));
    CHECK(r.lambdas[1] == 0.0); // clamped by rank detection
}

TEST_CASE("spectrum trace equals squared Frobenius norm") {
    for (int t = 0; t < 20; ++t) {
        const auto h = sample_rayleigh(3, 1000, t);
        const auto s = eigen_spectrum(h);
        double trace = 0.0;
        for (double l : s.lambdas) trace += l;
        const double fro = h.entries.squaredNorm();
        CHECK(trace == doctest::Approx(fro).epsilon(1e-9));
        for (std::size_t i = 1; i < s.lambdas.size(); ++i) {
            CHECK(s.lambdas[i - 1] >= s.lambdas[i]);
        }
    }
}

TEST_CASE("non-finite entries rejected") {
    ChannelMatrix h;
    h.entries = Eigen::MatrixXcd::Identity(2, 2);
    h.entries(0, 1) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(eigen_spectrum(h), numeric_error);
}

TEST_CASE("static normalization") {
    EigenSpectrum s;
    s.lambdas = {1.0, 1.0};
    auto out = normalize_static(s);
    CHECK(out.lambdas[0] == doctest::Approx(2.0));
    CHECK(out.lambdas[1] == doctest::Approx(2.0));
    CHECK(out.normalization == Normalization::StaticTrace);

    s.lambdas = {4.0, 0.0};
    out = normalize_static(s);
    CHECK(out.lambdas[0] == doctest::Approx(4.0));
    CHECK(out.lambdas[1] == 0.0);

    s.lambdas = {3.0, 2.0, 1.0};
    out = normalize_static(s);
    CHECK(out.lambdas[0] == doctest::Approx(4.5));
    CHECK(out.lambdas[1] == doctest::Approx(3.0));
    CHECK(out.lambdas[2] == doctest::Approx(1.5));

    s.lambdas = {0.0, 0.0};
    CHECK_THROWS_AS(normalize_static(s), degenerate_channel);
}

TEST_CASE("receive power") {
    const std::vector<double> lam{2.0, 2.0};
    const std::vector<double> p{0.25, 0.25};
    CHECK(receive_power(lam, p) == doctest::Approx(1.0));

    const std::vector<double> zero{0.0, 0.0};
    CHECK(receive_power(lam, zero) == 0.0);

    const std::vector<double> lam2{4.0, 0.0};
    const std::vector<double> p2{0.25, 0.7};
    CHECK(receive_power(lam2, p2) == doctest::Approx(1.0));

    const std::vector<double> short_p{0.1};
    CHECK_THROWS_AS(receive_power(lam, short_p), invalid_input);
}

TEST_CASE("unitary invariance of the spectrum") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const auto h = sample_rayleigh(4, 77, t);

        Eigen::MatrixXcd a(4, 4), b(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                a(i, j) = {g(rng), g(rng)};
                b(i, j) = {g(rng), g(rng)};
            }
        }
        const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
        const Eigen::MatrixXcd v = Eigen::HouseholderQR<Eigen::MatrixXcd>(b).householderQ();

        ChannelMatrix rotated;
        rotated.entries = u * h.entries * v.adjoint();

        const auto s1 = eigen_spectrum(h);
        const auto s2 = eigen_spectrum(rotated);
        for (std::size_t i = 0; i < s1.lambdas.size(); ++i) {
            CHECK(s2.lambdas[i] == doctest::Approx(s1.lambdas[i]).epsilon(1e-8));
        }
    }
}

TEST_CASE("ensemble trace normalization") {
    // sample mean of the raw trace approaches N^2 (unit entry variance)
    const int n = 4;
    const int trials = 10000;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto s = eigen_spectrum(sample_rayleigh(n, 31, t));
        for (double l : s.lambdas) sum += l;
    }
    CHECK(sum / trials == doctest::Approx(n * n).epsilon(0.02));
}

TEST_CASE("matrix records from JSON") {
    const std::string path = "test_matrices.json";
    {
        std::ofstream f(path);
        f << "[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]";
    }
    auto ms = read_matrix_records(path);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].n() == 2);
    CHECK(ms[0].entries(0, 0) == std::complex<double>{1.0, 0.0});
    CHECK(ms[0].entries(0, 1) == std::complex<double>{0.0, 0.0});

    {
        std::ofstream f(path);
        f << "[[[1,0],[0,0],[0,0],[1,0]], [[2,1],[0,0],[0,0],[2,-1]]]";
    }
    ms = read_matrix_records(path);
    REQUIRE(ms.size() == 2);
    CHECK(ms[1].entries(1, 1) == std::complex<double>{2.0, -1.0});

    {
        std::ofstream f(path);
        f << "[[1,0],[0,0],[0,0]]"; // 3 entries: not square
    }
    CHECK_THROWS_AS(read_matrix_records(path), invalid_input);

    {
        std::ofstream f(path);
        f << "this is not json";
    }
    CHECK_THROWS_AS(read_matrix_records(path), invalid_input);

    std::remove(path.c_str());
}
