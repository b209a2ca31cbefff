// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "eewf/error.hpp"

namespace eewf {

namespace {

void check_positive_params(int n, double p_r, double sigma2, const char* what) {
    if (n < 1) {
        throw invalid_input(std::string(what) + ": antenna count must be >= 1");
    }
    if (!(p_r > 0.0) || !(sigma2 > 0.0)) {
        throw invalid_input(std::string(what) + ": p_r and sigma2 must be positive");
    }
}

} // namespace

ClosedFormSolution isotropic_eewf(int n, double p_r, double sigma2) {
    check_positive_params(n, p_r, sigma2, "isotropic_eewf");
    const double nd = n;
    ClosedFormSolution sol;
    sol.family = n == 1 ? ChannelFamily::Siso : ChannelFamily::Isotropic;
    sol.p_per_channel = p_r / (nd * nd);
    sol.rate = nd * std::log2(1.0 + p_r / (sigma2 * nd));
    sol.ptx = p_r / nd;
    sol.eta = sol.rate / sol.ptx;
    return sol;
}

ClosedFormSolution rank1_eewf(int n, double p_r, double sigma2) {
    check_positive_params(n, p_r, sigma2, "rank1_eewf");
    const double nd = n;
    ClosedFormSolution sol;
    sol.family = n == 1 ? ChannelFamily::Siso : ChannelFamily::Rank1;
    sol.p_per_channel = p_r / (nd * nd);
    sol.rate = std::log2(1.0 + p_r / sigma2);
    sol.ptx = p_r / (nd * nd);
    sol.eta = sol.rate / sol.ptx;
    return sol;
}

double isotropic_rate_limit(double p_r, double sigma2) {
    return p_r / (std::numbers::ln2 * sigma2);
}

double rank1_rate_limit(double p_r, double sigma2) {
    return std::log2(1.0 + p_r / sigma2);
}

std::pair<double, double> siso_rate_ratio_bounds(double inv_lambda_mean) {
    if (!(inv_lambda_mean >= 1.0)) {
        throw invalid_input("siso_rate_ratio_bounds: <1/lambda> must be >= 1");
    }
    return {1.0 / inv_lambda_mean, 1.0};
}

std::pair<double, double> siso_efficiency_ratio_bounds(double inv_lambda_mean) {
    if (!(inv_lambda_mean >= 1.0)) {
        throw invalid_input("siso_efficiency_ratio_bounds: <1/lambda> must be >= 1");
    }
    return {1.0, inv_lambda_mean};
}

InequalitySlack check_hm_logsum_inequality(std::span<const double> lambdas,
                                           double gamma) {
    if (lambdas.empty() || !(gamma > 0.0)) {
        throw invalid_input("check_hm_logsum_inequality: need lambdas and gamma > 0");
    }
    const double n = static_cast<double>(lambdas.size());
    double inv_sum = 0.0;
    double log_sum = 0.0;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) {
            throw invalid_input("check_hm_logsum_inequality: lambdas must be positive");
        }
        inv_sum += 1.0 / (lam * gamma);
        log_sum += std::log2(1.0 + lam * gamma);
    }
    const double lhs = std::log2(1.0 + n / inv_sum);
    const double rhs = log_sum / n;

    InequalitySlack result;
    result.slack = rhs - lhs;
    result.holds = result.slack >= -1e-12 * std::max(1.0, std::abs(rhs));
    return result;
}

BernoulliJensenSlacks check_bernoulli_jensen_bounds(std::span<const double> lambdas,
                                                    double gamma) {
    if (lambdas.empty() || !(gamma > 0.0)) {
        throw invalid_input("check_bernoulli_jensen_bounds: need lambdas and gamma > 0");
    }
    double inv_mean = 0.0;
    double mean = 0.0;
    double log_mean = 0.0;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) {
            throw invalid_input("check_bernoulli_jensen_bounds: lambdas must be positive");
        }
        inv_mean += 1.0 / lam;
        mean += lam;
        log_mean += std::log2(1.0 + lam * gamma);
    }
    const double n = static_cast<double>(lambdas.size());
    inv_mean /= n;
    mean /= n;
    log_mean /= n;
    if (!(inv_mean >= 1.0)) {
        throw invalid_input("check_bernoulli_jensen_bounds: sample <1/lambda> must be >= 1");
    }

    BernoulliJensenSlacks result;
    result.bernoulli_slack =
        std::log2(1.0 + gamma / inv_mean) - std::log2(1.0 + gamma) / inv_mean;
    result.jensen_slack = std::log2(1.0 + mean * gamma) - log_mean;
    const double floor = -1e-12 * std::max(1.0, std::abs(log_mean));
    result.holds = result.bernoulli_slack >= floor && result.jensen_slack >= floor;
    return result;
}

} // namespace eewf
