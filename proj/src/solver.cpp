// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace eewf {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw numeric_error(std::string(what) + ": non-finite value");
        }
    }
}

} // namespace

void SolveSettings::validate() const {
    if (!(eta_tol > 0.0) || !(root_tol > 0.0)) {
        throw invalid_input("SolveSettings: tolerances must be positive");
    }
    if (!(sigma2 > 0.0)) {
        throw invalid_input("SolveSettings: sigma2 must be positive");
    }
    if (!(p_r > 0.0)) {
        throw invalid_input("SolveSettings: p_r must be positive");
    }
    if (max_outer < 1) {
        throw invalid_input("SolveSettings: max_outer must be >= 1");
    }
}

double rate(std::span<const double> lambdas, std::span<const double> p, double sigma2) {
    if (lambdas.size() != p.size()) {
        throw invalid_input("rate: lambda/allocation length mismatch");
    }
    if (!(sigma2 > 0.0)) {
        throw invalid_input("rate: sigma2 must be positive");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) {
            throw invalid_input("rate: negative allocation entry");
        }
        sum += std::log2(1.0 + lambdas[i] * p[i] / sigma2);
    }
    return sum;
}

double energy_efficiency(double rate_val, double ptx_val) {
    if (!(ptx_val > 0.0)) {
        throw undefined_efficiency("energy_efficiency: zero transmit power");
    }
    return rate_val / ptx_val;
}

std::vector<double> allocation_from_levels(std::span<const double> lambdas_active,
                                           double eta, double mu_pt, double sigma2) {
    std::vector<double> p(lambdas_active.size());
    for (std::size_t i = 0; i < lambdas_active.size(); ++i) {
        const double denom = eta - mu_pt * lambdas_active[i];
        if (!(denom > 0.0)) {
            throw infeasible_multiplier(
                "allocation_from_levels: nonpositive water-level denominator");
        }
        p[i] = std::max(0.0, 1.0 / (kLn2 * denom) - sigma2 / lambdas_active[i]);
    }
    return p;
}

std::vector<double> alpha_coefficients(std::span<const double> lambdas_active,
                                       double eta, double sigma2, double p_r) {
    if (lambdas_active.empty()) {
        throw invalid_input("alpha_coefficients: empty active set");
    }
    if (!(eta > 0.0)) {
        throw invalid_input("alpha_coefficients: eta must be positive");
    }
    const double n = static_cast<double>(lambdas_active.size());
    const double width = n * sigma2 + p_r;
    std::vector<double> alphas(lambdas_active.size());
    for (std::size_t i = 0; i < lambdas_active.size(); ++i) {
        if (!(lambdas_active[i] > 0.0)) {
            throw invalid_input("alpha_coefficients: zero eigenvalue in active set");
        }
        alphas[i] = kLn2 * eta * width / lambdas_active[i];
    }
    return alphas;
}

std::vector<double> mu_polynomial_coefficients(std::span<const double> alphas) {
    if (alphas.empty()) {
        throw invalid_input("mu_polynomial_coefficients: empty alpha set");
    }
    require_finite(alphas, "mu_polynomial_coefficients");

    const std::size_t n = alphas.size();
    // ascending-coefficient product over a subset, skipping index `skip`
    // (skip == n means no skip)
    auto product = [&](std::size_t skip) {
        std::vector<double> c{1.0};
        for (std::size_t i = 0; i < n; ++i) {
            if (i == skip) continue;
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];             // x * c_k
                next[k] += -alphas[i] * c[k];    // -alpha_i * c_k
            }
            c = std::move(next);
        }
        return c;
    };

    std::vector<double> coeffs = product(n); // Π (x − αᵢ), degree n
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> partial = product(i); // degree n−1
        for (std::size_t k = 0; k < partial.size(); ++k) {
            coeffs[k] += partial[k];
        }
    }
    return coeffs;
}

MuRoot solve_mu_root(std::span<const double> alphas, double root_tol) {
    if (alphas.empty()) {
        throw invalid_input("solve_mu_root: empty alpha set");
    }
    require_finite(alphas, "solve_mu_root");
    if (!(root_tol > 0.0)) {
        throw invalid_input("solve_mu_root: root_tol must be positive");
    }
    const double alpha_min = *std::min_element(alphas.begin(), alphas.end());
    if (!(alpha_min > 0.0)) {
        throw invalid_input("solve_mu_root: alphas must be positive");
    }
    const double n = static_cast<double>(alphas.size());

    auto g = [&](double x) {
        double s = -1.0;
        for (double a : alphas) s += 1.0 / (a - x);
        return s;
    };

    // g(alpha_min − n) ≤ 0 always: each term is at most 1/n there. Equality
    // holds exactly for equal alphas, in which case that point is the root.
    double lo = alpha_min - n;
    double glo = g(lo);
    int expand = 0;
    while (glo > 0.0) { // paranoia against rounding at near-equal alphas
        lo = alpha_min - n * std::ldexp(1.0, ++expand);
        glo = g(lo);
        if (expand > 60) {
            throw numeric_error("solve_mu_root: no sign change in bracket");
        }
    }

    MuRoot result;
    if (std::abs(glo) <= root_tol) {
        result.x = lo;
        result.mu_positive = lo > 0.0;
        return result;
    }

    double hi = alpha_min - 1e-14 * std::max(1.0, std::abs(alpha_min));
    if (!(g(hi) > 0.0)) {
        throw numeric_error("solve_mu_root: no sign change in bracket");
    }

    double mid = lo;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        ++result.iterations;
        if (std::abs(gm) <= root_tol || hi - lo <= 1e-16 * std::max(1.0, std::abs(mid))) {
            break;
        }
        if (gm < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Newton polish from the left; g is increasing and convex below min α,
    // so iterates stay left of the root.
    double x = lo;
    for (int it = 0; it < 4; ++it) {
        double gx = -1.0, dgx = 0.0;
        for (double a : alphas) {
            const double d = a - x;
            gx += 1.0 / d;
            dgx += 1.0 / (d * d);
        }
        if (std::abs(gx) <= root_tol * 1e-3 || dgx <= 0.0) break;
        const double step = -gx / dgx;
        if (!std::isfinite(step) || x + step >= alpha_min) break;
        x += step;
    }
    if (std::abs(g(x)) <= std::abs(g(mid))) {
        result.x = x;
    } else {
        result.x = mid;
    }
    result.mu_positive = result.x > 0.0;
    return result;
}

double mu_from_root(double x, double ptx, double sigma2, double p_r, int n_active) {
    if (!(ptx > 0.0)) {
        throw invalid_input("mu_from_root: transmit power must be positive");
    }
    return x / (kLn2 * ptx * (static_cast<double>(n_active) * sigma2 + p_r));
}

namespace {

struct InnerSolve {
    std::vector<std::size_t> active; // indices into the positive-lambda arrays
    std::vector<double> p_active;
    double x = 0.0;
    double mu_pt = 0.0;
};

// One Appendix-style solve at fixed eta: pick the root, form the allocation,
// and shrink the active set until all retained powers are strictly positive.
InnerSolve inner_solve(const std::vector<double>& lambdas, double eta,
                       const SolveSettings& s) {
    InnerSolve r;
    r.active.resize(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) r.active[i] = i;

    while (true) {
        std::vector<double> lam_act(r.active.size());
        for (std::size_t k = 0; k < r.active.size(); ++k) lam_act[k] = lambdas[r.active[k]];

        const auto alphas = alpha_coefficients(lam_act, eta, s.sigma2, s.p_r);
        const MuRoot root = solve_mu_root(alphas, s.root_tol);
        const double width = static_cast<double>(lam_act.size()) * s.sigma2 + s.p_r;
        const double mu_pt = root.x / (kLn2 * width);
        const auto p = allocation_from_levels(lam_act, eta, mu_pt, s.sigma2);

        std::vector<std::size_t> kept;
        std::vector<double> p_kept;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] > 0.0) {
                kept.push_back(r.active[k]);
                p_kept.push_back(p[k]);
            }
        }
        if (kept.empty()) {
            throw degenerate_channel("solve_eewf: active set collapsed");
        }
        if (kept.size() == r.active.size()) {
            r.p_active = std::move(p_kept);
            r.x = root.x;
            r.mu_pt = mu_pt;
            return r;
        }
        r.active = std::move(kept);
    }
}

} // namespace

EewfSolution solve_eewf(const EigenSpectrum& spectrum, const SolveSettings& settings) {
    settings.validate();
    require_finite(spectrum.lambdas, "solve_eewf");

    std::vector<std::size_t> pos_idx;
    std::vector<double> lambdas;
    for (std::size_t i = 0; i < spectrum.lambdas.size(); ++i) {
        if (spectrum.lambdas[i] > 0.0) {
            pos_idx.push_back(i);
            lambdas.push_back(spectrum.lambdas[i]);
        }
    }
    if (lambdas.empty()) {
        throw degenerate_channel("solve_eewf: no positive eigenvalue");
    }

    EewfSolution sol;
    sol.p.assign(spectrum.lambdas.size(), 0.0);

    if (lambdas.size() == 1) {
        // single positive channel: exact channel inversion
        const double lam = lambdas.front();
        const double p1 = settings.p_r / lam;
        sol.p[pos_idx.front()] = p1;
        sol.ptx = p1;
        sol.rate = std::log2(1.0 + settings.p_r / settings.sigma2);
        sol.eta = energy_efficiency(sol.rate, sol.ptx);
        sol.active = 1;
        sol.iterations = 0;
        const auto alphas = alpha_coefficients(std::span(&lam, 1), sol.eta,
                                               settings.sigma2, settings.p_r);
        sol.mu = mu_from_root(alphas.front() - 1.0, sol.ptx, settings.sigma2,
                              settings.p_r, 1);
        if (!(sol.mu > 0.0)) {
            throw infeasible_multiplier("solve_eewf: nonpositive multiplier at solution");
        }
        return sol;
    }

    // initial efficiency from the equal-receive-power split q_i = P_r / n
    const double n_pos = static_cast<double>(lambdas.size());
    std::vector<double> p0(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        p0[i] = settings.p_r / (n_pos * lambdas[i]);
    }
    double eta = rate(lambdas, p0, settings.sigma2) /
                 std::accumulate(p0.begin(), p0.end(), 0.0);

    InnerSolve inner;
    bool converged = false;
    for (int it = 1; it <= settings.max_outer; ++it) {
        inner = inner_solve(lambdas, eta, settings);

        std::vector<double> lam_act(inner.active.size());
        for (std::size_t k = 0; k < inner.active.size(); ++k) {
            lam_act[k] = lambdas[inner.active[k]];
        }
        const double r = rate(lam_act, inner.p_active, settings.sigma2);
        const double pt = std::accumulate(inner.p_active.begin(), inner.p_active.end(), 0.0);
        const double eta_next = energy_efficiency(r, pt);

        sol.rate = r;
        sol.ptx = pt;
        sol.eta = eta_next;
        sol.iterations = it;

        if (std::abs(eta_next - eta) <= settings.eta_tol * std::abs(eta)) {
            eta = eta_next;
            converged = true;
            break;
        }
        eta = eta_next;
    }

    std::fill(sol.p.begin(), sol.p.end(), 0.0);
    for (std::size_t k = 0; k < inner.active.size(); ++k) {
        sol.p[pos_idx[inner.active[k]]] = inner.p_active[k];
    }
    sol.active = static_cast<int>(inner.active.size());
    sol.mu = mu_from_root(inner.x, sol.ptx, settings.sigma2, settings.p_r, sol.active);

    if (!converged) {
        throw convergence_failure("solve_eewf: outer loop did not converge", sol);
    }
    if (!(sol.mu > 0.0)) {
        throw infeasible_multiplier(
            "solve_eewf: converged multiplier is not positive (x = " +
            std::to_string(inner.x) + ", eta = " + std::to_string(sol.eta) + ")");
    }
    return sol;
}

double kkt_residual(const EewfSolution& solution, std::span<const double> lambdas,
                    const SolveSettings& settings) {
    if (solution.p.size() != lambdas.size()) {
        throw invalid_input("kkt_residual: lambda/allocation length mismatch");
    }
    const double eta = solution.eta;
    const double mu_pt = solution.mu * solution.ptx;

    double worst_active = 0.0;
    double worst_inactive = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] <= 0.0) continue; // zero-gain channels carry no condition
        // marginal rate dR/dp_i at the solution
        const double marginal =
            lambdas[i] / (kLn2 * (settings.sigma2 + lambdas[i] * solution.p[i]));
        // stationarity in units of eta: (dR/dp_i − η + μPₜλᵢ) / η
        const double defect = (marginal - eta + mu_pt * lambdas[i]) / eta;
        if (solution.p[i] > 0.0) {
            worst_active = std::max(worst_active, std::abs(defect));
        } else {
            worst_inactive = std::max(worst_inactive, std::max(0.0, defect));
        }
    }
    return worst_active + worst_inactive;
}

std::vector<double> polynomial_real_roots(std::span<const double> coeffs) {
    if (coeffs.size() < 2) {
        throw invalid_input("polynomial_real_roots: need degree >= 1");
    }
    require_finite(coeffs, "polynomial_real_roots");
    const std::size_t deg = coeffs.size() - 1;
    const double lead = coeffs.back();
    if (lead == 0.0) {
        throw invalid_input("polynomial_real_roots: zero leading coefficient");
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                      static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
            -coeffs[i] / lead;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("polynomial_real_roots: eigensolver failed");
    }

    std::vector<double> roots;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const auto z = solver.eigenvalues()(i);
        if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z.real()))) {
            roots.push_back(z.real());
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

RootCrossCheck cross_check_mu_root(std::span<const double> alphas) {
    RootCrossCheck check;
    check.bisection_root = solve_mu_root(alphas).x;
    check.real_roots = polynomial_real_roots(mu_polynomial_coefficients(alphas));

    const double alpha_min = *std::min_element(alphas.begin(), alphas.end());
    double best = std::numeric_limits<double>::infinity();
    for (double r : check.real_roots) {
        if (r < alpha_min) ++check.roots_below_min_alpha;
        const double d = std::abs(r - check.bisection_root);
        if (d < best) {
            best = d;
            check.matched_polynomial_root = r;
        }
    }
    check.rel_diff = best / std::max(1.0, std::abs(check.bisection_root));
    return check;
}

} // namespace eewf
