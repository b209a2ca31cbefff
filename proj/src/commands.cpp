// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eewf/channel.hpp"
#include "eewf/closed_forms.hpp"
#include "eewf/oracle.hpp"
#include "eewf/rng.hpp"
#include "eewf/solver.hpp"
#include "eewf/waterfilling.hpp"

namespace eewf {

namespace {

const char* family_name(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::Isotropic: return "isotropic";
        case ChannelFamily::Rank1: return "rank-1";
        case ChannelFamily::Siso: return "siso";
    }
    return "?";
}

void print_solution_pair(std::ostream& out, const EigenSpectrum& spectrum,
                         const EewfSolution& ee, const WfSolution& wf) {
    out << "  ch      lambda        p_eewf          p_wf\n";
    for (std::size_t i = 0; i < spectrum.lambdas.size(); ++i) {
        out << "  " << std::setw(2) << i << "  " << std::setw(10)
            << format_g12(spectrum.lambdas[i]) << "  " << std::setw(12)
            << format_g12(ee.p[i]) << "  " << std::setw(12) << format_g12(wf.p[i])
            << '\n';
    }
    out << "  eewf: eta=" << format_g12(ee.eta) << " rate=" << format_g12(ee.rate)
        << " ptx=" << format_g12(ee.ptx) << " mu=" << format_g12(ee.mu)
        << " active=" << ee.active << " iters=" << ee.iterations << '\n';
    out << "  wf:   eta=" << format_g12(wf.capacity / wf.ptx)
        << " capacity=" << format_g12(wf.capacity) << " ptx=" << format_g12(wf.ptx)
        << " prx=" << format_g12(wf.prx) << " level=" << format_g12(wf.water_level)
        << " active=" << wf.active << '\n';
}

} // namespace

int cmd_static(const std::string& matrix_path, const StaticSettings& settings,
               std::optional<double> p_t_override, std::ostream& out,
               std::ostream& err) {
    std::vector<ChannelMatrix> matrices;
    try {
        matrices = read_matrix_records(matrix_path);
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    for (std::size_t k = 0; k < matrices.size(); ++k) {
        try {
            const EigenSpectrum spectrum = eigen_spectrum(matrices[k]);
            const EewfSolution ee = solve_eewf(spectrum, settings.solver);
            double p_t = ee.ptx;
            if (p_t_override) p_t = *p_t_override;
            else if (settings.p_t) p_t = *settings.p_t;
            const WfSolution wf = solve_wf(spectrum, p_t, settings.solver.sigma2);

            out << "matrix " << k << " (n=" << matrices[k].n() << ")\n";
            print_solution_pair(out, spectrum, ee, wf);
        } catch (const invalid_input& e) {
            err << "error: " << e.what() << '\n';
            return kExitInputError;
        } catch (const error& e) {
            err << "solver error on record " << k << ": " << e.what() << '\n';
            return kExitSolverFailure;
        }
    }
    return kExitOk;
}

int cmd_sweep(const SimConfig& config, const std::string& out_path, bool quiet,
              std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();

    std::vector<SweepRow> rows;
    try {
        rows = sweep(config);
    } catch (const error& e) {
        err << "sweep failed: " << e.what() << '\n';
        return kExitSolverFailure;
    }

    {
        std::ofstream csv(out_path, std::ios::binary);
        if (!csv) {
            err << "error: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        write_sweep_csv(rows, csv);
        if (!csv) {
            err << "error: short write to " << out_path << '\n';
            return kExitInputError;
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json meta;
    meta["seed"] = config.seed;
    meta["trials"] = config.trials;
    meta["antenna_counts"] = config.antenna_counts;
    meta["snr_grid_db"] = config.snr_grid_db;
    meta["p_r"] = config.p_r;
    meta["p_t"] = config.p_t;
    meta["pilot_trials"] = config.pilot_trials;
    meta["workers"] = worker_count(config.workers);
    meta["tool_version"] = "0.1.0";
    meta["wall_time_s"] = wall;
    {
        std::ofstream mf(out_path + ".meta.json", std::ios::binary);
        if (!mf) {
            err << "error: cannot write " << out_path << ".meta.json\n";
            return kExitInputError;
        }
        mf << meta.dump(2) << '\n';
    }

    if (!quiet) {
        out << "wrote " << rows.size() << " rows to " << out_path << " in "
            << format_g12(wall) << " s\n";
    }
    return kExitOk;
}

int cmd_closed_form(const std::vector<int>& antenna_counts, double p_r, double sigma2,
                    std::ostream& out) {
    out << "family      n   p_per_channel            ptx           rate            eta\n";
    for (int n : antenna_counts) {
        for (const auto& sol : {isotropic_eewf(n, p_r, sigma2), rank1_eewf(n, p_r, sigma2)}) {
            out << std::left << std::setw(10) << family_name(sol.family) << std::right
                << std::setw(4) << n << std::setw(16) << format_g12(sol.p_per_channel)
                << std::setw(15) << format_g12(sol.ptx) << std::setw(15)
                << format_g12(sol.rate) << std::setw(15) << format_g12(sol.eta) << '\n';
        }
    }
    out << "isotropic rate limit (N->inf): " << format_g12(isotropic_rate_limit(p_r, sigma2))
        << "   rank-1 rate limit: " << format_g12(rank1_rate_limit(p_r, sigma2)) << '\n';
    return kExitOk;
}

namespace {

struct CheckReport {
    bool ok = true;
    std::string failing_instance; // JSON for replay

    void fail(std::string instance) {
        ok = false;
        if (failing_instance.empty()) failing_instance = std::move(instance);
    }
};

std::string instance_json(const std::vector<double>& lambdas, double p_r, double sigma2) {
    nlohmann::json j;
    j["lambdas"] = lambdas;
    j["p_r"] = p_r;
    j["sigma2"] = sigma2;
    return j.dump();
}

std::vector<double> random_spectrum(std::mt19937_64& rng, int n) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> lam(n);
    for (double& l : lam) l = exp1(rng) * n;
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return lam;
}

} // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    if (options.oracle_dim > 4) {
        err << "error: oracle supports at most 4 positive eigenvalues (requested "
            << options.oracle_dim << ")\n";
        return kExitInputError;
    }
    if (options.oracle_dim < 1 || options.oracle_instances < 1 ||
        options.kkt_instances < 1 || options.root_instances < 1 ||
        options.inequality_instances < 1) {
        err << "error: verify instance counts must be >= 1\n";
        return kExitInputError;
    }

    std::mt19937_64 rng(mix64(options.seed));
    std::uniform_int_distribution<int> dim_pick(2, options.oracle_dim);
    std::uniform_int_distribution<int> n_pick(1, 16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    bool all_ok = true;
    auto report = [&](const std::string& name, const CheckReport& check,
                      const std::string& detail) {
        out << (check.ok ? "PASS" : "FAIL") << "  " << std::left << std::setw(28) << name
            << std::right << detail << '\n';
        if (!check.ok) {
            all_ok = false;
            err << "failing instance for " << name << ": " << check.failing_instance
                << '\n';
        }
    };

    SolveSettings settings;

    // 1. oracle agreement on small instances
    {
        CheckReport check;
        double worst = 0.0;
        for (int k = 0; k < options.oracle_instances; ++k) {
            const int dim = options.oracle_dim >= 2 ? dim_pick(rng) : 1;
            auto lam = random_spectrum(rng, dim);
            EigenSpectrum s;
            s.lambdas = lam;
            s = normalize_static(s);
            const auto sol = solve_eewf(s, settings);
            const auto oracle =
                simplex_grid_search(s.lambdas, settings.p_r, settings.sigma2,
                                    options.oracle_resolution);
            const double rel = std::abs(sol.eta - oracle.eta) / oracle.eta;
            worst = std::max(worst, rel);
            if (rel > 1e-4) check.fail(instance_json(s.lambdas, settings.p_r, settings.sigma2));
        }
        report("oracle agreement", check, "worst rel eta diff " + format_g12(worst));
    }

    // 2. KKT residuals on random instances up to N = 16
    {
        CheckReport check;
        double worst = 0.0;
        for (int k = 0; k < options.kkt_instances; ++k) {
            const auto spectrum =
                eigen_spectrum(sample_rayleigh(n_pick(rng), options.seed,
                                               static_cast<std::uint64_t>(k)));
            const auto sol = solve_eewf(spectrum, settings);
            const double res = kkt_residual(sol, spectrum.lambdas, settings);
            worst = std::max(worst, res);
            if (res > 1e-8) {
                check.fail(instance_json(spectrum.lambdas, settings.p_r, settings.sigma2));
            }
        }
        report("kkt residual", check, "worst " + format_g12(worst));
    }

    // 3. bisection vs polynomial roots
    {
        CheckReport check;
        double worst = 0.0;
        std::uniform_int_distribution<int> root_dim(1, 8);
        for (int k = 0; k < options.root_instances; ++k) {
            const int n = root_dim(rng);
            std::vector<double> alphas(n);
            for (double& a : alphas) a = 0.5 + 20.0 * unit(rng);
            const auto cc = cross_check_mu_root(alphas);
            worst = std::max(worst, cc.rel_diff);
            if (cc.rel_diff > 1e-8 || cc.roots_below_min_alpha != 1) {
                nlohmann::json j;
                j["alphas"] = alphas;
                check.fail(j.dump());
            }
        }
        report("root cross-check", check, "worst rel diff " + format_g12(worst));
    }

    // 4. inequality validators
    {
        CheckReport check;
        double worst = 0.0; // most negative slack
        for (int k = 0; k < options.inequality_instances; ++k) {
            const int n = dim_pick(rng) + 2;
            std::vector<double> lam(n);
            for (double& l : lam) l = std::exp(3.0 * (unit(rng) - 0.5));
            const double gamma = std::pow(10.0, 6.0 * unit(rng) - 3.0);
            const auto hm = check_hm_logsum_inequality(lam, gamma);
            worst = std::min(worst, hm.slack);
            bool ok = hm.holds;
            double inv_mean = 0.0;
            for (double l : lam) inv_mean += 1.0 / l;
            inv_mean /= n;
            if (inv_mean >= 1.0) {
                const auto bj = check_bernoulli_jensen_bounds(lam, gamma);
                worst = std::min({worst, bj.bernoulli_slack, bj.jensen_slack});
                ok = ok && bj.holds;
            }
            if (!ok) {
                nlohmann::json j;
                j["lambdas"] = lam;
                j["gamma"] = gamma;
                check.fail(j.dump());
            }
        }
        report("inequality validators", check, "min slack " + format_g12(worst));
    }

    // 5. receive-power tightness and capacity dominance at equal transmit power
    {
        CheckReport tight;
        CheckReport dominance;
        double worst_gap = 0.0;
        double worst_margin = 0.0;
        for (int k = 0; k < options.kkt_instances; ++k) {
            const auto spectrum =
                eigen_spectrum(sample_rayleigh(n_pick(rng), options.seed ^ 0xABCDull,
                                               static_cast<std::uint64_t>(k)));
            const auto sol = solve_eewf(spectrum, settings);
            const double prx = receive_power(spectrum.lambdas, sol.p);
            const double gap = std::abs(prx - settings.p_r) / settings.p_r;
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-8) {
                tight.fail(instance_json(spectrum.lambdas, settings.p_r, settings.sigma2));
            }
            const auto wf = solve_wf(spectrum, sol.ptx, settings.sigma2);
            const double margin = sol.rate - wf.capacity; // must be <= 0
            worst_margin = std::max(worst_margin, margin);
            if (margin > 1e-9 * std::max(1.0, wf.capacity)) {
                dominance.fail(instance_json(spectrum.lambdas, settings.p_r, settings.sigma2));
            }
        }
        report("constraint tightness", tight, "worst rel gap " + format_g12(worst_gap));
        report("capacity dominance", dominance,
               "worst rate-capacity margin " + format_g12(worst_margin));
    }

    // 6. water-filling complementary slackness
    {
        CheckReport check;
        double worst = 0.0;
        for (int k = 0; k < options.kkt_instances; ++k) {
            const auto spectrum =
                eigen_spectrum(sample_rayleigh(n_pick(rng), options.seed ^ 0x5EEDull,
                                               static_cast<std::uint64_t>(k)));
            const double p_t = 0.1 + 4.0 * unit(rng);
            const auto wf = solve_wf(spectrum, p_t, settings.sigma2);
            for (std::size_t i = 0; i < spectrum.lambdas.size(); ++i) {
                const double lam = spectrum.lambdas[i];
                if (lam <= 0.0) continue;
                const double inv = settings.sigma2 / lam;
                const double v = wf.p[i] > 0.0
                                     ? std::abs(wf.p[i] + inv - wf.water_level)
                                     : std::max(0.0, wf.water_level - inv);
                worst = std::max(worst, v);
                if (v > 1e-9) {
                    check.fail(instance_json(spectrum.lambdas, p_t, settings.sigma2));
                }
            }
        }
        report("wf complementary slackness", check, "worst violation " + format_g12(worst));
    }

    out << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    return all_ok ? kExitOk : kExitPropertyFailure;
}

int cmd_bounds(const SimConfig& config, const std::string& out_path, bool quiet,
               std::ostream& out, std::ostream& err) {
    std::vector<double> grid;
    for (double s = 0.0; s <= 30.0; s += 5.0) grid.push_back(s);

    std::vector<BoundsRow> rows;
    try {
        rows = siso_bounds_experiment(config, grid);
    } catch (const error& e) {
        err << "bounds experiment failed: " << e.what() << '\n';
        return kExitSolverFailure;
    }

    if (!quiet) {
        out << "snr_db  <1/lambda>   R/Ce      [lo, 1]    eta-ratio  [1, hi]    inside\n";
        for (const auto& r : rows) {
            out << std::setw(6) << format_g12(r.snr_db) << "  " << std::setw(10)
                << format_g12(r.inv_lambda_mean) << "  " << std::setw(8)
                << format_g12(r.rate_ratio) << "  [" << format_g12(r.rate_lower)
                << ", 1]  " << std::setw(9) << format_g12(r.eff_ratio) << "  [1, "
                << format_g12(r.eff_upper) << "]  " << (r.inside ? "yes" : "NO") << '\n';
        }
    }

    if (!out_path.empty()) {
        std::ofstream csv(out_path, std::ios::binary);
        if (!csv) {
            err << "error: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        csv << "snr_db,inv_lambda_mean,rate_ratio,rate_lower,rate_upper,"
               "eff_ratio,eff_lower,eff_upper,inside,kept\n";
        for (const auto& r : rows) {
            csv << format_g12(r.snr_db) << ',' << format_g12(r.inv_lambda_mean) << ','
                << format_g12(r.rate_ratio) << ',' << format_g12(r.rate_lower) << ','
                << format_g12(r.rate_upper) << ',' << format_g12(r.eff_ratio) << ','
                << format_g12(r.eff_lower) << ',' << format_g12(r.eff_upper) << ','
                << (r.inside ? 1 : 0) << ',' << r.kept << '\n';
        }
    }

    const bool all_inside =
        std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.inside; });
    return all_inside ? kExitOk : kExitPropertyFailure;
}

} // namespace eewf
