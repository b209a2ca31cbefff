// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include "eewf/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "eewf/channel.hpp"
#include "eewf/closed_forms.hpp"
#include "eewf/waterfilling.hpp"

namespace eewf {

void SimConfig::validate() const {
    if (antenna_counts.empty()) {
        throw invalid_input("SimConfig: antenna_counts must be nonempty");
    }
    for (int n : antenna_counts) {
        if (n < 1) throw invalid_input("SimConfig: antenna counts must be >= 1");
    }
    if (trials < 1) throw invalid_input("SimConfig: trials must be >= 1");
    if (!(p_r > 0.0)) throw invalid_input("SimConfig: p_r must be positive");
    if (!(p_t > 0.0)) throw invalid_input("SimConfig: p_t must be positive");
    if (!(truncation_cut > 0.0)) {
        throw invalid_input("SimConfig: truncation_cut must be positive");
    }
    if (pilot_trials < 1) throw invalid_input("SimConfig: pilot_trials must be >= 1");
    if (workers < 0) throw invalid_input("SimConfig: workers must be >= 0");
}

double EnsembleStats::eewf_snr_db() const {
    return 10.0 * std::log10(eewf.ptx_avg / sigma2);
}

double EnsembleStats::wf_snr_db() const {
    return 10.0 * std::log10(wf.ptx_avg / sigma2);
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 32) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EEWF_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string format_g12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

struct TrialOutcome {
    double ee_eta = 0.0, ee_rate = 0.0, ee_ptx = 0.0, ee_prx = 0.0, ee_active = 0.0;
    double wf_eta = 0.0, wf_cap = 0.0, wf_ptx = 0.0, wf_prx = 0.0, wf_active = 0.0;
    bool failed = false;
};

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> values) {
    MeanStderr out;
    const std::size_t m = values.size();
    if (m == 0) return out;
    out.mean = pairwise_sum(values) / static_cast<double>(m);
    if (m == 1) return out;
    std::vector<double> sq(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(m - 1);
    out.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(m));
    return out;
}

// field extraction in trial order, failures skipped
std::vector<double> field(const std::vector<TrialOutcome>& r, double TrialOutcome::*f) {
    std::vector<double> v;
    v.reserve(r.size());
    for (const auto& t : r) {
        if (!t.failed) v.push_back(t.*f);
    }
    return v;
}

} // namespace

EnsembleStats run_ensemble(int n, double sigma2, const SimConfig& config) {
    config.validate();
    if (!(sigma2 > 0.0)) {
        throw invalid_input("run_ensemble: sigma2 must be positive");
    }

    SolveSettings settings = config.solver;
    settings.sigma2 = sigma2;
    settings.p_r = config.p_r;
    settings.validate();

    std::vector<TrialOutcome> results(static_cast<std::size_t>(config.trials));
    std::atomic<int> next{0};

    auto work = [&]() {
        for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
            TrialOutcome& out = results[static_cast<std::size_t>(t)];
            try {
                auto spectrum = eigen_spectrum(
                    sample_rayleigh(n, config.seed, static_cast<std::uint64_t>(t)));
                spectrum.normalization = Normalization::EnsembleUnit;

                const EewfSolution ee = solve_eewf(spectrum, settings);
                out.ee_eta = ee.eta;
                out.ee_rate = ee.rate;
                out.ee_ptx = ee.ptx;
                out.ee_prx = receive_power(spectrum.lambdas, ee.p);
                out.ee_active = ee.active;

                const WfSolution wf = solve_wf(spectrum, config.p_t, sigma2);
                out.wf_eta = wf.capacity / config.p_t;
                out.wf_cap = wf.capacity;
                out.wf_ptx = wf.ptx;
                out.wf_prx = wf.prx;
                out.wf_active = wf.active;
            } catch (const error&) {
                out.failed = true;
            }
        }
    };

    const int threads = std::min(worker_count(config.workers), config.trials);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    EnsembleStats stats;
    stats.n = n;
    stats.sigma2 = sigma2;
    stats.seed = config.seed;
    stats.failures = static_cast<int>(
        std::count_if(results.begin(), results.end(), [](const auto& t) { return t.failed; }));
    stats.trials = config.trials - stats.failures;
    if (stats.failures * 100 > config.trials) {
        throw ensemble_failure("run_ensemble: more than 1% of trials failed (" +
                               std::to_string(stats.failures) + "/" +
                               std::to_string(config.trials) + ")");
    }
    if (stats.trials == 0) {
        throw ensemble_failure("run_ensemble: no successful trial");
    }

    auto fill = [&](Moments& m, double TrialOutcome::*eta, double TrialOutcome::*rate,
                    double TrialOutcome::*ptx, double TrialOutcome::*nchan,
                    double TrialOutcome::*prx) {
        const auto e = mean_stderr(field(results, eta));
        const auto r = mean_stderr(field(results, rate));
        const auto p = mean_stderr(field(results, ptx));
        const auto c = mean_stderr(field(results, nchan));
        const auto x = mean_stderr(field(results, prx));
        m.eta_avg = e.mean;
        m.eta_stderr = e.stderr_;
        m.rate_avg = r.mean;
        m.rate_stderr = r.stderr_;
        m.ptx_avg = p.mean;
        m.ptx_stderr = p.stderr_;
        m.nchan_avg = c.mean;
        m.nchan_stderr = c.stderr_;
        m.prx_avg = x.mean;
        m.prx_stderr = x.stderr_;
    };
    fill(stats.eewf, &TrialOutcome::ee_eta, &TrialOutcome::ee_rate, &TrialOutcome::ee_ptx,
         &TrialOutcome::ee_active, &TrialOutcome::ee_prx);
    fill(stats.wf, &TrialOutcome::wf_eta, &TrialOutcome::wf_cap, &TrialOutcome::wf_ptx,
         &TrialOutcome::wf_active, &TrialOutcome::wf_prx);
    return stats;
}

std::vector<SweepRow> sweep(const SimConfig& config) {
    config.validate();

    std::vector<SweepRow> rows;
    rows.reserve(2 * config.antenna_counts.size() * config.snr_grid_db.size());

    for (const char* family : {"eewf", "wf"}) {
        const bool is_eewf = std::string(family) == "eewf";
        for (int n : config.antenna_counts) {
            for (double snr_db : config.snr_grid_db) {
                const double snr = std::pow(10.0, snr_db / 10.0);

                double sigma2;
                if (is_eewf) {
                    // the transmit power is an output: pilot run at a
                    // closed-form-inspired guess, then one fixed-point correction
                    SimConfig pilot_cfg = config;
                    pilot_cfg.trials = std::min(config.pilot_trials, config.trials);
                    const double sigma2_guess = config.p_r / (n * snr);
                    const EnsembleStats pilot = run_ensemble(n, sigma2_guess, pilot_cfg);
                    sigma2 = pilot.eewf.ptx_avg / snr;
                } else {
                    sigma2 = config.p_t / snr;
                }

                const EnsembleStats stats = run_ensemble(n, sigma2, config);

                SweepRow row;
                row.algorithm = family;
                row.n = n;
                row.target_snr_db = snr_db;
                row.realized_snr_db = is_eewf ? stats.eewf_snr_db() : stats.wf_snr_db();
                row.m = is_eewf ? stats.eewf : stats.wf;
                row.trials = stats.trials;
                row.failures = stats.failures;
                row.seed = stats.seed;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "algorithm,n,target_snr_db,realized_snr_db,eta_avg,eta_stderr,"
           "rate_avg,rate_stderr,ptx_avg,ptx_stderr,nchan_avg,prx_avg,"
           "trials,failures,seed\n";
    for (const SweepRow& r : rows) {
        out << r.algorithm << ',' << r.n << ',' << format_g12(r.target_snr_db) << ','
            << format_g12(r.realized_snr_db) << ',' << format_g12(r.m.eta_avg) << ','
            << format_g12(r.m.eta_stderr) << ',' << format_g12(r.m.rate_avg) << ','
            << format_g12(r.m.rate_stderr) << ',' << format_g12(r.m.ptx_avg) << ','
            << format_g12(r.m.ptx_stderr) << ',' << format_g12(r.m.nchan_avg) << ','
            << format_g12(r.m.prx_avg) << ',' << r.trials << ',' << r.failures << ','
            << r.seed << '\n';
    }
}

std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw invalid_input("parse_sweep_csv: empty input");
    }

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 15) {
            throw invalid_input("parse_sweep_csv: expected 15 columns, got " +
                                std::to_string(cells.size()));
        }
        SweepRow r;
        r.algorithm = cells[0];
        r.n = std::stoi(cells[1]);
        r.target_snr_db = std::stod(cells[2]);
        r.realized_snr_db = std::stod(cells[3]);
        r.m.eta_avg = std::stod(cells[4]);
        r.m.eta_stderr = std::stod(cells[5]);
        r.m.rate_avg = std::stod(cells[6]);
        r.m.rate_stderr = std::stod(cells[7]);
        r.m.ptx_avg = std::stod(cells[8]);
        r.m.ptx_stderr = std::stod(cells[9]);
        r.m.nchan_avg = std::stod(cells[10]);
        r.m.prx_avg = std::stod(cells[11]);
        r.trials = std::stoi(cells[12]);
        r.failures = std::stoi(cells[13]);
        r.seed = std::stoull(cells[14]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BoundsRow> siso_bounds_experiment(const SimConfig& config,
                                              std::span<const double> snr_grid_db) {
    config.validate();

    // truncated channel inversion sample: drop deep fades, rescale to <λ> = 1
    std::vector<double> lambdas;
    lambdas.reserve(static_cast<std::size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t) {
        const auto s = eigen_spectrum(
            sample_rayleigh(1, config.seed, static_cast<std::uint64_t>(t)));
        if (s.lambdas.front() >= config.truncation_cut) {
            lambdas.push_back(s.lambdas.front());
        }
    }
    if (lambdas.empty()) {
        throw ensemble_failure("siso_bounds_experiment: truncation removed every trial");
    }
    const double mean = pairwise_sum(lambdas) / static_cast<double>(lambdas.size());
    for (double& l : lambdas) l /= mean;

    std::vector<double> inv(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) inv[i] = 1.0 / lambdas[i];
    const double m = pairwise_sum(inv) / static_cast<double>(inv.size());

    const double p_t = m * config.p_r; // equal-SNR condition

    std::vector<BoundsRow> rows;
    rows.reserve(snr_grid_db.size());
    for (double snr_db : snr_grid_db) {
        const double sigma2 = p_t / std::pow(10.0, snr_db / 10.0);

        SolveSettings settings = config.solver;
        settings.sigma2 = sigma2;
        settings.p_r = config.p_r;

        std::vector<double> ee_rate(lambdas.size()), ee_eta(lambdas.size()),
            wf_cap(lambdas.size());
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            EigenSpectrum s;
            s.lambdas = {lambdas[i]};
            s.normalization = Normalization::EnsembleUnit;
            const EewfSolution ee = solve_eewf(s, settings);
            ee_rate[i] = ee.rate;
            ee_eta[i] = ee.eta;
            wf_cap[i] = solve_wf(s, p_t, sigma2).capacity;
        }
        const double r_avg = pairwise_sum(ee_rate) / static_cast<double>(lambdas.size());
        const double eta_avg = pairwise_sum(ee_eta) / static_cast<double>(lambdas.size());
        const double c_e = pairwise_sum(wf_cap) / static_cast<double>(lambdas.size());
        const double eta_ce = c_e / p_t;

        BoundsRow row;
        row.snr_db = snr_db;
        row.inv_lambda_mean = m;
        row.kept = static_cast<int>(lambdas.size());
        row.rate_ratio = r_avg / c_e;
        std::tie(row.rate_lower, row.rate_upper) = siso_rate_ratio_bounds(m);
        row.eff_ratio = eta_avg / eta_ce;
        std::tie(row.eff_lower, row.eff_upper) = siso_efficiency_ratio_bounds(m);
        row.inside = row.rate_ratio >= row.rate_lower && row.rate_ratio <= row.rate_upper &&
                     row.eff_ratio >= row.eff_lower && row.eff_ratio <= row.eff_upper;
        rows.push_back(row);
    }
    return rows;
}

} // namespace eewf
