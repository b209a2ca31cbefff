// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eewf/commands.hpp"

namespace {

// shared flags, applied on top of the config file
struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, const std::string& default_out) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--out", args.out_path, "output path")->default_val(default_out);
    cmd->add_option("--seed", args.seed, "root RNG seed override");
    cmd->add_option("--trials", args.trials, "trial count override");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

eewf::SimConfig make_config(const CommonArgs& args) {
    eewf::SimConfig cfg;
    if (!args.config_path.empty()) {
        cfg = eewf::load_sim_config(args.config_path);
    }
    if (args.seed) cfg.seed = *args.seed;
    if (args.trials) cfg.trials = *args.trials;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-efficient water-filling for MIMO channels"};
    app.require_subcommand(1);

    // static
    auto* cmd_static = app.add_subcommand(
        "static", "solve channel matrices from a file and compare with water-filling");
    std::string matrix_path;
    std::string settings_path;
    std::optional<double> p_t_override;
    cmd_static->add_option("matrix", matrix_path, "JSON matrix file")->required();
    cmd_static->add_option("--settings", settings_path, "JSON solver settings");
    cmd_static->add_option("--pt", p_t_override,
                           "transmit budget for the water-filling comparison");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "run the (N, SNR) ensemble grid");
    CommonArgs sweep_args;
    add_common(cmd_sweep, sweep_args, "sweep.csv");

    // closed-form
    auto* cmd_cf = app.add_subcommand("closed-form", "print the exact special-case table");
    std::vector<int> cf_counts{1, 2, 4, 8, 16};
    double cf_p_r = 1.0;
    double cf_sigma2 = 1.0;
    cmd_cf->add_option("--n", cf_counts, "antenna counts");
    cmd_cf->add_option("--pr", cf_p_r, "receive-power constraint");
    cmd_cf->add_option("--sigma2", cf_sigma2, "noise variance");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the property battery");
    eewf::VerifyOptions verify_options;
    cmd_verify->add_option("--seed", verify_options.seed, "instance generator seed");
    cmd_verify->add_option("--oracle-instances", verify_options.oracle_instances);
    cmd_verify->add_option("--oracle-dim", verify_options.oracle_dim,
                           "max positive eigenvalues for the oracle (<= 4)");
    cmd_verify->add_option("--oracle-resolution", verify_options.oracle_resolution);
    cmd_verify->add_option("--kkt-instances", verify_options.kkt_instances);
    cmd_verify->add_option("--root-instances", verify_options.root_instances);
    cmd_verify->add_option("--inequality-instances", verify_options.inequality_instances);
    cmd_verify->add_flag("--quiet", verify_options.quiet);

    // bounds
    auto* cmd_bounds = app.add_subcommand(
        "bounds", "fading-SISO rate/efficiency ratio bounds with truncated inversion");
    CommonArgs bounds_args;
    add_common(cmd_bounds, bounds_args, "");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_static->parsed()) {
            eewf::StaticSettings settings;
            if (!settings_path.empty()) {
                settings = eewf::load_static_settings(settings_path);
            }
            return eewf::cmd_static(matrix_path, settings, p_t_override, std::cout,
                                    std::cerr);
        }
        if (cmd_sweep->parsed()) {
            return eewf::cmd_sweep(make_config(sweep_args), sweep_args.out_path,
                                   sweep_args.quiet, std::cout, std::cerr);
        }
        if (cmd_cf->parsed()) {
            return eewf::cmd_closed_form(cf_counts, cf_p_r, cf_sigma2, std::cout);
        }
        if (cmd_verify->parsed()) {
            return eewf::cmd_verify(verify_options, std::cout, std::cerr);
        }
        if (cmd_bounds->parsed()) {
            return eewf::cmd_bounds(make_config(bounds_args), bounds_args.out_path,
                                    bounds_args.quiet, std::cout, std::cerr);
        }
    } catch (const eewf::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return eewf::kExitInputError;
    } catch (const eewf::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return eewf::kExitSolverFailure;
    }
    return eewf::kExitInputError;
}
