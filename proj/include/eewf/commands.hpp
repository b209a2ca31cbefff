// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "eewf/config.hpp"

namespace eewf {

// exit-code contract shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverFailure = 3;

/// Solve every matrix record in the file and print the efficiency-optimal and
/// capacity-achieving solutions side by side. The baseline uses the
/// efficiency solution's transmit power unless p_t_override is given.
int cmd_static(const std::string& matrix_path, const StaticSettings& settings,
               std::optional<double> p_t_override, std::ostream& out,
               std::ostream& err);

/// Run the full grid and write the CSV plus a companion metadata JSON
/// (<out>.meta.json).
int cmd_sweep(const SimConfig& config, const std::string& out_path, bool quiet,
              std::ostream& out, std::ostream& err);

/// Closed-form table per channel family and antenna count.
int cmd_closed_form(const std::vector<int>& antenna_counts, double p_r, double sigma2,
                    std::ostream& out);

struct VerifyOptions {
    std::uint64_t seed = 7;
    int oracle_instances = 40;
    int oracle_dim = 4;        // > 4 is rejected with an input error
    int oracle_resolution = 120;
    int kkt_instances = 200;
    int root_instances = 300;
    int inequality_instances = 2000;
    bool quiet = false;
};

/// Property battery: oracle agreement, KKT certification, root cross-checks,
/// inequality validators, constraint tightness, capacity dominance,
/// complementary slackness. Prints one line per check with its worst slack;
/// a failing check serializes the offending instance for replay.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// Fading-SISO bound experiment rows; nonzero exit if any row leaves its
/// bounds.
int cmd_bounds(const SimConfig& config, const std::string& out_path, bool quiet,
               std::ostream& out, std::ostream& err);

} // namespace eewf
