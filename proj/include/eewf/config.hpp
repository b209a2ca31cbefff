// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "eewf/montecarlo.hpp"

namespace eewf {

/// Sweep/bounds configuration from a JSON file. Unknown keys are rejected by
/// name; absent keys keep their defaults.
SimConfig load_sim_config(const std::string& path);

/// Settings for a one-shot solve from file.
struct StaticSettings {
    SolveSettings solver;
    std::optional<double> p_t; // transmit budget for the side-by-side baseline
};

StaticSettings load_static_settings(const std::string& path);

} // namespace eewf
