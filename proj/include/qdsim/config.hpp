// Copyright 2026 The qdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdsim/bath.hpp"

namespace qdsim {

// Config files are flat `key = value` lines; '#' starts a comment. CLI flags
// named exactly after keys override file values.

/// Raw key-value view of a config file (comments stripped, keys unvalidated).
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues parse_config_file(const std::string& path);

struct ExperimentConfig {
    // model
    int n_osc = 300;
    double omega0 = 0.3;
    double omega_r = 0.7;
    double kappa = 0.1;
    double squeezing_r = 0.0;
    std::vector<double> omega_s_values;  // sweep points (may be a single value)

    // time grid
    double t_max = 150.0;
    double dt = 0.1;

    // darwinism
    double delta = 0.05;
    double fraction_min = 0.02;
    double fraction_max = 1.0;
    double fraction_step = 0.02;
    int n_samples = 25;
    uint64_t master_seed = 20177;
    int f_delta_stride = 1;  // redundancy-trace sampling stride on the time grid

    // memory
    bool nm_displaced = true;
    bool nm_squeezed = true;
    bool nm_resolution_check = true;

    std::string output_dir = "out";

    SpectralDensityParams spectral() const { return {kappa, omega0, omega_r}; }
    std::vector<double> time_grid() const;
    std::vector<double> fraction_grid() const;
    /// Indices of the time grid carrying the f_delta trace (always includes
    /// the first and last grid point).
    std::vector<int> trace_indices() const;
};

/// All known keys, for override validation and --help.
const std::vector<std::string>& config_keys();

/// Build a typed config from key-values; unknown keys, bad numbers and
/// violated invariants throw ConfigError naming the field. Stability of every
/// (kappa, omega_s) pair is part of validation and names the failing omega_s.
ExperimentConfig build_config(const KeyValues& kv);

/// Re-run the full validation (also used by the `validate` subcommand).
void validate_config(const ExperimentConfig& cfg);

}  // namespace qdsim
