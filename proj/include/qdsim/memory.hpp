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

#include <string>
#include <utility>
#include <vector>

#include "qdsim/bath.hpp"
#include "qdsim/evolution.hpp"
#include "qdsim/gaussian.hpp"

namespace qdsim {

/// System input pair probing information backflow. Both states single-mode
/// and physical; identical pairs are rejected (they cannot witness anything).
struct ProbePair {
    ProbePair(GaussianState state_a, GaussianState state_b, std::string label);
    GaussianState a;
    GaussianState b;
    std::string label;
};

/// The fixed documented ensemble replacing the max over all state pairs:
/// oppositely displaced coherent pairs (separation {1,2,4} along x and p) and
/// orthogonally squeezed vacuum pairs (r in {0.5, 1}, axes x/p and +-45 deg);
/// 10 pairs total. Covariances are shaped to the system oscillator.
std::vector<ProbePair> default_probe_ensemble(double omega_s);

/// F(t) for the pair pushed through the reduced channel at each grid time.
/// Grid must be increasing and start at 0.
std::vector<double> fidelity_trajectory(const ModelParams& model, const ProbePair& pair,
                                        const std::vector<double>& time_grid);

/// Accumulated fidelity drops: sum over consecutive grid pairs of
/// max(0, F_i - F_{i+1}). Reported as a positive magnitude.
double accumulated_fidelity_drops(const std::vector<double>& f_values);

struct NMResult {
    double omega_s = 0;
    std::vector<std::pair<std::string, double>> per_pair;
    double n_measure = 0;  // max over per_pair
};

NMResult nm_measure(const ModelParams& model, const std::vector<ProbePair>& pairs,
                    const std::vector<double>& time_grid);

/// Production path: shares a precomputed basis across pairs and grid points.
NMResult nm_measure_with_basis(const ModelParams& model, const NormalModeBasis& basis,
                               const std::vector<ProbePair>& pairs,
                               const std::vector<double>& time_grid);

}  // namespace qdsim
