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
#include <string>
#include <vector>

#include "qdsim/bath.hpp"
#include "qdsim/gaussian.hpp"

namespace qdsim {

/// One random bath fragment plus the token that reproduces the draw.
struct FragmentSample {
    ModeSet fragment;     // bath mode labels (1..N), ascending
    double fraction = 0;  // |fragment| / N
    std::string seed_path;
};

/// Uniform random bath subsets of size max(1, round(fraction * n_bath)),
/// clamped to [1, n_bath]. Draws are independent across samples and fully
/// determined by `seed`. Throws InvalidFractionError for fraction <= 0 or > 1.
std::vector<FragmentSample> sample_fragments(int n_bath, double fraction, int n_samples,
                                             uint64_t seed);

/// Seed for the samples of one (t, fraction) point.
uint64_t fragment_point_seed(uint64_t master_seed, double t, double fraction);

/// I(S:f) = H_S + H_f - H_{S,f}; no purity assumption, direct sub-block
/// entropies. Fragment must exclude the system mode (label 0).
double mutual_information(const GaussianState& global, const ModeSet& fragment);

/// Fragment mutual informations against one fixed global covariance.
/// The pure-state flag enables complement-block entropies for fragments
/// larger than half the bath (exact for globally pure states, and what makes
/// production sweeps affordable); it also pins I(S:full bath) = 2 H_S.
class FragmentInfoEngine {
  public:
    FragmentInfoEngine(const Mat& global_cov, int n_bath, bool global_is_pure);

    double h_system() const { return h_system_; }
    double mi(const ModeSet& fragment) const;

  private:
    const Mat& cov_;
    int n_bath_;
    bool pure_;
    double h_system_;

    double block_entropy(const std::vector<int>& modes) const;
};

struct MutualInfoCurve {
    double time = 0;
    std::vector<double> fractions;
    std::vector<double> mi_mean;
    std::vector<double> mi_stderr;
    int n_samples = 0;
    double h_system = 0;
};

MutualInfoCurve mutual_info_curve(const ModelParams& model, double t,
                                  const std::vector<double>& fraction_grid, int n_samples,
                                  uint64_t master_seed);

/// Same curve from an already-evolved global covariance.
MutualInfoCurve mutual_info_curve_from_cov(const Mat& global_cov, int n_bath, double t,
                                           const std::vector<double>& fraction_grid, int n_samples,
                                           uint64_t master_seed, bool global_is_pure);

/// Smallest grid fraction whose averaged I(S:f) reaches (1 - delta) H_S;
/// first crossing on the grid, no interpolation. Returns 1 when H_S is
/// degenerate (< 1e-6 nats: no record exists yet) and 1 when only the full
/// environment reaches the threshold.
double f_delta(const ModelParams& model, double t, double delta,
               const std::vector<double>& search_grid, int n_samples, uint64_t master_seed);

double f_delta_from_cov(const Mat& global_cov, int n_bath, double t, double delta,
                        const std::vector<double>& search_grid, int n_samples,
                        uint64_t master_seed, bool global_is_pure);

/// Index of the first mean >= threshold, -1 if none.
int first_crossing(const std::vector<double>& means, double threshold);

struct RedundancyTrace {
    double delta = 0;
    std::vector<double> times;
    std::vector<double> f_delta;  // in (0, 1]

    double r_delta(int i) const { return 1.0 / f_delta[i]; }
};

/// N_f = sum over consecutive pairs of max(0, f_{i+1} - f_i); the discrete
/// form of the positive-derivative integral for piecewise-linear traces.
double non_monotonicity_nf(const RedundancyTrace& trace);

}  // namespace qdsim
