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

#include <vector>

#include "qdsim/bath.hpp"
#include "qdsim/gaussian.hpp"

namespace qdsim {

/// cov -> S cov S^T, mean -> S mean.
GaussianState evolve_covariance(const SymplecticPropagator& prop, const GaussianState& initial);

/// Exact Gaussian channel on the system mode: sigma -> X sigma X^T + Y,
/// mean -> X mean. Complete positivity is checked on construction.
struct ReducedChannel {
    Mat x;  // 2x2
    Mat y;  // 2x2 symmetric

    GaussianState apply(const GaussianState& system_state) const;
};

/// Channel from a materialized propagator and the initial bath covariance
/// (2N x 2N). Throws ConsistencyError when the CP inequality fails beyond
/// 1e-9 (signals propagator corruption).
ReducedChannel reduced_channel(const SymplecticPropagator& prop, const Mat& bath_cov0);

/// Per-time-sample channel evaluation without materializing S(t): only the
/// two system rows of each propagator block are formed (O(M^2)), and the
/// vacuum bath enters through its diagonal. Shares one basis across samples.
class ChannelEvaluator {
  public:
    ChannelEvaluator(const NormalModeBasis& basis, std::vector<double> bath_diag);

    ReducedChannel at(double t) const;

  private:
    const NormalModeBasis& basis_;
    std::vector<double> bath_diag_;  // interleaved (x,p) variances, length 2N
};

/// Global covariance at time t for a product initial state with covariance
/// diagonal d0: sigma(t) = T T^T with T = S(t) sqrt(d0). Also used to hand
/// the exact factor to purity checks.
Mat evolved_cov_factor(const PropagatorBlocks& blocks, const std::vector<double>& d0);
Mat evolved_pure_cov(const NormalModeBasis& basis, const std::vector<double>& d0, double t);

/// Branch decoherence exponent for a bath fragment: overlap of two
/// equal-covariance branch states whose means differ by (x - x') w equals
/// exp[-d (x-x')^2] with d = w^T sigma_f^{-1} w / 4; w is the fragment part
/// of the S(t) column multiplying the initial system position.
struct DecoherenceRecord {
    double time = 0.0;
    ModeSet fragment;
    double d_value = 0.0;
};

DecoherenceRecord decoherence_factor(const SymplecticPropagator& prop,
                                     const GaussianState& global_state, const ModeSet& fragment,
                                     double t);

}  // namespace qdsim
