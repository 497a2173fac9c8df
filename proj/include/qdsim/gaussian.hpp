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

#include "qdsim/linalg.hpp"

namespace qdsim {

// Quadrature convention: interleaved ordering (x_1, p_1, x_2, p_2, ...),
// hbar = 1, mass = 1, vacuum covariance = identity/2 (symplectic eigenvalue
// 1/2). Entropies are in nats.

/// Ordered set of distinct mode labels. Label 0 is the system oscillator,
/// 1..N the bath. Order is preserved by all sub-selection operations.
class ModeSet {
  public:
    ModeSet() = default;
    /// Throws InvalidSubsetError on duplicate or negative labels.
    explicit ModeSet(std::vector<int> indices);

    static ModeSet range(int first, int last);  // [first, last)

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    bool contains(int label) const;

  private:
    std::vector<int> indices_;
};

/// Gaussian state over M bosonic modes: length-2M mean vector and 2M x 2M
/// symmetric covariance of second central moments.
class GaussianState {
  public:
    /// Throws WrongArityError on dimension mismatch and InvalidCovarianceError
    /// when cov is not symmetric to 1e-12 relative.
    GaussianState(std::vector<double> mean, Mat cov);

    static GaussianState vacuum(int modes);

    int modes() const { return static_cast<int>(mean_.size()) / 2; }
    const std::vector<double>& mean() const { return mean_; }
    const Mat& cov() const { return cov_; }

  private:
    std::vector<double> mean_;
    Mat cov_;
};

/// Block-diagonal symplectic form, per-mode blocks [[0,1],[-1,0]].
Mat symplectic_form(int modes);

/// Apply the symplectic form on the left: out = Omega * a. O(n^2), no GEMM.
Mat apply_symplectic_form(const Mat& a);

/// Partial trace by sub-selection; preserves the order given in `subset`.
GaussianState reduce_to_modes(const GaussianState& state, const ModeSet& subset);

/// Williamson spectrum, ascending. Values in [1/2 - band, 1/2) are clamped up
/// to exactly 1/2 where band = max(1e-9, 16 eps dim nu_max); anything lower
/// throws UnphysicalStateError. Non-symmetric or non-PD input throws
/// InvalidCovarianceError.
std::vector<double> symplectic_eigenvalues(const Mat& cov);

/// H = sum_j h(nu_j), h(nu) = (nu+1/2)ln(nu+1/2) - (nu-1/2)ln(nu-1/2), nats.
double von_neumann_entropy(const Mat& cov);

/// Entropy from an already-computed symplectic spectrum.
double entropy_from_spectrum(const std::vector<double>& nus);

/// Uhlmann fidelity (squared convention) between single-mode Gaussian states:
///   F = exp(-delta_u^T (A+B)^{-1} delta_u / 2) / (sqrt(det(A+B) + L) - sqrt(L)),
///   L = (4 det A - 1)(4 det B - 1)/4.
double fidelity_single_mode(const GaussianState& s1, const GaussianState& s2);

/// True iff the Williamson spectrum stays >= 1/2 within the clamp band.
/// Returns false for covariances that are not positive definite.
bool check_physical(const Mat& cov);

}  // namespace qdsim
