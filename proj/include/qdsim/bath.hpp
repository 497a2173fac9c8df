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

#include "qdsim/gaussian.hpp"
#include "qdsim/linalg.hpp"

namespace qdsim {

/// Band-limited spectral density J(w) = kappa sqrt(w^2 - w0^2) sqrt(wR^2 - w^2)
/// on [omega0, omegaR]; the Ohmic family's microscopic parent (homogeneous
/// harmonic chain with on-site frequency omega0).
struct SpectralDensityParams {
    double kappa = 0.1;
    double omega0 = 0.3;
    double omega_r = 0.7;

    /// Implicit chain coupling, omega_r = sqrt(omega0^2 + 4g).
    double chain_coupling() const { return (omega_r * omega_r - omega0 * omega0) / 4.0; }
};

double rubin_spectral_density(double omega, const SpectralDensityParams& p);

/// Uniform-frequency discretization: omega_k = omega0 + k*Delta for k = 1..N,
/// Delta = (omegaR - omega0)/N; effective bilinear couplings satisfy
/// g_k^2 = J(omega_k) * omega_k * Delta.
struct BathDiscretization {
    int n_osc = 0;
    double delta = 0.0;
    std::vector<double> omegas;     // strictly increasing, all > 0
    std::vector<double> couplings;  // g_k >= 0
};

/// Throws EmptyBathError when n = 0, ConfigError on malformed band parameters.
BathDiscretization discretize(const SpectralDensityParams& p, int n);

struct ModelParams {
    double omega_s = 0.5;
    double squeezing_r = 0.0;
    SpectralDensityParams spectral;
    BathDiscretization bath;

    int total_modes() const { return bath.n_osc + 1; }
};

ModelParams make_model(double omega_s, double squeezing_r, const SpectralDensityParams& p, int n);

/// (N+1)x(N+1) coupled potential: diag(omega_s^2, omega_k^2) with
/// V[0][k] = V[k][0] = -g_k.
Mat potential_matrix(const ModelParams& m);

/// Smallest eigenvalue of V. The caller must treat <= 0 as a fatal
/// configuration error (Hamiltonian unbounded below).
double stability_check(const Mat& v);

struct NormalModeBasis {
    Mat orthogonal;                  // columns are normal modes
    std::vector<double> eigenfreqs;  // ascending, all > 0
};

/// Exact diagonalization of a stable V; throws InstabilityError (carrying the
/// offending eigenvalue) when min eig <= 0.
NormalModeBasis normal_mode_decomposition(const Mat& v);

/// The 2M x 2M symplectic map S(t) in interleaved quadrature ordering.
struct SymplecticPropagator {
    Mat s;
    int modes() const { return s.rows() / 2; }
};

/// Per normal mode: x -> x cos(nu t) + p sin(nu t)/nu, p -> -x nu sin(nu t)
/// + p cos(nu t), conjugated back through the orthogonal basis.
SymplecticPropagator propagator(const NormalModeBasis& basis, double t);

/// Position/momentum-block pieces of S(t): xx = pp = O C O^T, xp = O S~ O^T,
/// px = -O S^ O^T. The full interleaved matrix is assembled on demand; column
/// scalings and Gram products work on the blocks directly.
struct PropagatorBlocks {
    Mat xx;  // also the pp block
    Mat xp;
    Mat px;
};

PropagatorBlocks propagator_blocks(const NormalModeBasis& basis, double t);

SymplecticPropagator assemble_propagator(const PropagatorBlocks& blocks);

/// Momentum-squeezed system (r > 0 stretches position), bath in vacuum:
/// system block diag(e^{2r}/(2 omega_s), omega_s e^{-2r}/2), bath mode k
/// diag(1/(2 omega_k), omega_k/2), zero mean. Pure product state.
GaussianState initial_state(const ModelParams& m);

/// Diagonal of the initial covariance in interleaved ordering.
std::vector<double> initial_cov_diagonal(const ModelParams& m);

/// <H> = tr(M sigma)/2 + mean^T M mean / 2 with M = interleave(V, identity).
double mean_energy(const ModelParams& m, const GaussianState& state);

}  // namespace qdsim
