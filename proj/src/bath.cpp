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

#include "qdsim/bath.hpp"

#include <cmath>
#include <string>

#include "qdsim/errors.hpp"

namespace qdsim {

double rubin_spectral_density(double omega, const SpectralDensityParams& p) {
    if (omega < p.omega0 || omega > p.omega_r) return 0.0;
    const double lo = std::max(omega * omega - p.omega0 * p.omega0, 0.0);
    const double hi = std::max(p.omega_r * p.omega_r - omega * omega, 0.0);
    return p.kappa * std::sqrt(lo) * std::sqrt(hi);
}

BathDiscretization discretize(const SpectralDensityParams& p, int n) {
    if (n <= 0) throw EmptyBathError("bath must contain at least one oscillator");
    if (!(p.omega0 >= 0.0) || !(p.omega0 < p.omega_r))
        throw ConfigError("spectral band requires 0 <= omega0 < omega_r");
    if (!(p.kappa >= 0.0)) throw ConfigError("kappa must be nonnegative");
    BathDiscretization bath;
    bath.n_osc = n;
    bath.delta = (p.omega_r - p.omega0) / n;
    bath.omegas.resize(n);
    bath.couplings.resize(n);
    for (int k = 1; k <= n; ++k) {
        const double w = p.omega0 + k * bath.delta;
        bath.omegas[k - 1] = w;
        bath.couplings[k - 1] = std::sqrt(rubin_spectral_density(w, p) * w * bath.delta);
    }
    return bath;
}

ModelParams make_model(double omega_s, double squeezing_r, const SpectralDensityParams& p, int n) {
    ModelParams m;
    m.omega_s = omega_s;
    m.squeezing_r = squeezing_r;
    m.spectral = p;
    m.bath = discretize(p, n);
    return m;
}

Mat potential_matrix(const ModelParams& m) {
    const int n = m.bath.n_osc;
    Mat v(n + 1, n + 1);
    v(0, 0) = m.omega_s * m.omega_s;
    for (int k = 1; k <= n; ++k) {
        v(k, k) = m.bath.omegas[k - 1] * m.bath.omegas[k - 1];
        v(0, k) = -m.bath.couplings[k - 1];
        v(k, 0) = -m.bath.couplings[k - 1];
    }
    return v;
}

double stability_check(const Mat& v) { return sym_eigenvalues(v).front(); }

NormalModeBasis normal_mode_decomposition(const Mat& v) {
    auto [vecs, vals] = sym_eigendecomposition(v);
    if (vals.front() <= 0.0)
        throw InstabilityError("potential matrix is not positive definite (min eigenvalue " +
                                   std::to_string(vals.front()) + ")",
                               vals.front());
    NormalModeBasis basis;
    basis.orthogonal = std::move(vecs);
    basis.eigenfreqs.resize(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) basis.eigenfreqs[i] = std::sqrt(vals[i]);
    return basis;
}

PropagatorBlocks propagator_blocks(const NormalModeBasis& basis, double t) {
    const Mat& o = basis.orthogonal;
    const int n = o.rows();
    std::vector<double> c(n), s_over(n), nu_s(n);
    for (int m = 0; m < n; ++m) {
        const double nu = basis.eigenfreqs[m];
        const double ct = std::cos(nu * t);
        const double st = std::sin(nu * t);
        c[m] = ct;
        s_over[m] = st / nu;
        nu_s[m] = -nu * st;
    }
    Mat oc = o, os = o, ons = o;
    oc.scale_columns(c);
    os.scale_columns(s_over);
    ons.scale_columns(nu_s);
    PropagatorBlocks blocks;
    blocks.xx = matmul(oc, o, false, true);
    blocks.xp = matmul(os, o, false, true);
    blocks.px = matmul(ons, o, false, true);
    return blocks;
}

SymplecticPropagator assemble_propagator(const PropagatorBlocks& blocks) {
    const int n = blocks.xx.rows();
    SymplecticPropagator prop;
    prop.s = Mat(2 * n, 2 * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            prop.s(2 * i, 2 * j) = blocks.xx(i, j);
            prop.s(2 * i, 2 * j + 1) = blocks.xp(i, j);
            prop.s(2 * i + 1, 2 * j) = blocks.px(i, j);
            prop.s(2 * i + 1, 2 * j + 1) = blocks.xx(i, j);
        }
    return prop;
}

SymplecticPropagator propagator(const NormalModeBasis& basis, double t) {
    return assemble_propagator(propagator_blocks(basis, t));
}

std::vector<double> initial_cov_diagonal(const ModelParams& m) {
    const int n = m.bath.n_osc;
    std::vector<double> d(2 * (n + 1));
    d[0] = std::exp(2.0 * m.squeezing_r) / (2.0 * m.omega_s);
    d[1] = m.omega_s * std::exp(-2.0 * m.squeezing_r) / 2.0;
    for (int k = 1; k <= n; ++k) {
        d[2 * k] = 1.0 / (2.0 * m.bath.omegas[k - 1]);
        d[2 * k + 1] = m.bath.omegas[k - 1] / 2.0;
    }
    return d;
}

GaussianState initial_state(const ModelParams& m) {
    const std::vector<double> d = initial_cov_diagonal(m);
    const int dim = static_cast<int>(d.size());
    Mat cov(dim, dim);
    for (int i = 0; i < dim; ++i) cov(i, i) = d[i];
    return GaussianState(std::vector<double>(dim, 0.0), std::move(cov));
}

double mean_energy(const ModelParams& m, const GaussianState& state) {
    const Mat v = potential_matrix(m);
    const int n = v.rows();
    if (state.modes() != n) throw WrongArityError("mean_energy: state does not match model");
    double e = 0.0;
    const Mat& cov = state.cov();
    const auto& mu = state.mean();
    for (int i = 0; i < n; ++i) {
        e += 0.5 * (cov(2 * i + 1, 2 * i + 1) + mu[2 * i + 1] * mu[2 * i + 1]);
        for (int j = 0; j < n; ++j)
            e += 0.5 * v(i, j) * (cov(2 * i, 2 * j) + mu[2 * i] * mu[2 * j]);
    }
    return e;
}

}  // namespace qdsim
