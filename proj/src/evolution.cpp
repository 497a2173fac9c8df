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

#include "qdsim/evolution.hpp"

#include <cmath>

#include "qdsim/errors.hpp"

namespace qdsim {

namespace {

/// Smallest eigenvalue of the Hermitian CP-condition matrix
/// Y + (i/2)(1 - det X) Omega_1; closed form for 2x2.
double cp_min_eigenvalue(const Mat& x, const Mat& y) {
    const double c = 1.0 - (x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0));
    const double tr = y(0, 0) + y(1, 1);
    const double diff = y(0, 0) - y(1, 1);
    const double rad = std::sqrt(diff * diff + 4.0 * (y(0, 1) * y(0, 1) + c * c / 4.0));
    return 0.5 * (tr - rad);
}

void check_cp(const Mat& x, const Mat& y) {
    if (cp_min_eigenvalue(x, y) < -1e-9)
        throw ConsistencyError("reduced channel violates complete positivity");
}

}  // namespace

GaussianState evolve_covariance(const SymplecticPropagator& prop, const GaussianState& initial) {
    if (prop.s.rows() != 2 * initial.modes())
        throw WrongArityError("propagator dimension does not match state");
    Mat cov = matmul(matmul(prop.s, initial.cov()), prop.s, false, true);
    // symmetrize away the round-off skew so downstream Cholesky sees clean input
    for (int j = 0; j < cov.cols(); ++j)
        for (int i = 0; i < j; ++i) {
            const double v = 0.5 * (cov(i, j) + cov(j, i));
            cov(i, j) = v;
            cov(j, i) = v;
        }
    const int dim = prop.s.rows();
    std::vector<double> mean(dim, 0.0);
    for (int j = 0; j < dim; ++j) {
        const double mj = initial.mean()[j];
        if (mj == 0.0) continue;
        for (int i = 0; i < dim; ++i) mean[i] += prop.s(i, j) * mj;
    }
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState ReducedChannel::apply(const GaussianState& system_state) const {
    if (system_state.modes() != 1) throw WrongArityError("reduced channel acts on one mode");
    Mat cov = matmul(matmul(x, system_state.cov()), x, false, true);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) cov(i, j) += y(i, j);
    const double s0 = cov(0, 1), s1 = cov(1, 0);
    cov(0, 1) = cov(1, 0) = 0.5 * (s0 + s1);
    std::vector<double> mean = {x(0, 0) * system_state.mean()[0] + x(0, 1) * system_state.mean()[1],
                                x(1, 0) * system_state.mean()[0] + x(1, 1) * system_state.mean()[1]};
    return GaussianState(std::move(mean), std::move(cov));
}

ReducedChannel reduced_channel(const SymplecticPropagator& prop, const Mat& bath_cov0) {
    const int dim = prop.s.rows();
    const int bath_dim = dim - 2;
    if (bath_cov0.rows() != bath_dim || bath_cov0.cols() != bath_dim)
        throw WrongArityError("bath covariance does not match propagator");
    ReducedChannel ch;
    ch.x = Mat(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ch.x(i, j) = prop.s(i, j);
    Mat s_se(2, bath_dim);
    for (int j = 0; j < bath_dim; ++j)
        for (int i = 0; i < 2; ++i) s_se(i, j) = prop.s(i, j + 2);
    Mat y = matmul(matmul(s_se, bath_cov0), s_se, false, true);
    const double off = 0.5 * (y(0, 1) + y(1, 0));
    y(0, 1) = y(1, 0) = off;
    ch.y = std::move(y);
    check_cp(ch.x, ch.y);
    return ch;
}

ChannelEvaluator::ChannelEvaluator(const NormalModeBasis& basis, std::vector<double> bath_diag)
    : basis_(basis), bath_diag_(std::move(bath_diag)) {
    if (static_cast<int>(bath_diag_.size()) != 2 * (basis_.orthogonal.rows() - 1))
        throw WrongArityError("bath diagonal does not match basis");
}

ReducedChannel ChannelEvaluator::at(double t) const {
    const Mat& o = basis_.orthogonal;
    const int n = o.rows();
    // system rows of the three distinct blocks of S(t)
    std::vector<double> row_xx(n, 0.0), row_xp(n, 0.0), row_px(n, 0.0);
    for (int m = 0; m < n; ++m) {
        const double nu = basis_.eigenfreqs[m];
        const double ct = std::cos(nu * t);
        const double st = std::sin(nu * t);
        const double w = o(0, m);
        // accumulate (o_0 .* diag) O^T one normal mode at a time
        const double wc = w * ct, ws = w * st / nu, wn = -w * nu * st;
        for (int j = 0; j < n; ++j) {
            const double om = o(j, m);
            row_xx[j] += wc * om;
            row_xp[j] += ws * om;
            row_px[j] += wn * om;
        }
    }
    ReducedChannel ch;
    ch.x = Mat(2, 2);
    ch.x(0, 0) = row_xx[0];
    ch.x(0, 1) = row_xp[0];
    ch.x(1, 0) = row_px[0];
    ch.x(1, 1) = row_xx[0];
    Mat y(2, 2);
    for (int k = 1; k < n; ++k) {
        const double dx = bath_diag_[2 * (k - 1)];
        const double dp = bath_diag_[2 * (k - 1) + 1];
        const double ax = row_xx[k], bx = row_xp[k], cx = row_px[k];
        y(0, 0) += ax * ax * dx + bx * bx * dp;
        y(0, 1) += ax * cx * dx + bx * ax * dp;
        y(1, 1) += cx * cx * dx + ax * ax * dp;
    }
    y(1, 0) = y(0, 1);
    ch.y = std::move(y);
    check_cp(ch.x, ch.y);
    return ch;
}

Mat evolved_cov_factor(const PropagatorBlocks& blocks, const std::vector<double>& d0) {
    const int n = blocks.xx.rows();
    if (static_cast<int>(d0.size()) != 2 * n)
        throw WrongArityError("initial diagonal does not match propagator");
    Mat t(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double sx = std::sqrt(d0[2 * j]);
        const double sp = std::sqrt(d0[2 * j + 1]);
        for (int i = 0; i < n; ++i) {
            t(2 * i, 2 * j) = blocks.xx(i, j) * sx;
            t(2 * i, 2 * j + 1) = blocks.xp(i, j) * sp;
            t(2 * i + 1, 2 * j) = blocks.px(i, j) * sx;
            t(2 * i + 1, 2 * j + 1) = blocks.xx(i, j) * sp;
        }
    }
    return t;
}

Mat evolved_pure_cov(const NormalModeBasis& basis, const std::vector<double>& d0, double t) {
    return gram(evolved_cov_factor(propagator_blocks(basis, t), d0));
}

DecoherenceRecord decoherence_factor(const SymplecticPropagator& prop,
                                     const GaussianState& global_state, const ModeSet& fragment,
                                     double t) {
    if (fragment.contains(0))
        throw InvalidSubsetError("decoherence fragment must exclude the system mode");
    DecoherenceRecord rec;
    rec.time = t;
    rec.fragment = fragment;
    if (fragment.empty()) return rec;
    if (prop.s.rows() != 2 * global_state.modes())
        throw WrongArityError("propagator dimension does not match state");
    const int m = fragment.size();
    std::vector<double> w(2 * m);
    for (int a = 0; a < m; ++a) {
        const int mode = fragment.indices()[a];
        if (mode >= global_state.modes()) throw InvalidSubsetError("fragment mode out of range");
        w[2 * a] = prop.s(2 * mode, 0);
        w[2 * a + 1] = prop.s(2 * mode + 1, 0);
    }
    const Mat sigma_f = reduce_to_modes(global_state, fragment).cov();
    std::vector<double> rhs = w;
    if (!spd_solve(sigma_f, rhs))
        throw NumericalDegeneracyError("singular fragment covariance in decoherence factor");
    double quad = 0.0;
    for (int i = 0; i < 2 * m; ++i) quad += w[i] * rhs[i];
    rec.d_value = 0.25 * quad;
    return rec;
}

}  // namespace qdsim
