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

#include "qdsim/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "qdsim/errors.hpp"

namespace qdsim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_symmetric(const Mat& cov, double rel_tol = 1e-12) {
    if (cov.rows() != cov.cols()) throw InvalidCovarianceError("covariance is not square");
    const double scale = std::max(max_abs(cov), 1.0);
    for (int j = 0; j < cov.cols(); ++j)
        for (int i = 0; i < j; ++i)
            if (std::abs(cov(i, j) - cov(j, i)) > rel_tol * scale)
                throw InvalidCovarianceError("covariance is not symmetric");
}

/// Raw Williamson spectrum (descending, no clamp): singular values of
/// L^T Omega L with cov = L L^T. The input is first balanced by the exact
/// symplectic scaling diag(s_j, 1/s_j), s_j = (sigma_pp/sigma_xx)^{1/4} per
/// mode; strongly squeezed covariances otherwise lose the small eigenvalues
/// to round-off amplified by the x/p scale ratio.
struct RawSpectrum {
    std::vector<double> nus;  // descending
    double scale = 0.0;       // balanced-matrix magnitude, sets the round-off band
};

RawSpectrum raw_symplectic_spectrum(const Mat& cov) {
    check_symmetric(cov);
    if (cov.rows() % 2 != 0) throw InvalidCovarianceError("covariance has odd dimension");
    const int modes = cov.rows() / 2;
    std::vector<double> scale(2 * modes, 1.0);
    for (int j = 0; j < modes; ++j) {
        const double a = cov(2 * j, 2 * j);
        const double b = cov(2 * j + 1, 2 * j + 1);
        if (!(a > 0.0) || !(b > 0.0))
            throw InvalidCovarianceError("covariance is not positive definite");
        const double s = std::pow(b / a, 0.25);
        scale[2 * j] = s;
        scale[2 * j + 1] = 1.0 / s;
    }
    Mat balanced = cov;
    RawSpectrum out;
    for (int j = 0; j < 2 * modes; ++j) {
        for (int i = 0; i < 2 * modes; ++i) balanced(i, j) *= scale[i] * scale[j];
        out.scale = std::max(out.scale, balanced(j, j));
    }
    Mat l;
    if (!cholesky(balanced, l)) throw InvalidCovarianceError("covariance is not positive definite");
    const Mat k = matmul(l, apply_symplectic_form(l), true, false);
    const std::vector<double> sv = singular_values(k);
    out.nus.resize(sv.size() / 2);
    for (size_t j = 0; j < out.nus.size(); ++j) out.nus[j] = sv[2 * j];  // pairs
    return out;
}

double clamp_band(const RawSpectrum& raw, int dim) {
    return std::max(1e-9, 16.0 * kEps * dim * raw.scale);
}

}  // namespace

ModeSet::ModeSet(std::vector<int> indices) : indices_(std::move(indices)) {
    std::set<int> seen;
    for (int i : indices_) {
        if (i < 0) throw InvalidSubsetError("negative mode label");
        if (!seen.insert(i).second)
            throw InvalidSubsetError("duplicate mode label " + std::to_string(i));
    }
}

ModeSet ModeSet::range(int first, int last) {
    std::vector<int> idx;
    for (int i = first; i < last; ++i) idx.push_back(i);
    return ModeSet(std::move(idx));
}

bool ModeSet::contains(int label) const {
    return std::find(indices_.begin(), indices_.end(), label) != indices_.end();
}

GaussianState::GaussianState(std::vector<double> mean, Mat cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() % 2 != 0) throw WrongArityError("mean vector has odd length");
    if (cov_.rows() != static_cast<int>(mean_.size()) || cov_.rows() != cov_.cols())
        throw WrongArityError("covariance dimension does not match mean");
    check_symmetric(cov_);
}

GaussianState GaussianState::vacuum(int modes) {
    Mat cov(2 * modes, 2 * modes);
    for (int i = 0; i < 2 * modes; ++i) cov(i, i) = 0.5;
    return GaussianState(std::vector<double>(2 * modes, 0.0), std::move(cov));
}

Mat symplectic_form(int modes) {
    Mat omega(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

Mat apply_symplectic_form(const Mat& a) {
    // (Omega a): row 2j of the result is row 2j+1 of a, row 2j+1 is -row 2j.
    Mat out(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i + 1 < a.rows(); i += 2) {
            out(i, j) = a(i + 1, j);
            out(i + 1, j) = -a(i, j);
        }
    return out;
}

GaussianState reduce_to_modes(const GaussianState& state, const ModeSet& subset) {
    for (int i : subset.indices())
        if (i >= state.modes())
            throw InvalidSubsetError("mode label " + std::to_string(i) + " out of range");
    const int m = subset.size();
    std::vector<double> mean(2 * m);
    Mat cov(2 * m, 2 * m);
    const auto& idx = subset.indices();
    for (int a = 0; a < m; ++a) {
        mean[2 * a] = state.mean()[2 * idx[a]];
        mean[2 * a + 1] = state.mean()[2 * idx[a] + 1];
        for (int b = 0; b < m; ++b)
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb)
                    cov(2 * a + qa, 2 * b + qb) = state.cov()(2 * idx[a] + qa, 2 * idx[b] + qb);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

std::vector<double> symplectic_eigenvalues(const Mat& cov) {
    RawSpectrum raw = raw_symplectic_spectrum(cov);
    const double band = clamp_band(raw, cov.rows());
    std::vector<double> nus = std::move(raw.nus);
    for (double& nu : nus) {
        if (nu < 0.5 - band)
            throw UnphysicalStateError("symplectic eigenvalue " + std::to_string(nu) +
                                       " below 1/2");
        if (nu < 0.5) nu = 0.5;
    }
    std::sort(nus.begin(), nus.end());
    return nus;
}

double entropy_from_spectrum(const std::vector<double>& nus) {
    double h = 0.0;
    for (double nu : nus) {
        const double g = nu - 0.5;
        if (g <= 0.0) continue;  // pure mode contributes nothing
        h += (nu + 0.5) * std::log(nu + 0.5) - g * std::log(g);
    }
    return h;
}

double von_neumann_entropy(const Mat& cov) { return entropy_from_spectrum(symplectic_eigenvalues(cov)); }

double fidelity_single_mode(const GaussianState& s1, const GaussianState& s2) {
    if (s1.modes() != 1 || s2.modes() != 1)
        throw WrongArityError("fidelity_single_mode expects single-mode states");
    const Mat& a = s1.cov();
    const Mat& b = s2.cov();
    const double det_a = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const double det_b = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
    if (std::sqrt(std::max(det_a, 0.0)) < 0.5 - 1e-9 || std::sqrt(std::max(det_b, 0.0)) < 0.5 - 1e-9)
        throw UnphysicalStateError("fidelity input state is unphysical");
    Mat sum(2, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) sum(i, j) = a(i, j) + b(i, j);
    const double det_sum = sum(0, 0) * sum(1, 1) - sum(0, 1) * sum(1, 0);
    if (det_sum <= 0.0 || !std::isfinite(det_sum))
        throw NumericalDegeneracyError("singular covariance sum in fidelity");
    const double du0 = s1.mean()[0] - s2.mean()[0];
    const double du1 = s1.mean()[1] - s2.mean()[1];
    // delta_u^T (A+B)^{-1} delta_u via the 2x2 adjugate
    const double quad =
        (sum(1, 1) * du0 * du0 - 2.0 * sum(0, 1) * du0 * du1 + sum(0, 0) * du1 * du1) / det_sum;
    // Lambda can dip just below zero for pure states; that is round-off
    const double lambda = std::max((4.0 * det_a - 1.0) * (4.0 * det_b - 1.0) / 4.0, 0.0);
    const double f = std::exp(-0.5 * quad) / (std::sqrt(det_sum + lambda) - std::sqrt(lambda));
    return std::min(f, 1.0);
}

bool check_physical(const Mat& cov) {
    check_symmetric(cov);
    if (cov.rows() % 2 != 0) throw InvalidCovarianceError("covariance has odd dimension");
    RawSpectrum raw;
    try {
        raw = raw_symplectic_spectrum(cov);
    } catch (const InvalidCovarianceError&) {
        if (cov.rows() == 0) return true;
        // symmetric but not positive definite: certainly unphysical
        return false;
    }
    if (raw.nus.empty()) return true;
    const double band = clamp_band(raw, cov.rows());
    return raw.nus.back() >= 0.5 - band;
}

}  // namespace qdsim
