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

#include "oracles.hpp"

#include <cmath>

#include "qdsim/rng.hpp"

namespace qdsim::oracle {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

double uniform(SplitMix& rng, double lo, double hi) {
    return lo + (hi - lo) * (rng.next() >> 11) * 0x1.0p-53;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
    int n = 64;
    double prev = simpson(f, a, b, n);
    for (int iter = 0; iter < 18; ++iter) {
        n *= 2;
        const double cur = simpson(f, a, b, n);
        if (std::abs(cur - prev) < 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

double thermal_entropy_series(double nu) {
    const double nbar = nu - 0.5;
    if (nbar <= 0.0) return 0.0;
    double h = 0.0;
    double p = 1.0 / (nbar + 1.0);
    const double ratio = nbar / (nbar + 1.0);
    for (int n = 0; n < 100000 && p > 1e-18; ++n) {
        h -= p * std::log(p);
        p *= ratio;
    }
    return h;
}

Mat random_physical_cov(int modes, uint64_t seed, double scale) {
    SplitMix rng(seed);
    const int dim = 2 * modes;
    Mat a(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) a(i, j) = uniform(rng, -scale, scale);
    Mat cov = gram(a);
    for (int i = 0; i < dim; ++i) cov(i, i) += 0.5;
    return cov;
}

Mat random_stable_potential(int n, uint64_t seed) {
    SplitMix rng(seed);
    Mat v(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) v(i, j) = v(j, i) = uniform(rng, -0.05, 0.05);
    for (int i = 0; i < n; ++i) v(i, i) = uniform(rng, 0.3, 1.5) + 0.05 * n;
    return v;
}

Mat random_single_mode_symplectic(uint64_t seed) {
    SplitMix rng(seed);
    const double t1 = uniform(rng, 0.0, 6.2831853);
    const double t2 = uniform(rng, 0.0, 6.2831853);
    const double z = uniform(rng, -0.8, 0.8);
    auto rot = [](double th) {
        Mat r(2, 2);
        r(0, 0) = r(1, 1) = std::cos(th);
        r(0, 1) = -std::sin(th);
        r(1, 0) = std::sin(th);
        return r;
    };
    Mat d(2, 2);
    d(0, 0) = std::exp(z);
    d(1, 1) = std::exp(-z);
    return matmul(matmul(rot(t1), d), rot(t2));
}

GaussianState permute_modes(const GaussianState& state, const std::vector<int>& perm) {
    const int m = state.modes();
    std::vector<double> mean(2 * m);
    Mat cov(2 * m, 2 * m);
    for (int a = 0; a < m; ++a) {
        mean[2 * a] = state.mean()[2 * perm[a]];
        mean[2 * a + 1] = state.mean()[2 * perm[a] + 1];
        for (int b = 0; b < m; ++b)
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb)
                    cov(2 * a + qa, 2 * b + qb) = state.cov()(2 * perm[a] + qa, 2 * perm[b] + qb);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace qdsim::oracle
