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

#include "qdsim/darwinism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "qdsim/errors.hpp"
#include "qdsim/evolution.hpp"
#include "qdsim/rng.hpp"

namespace qdsim {

namespace {

constexpr double kDegenerateEntropy = 1e-6;  // nats; below this no record exists

int fragment_size(double fraction, int n_bath) {
    const long s = std::lround(fraction * n_bath);
    return static_cast<int>(std::clamp(s, 1l, static_cast<long>(n_bath)));
}

Mat evolved_cov(const ModelParams& model, double t) {
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(model));
    return evolved_pure_cov(basis, initial_cov_diagonal(model), t);
}

}  // namespace

uint64_t fragment_point_seed(uint64_t master_seed, double t, double fraction) {
    return mix(mix(master_seed, double_bits(t)), double_bits(fraction));
}

std::vector<FragmentSample> sample_fragments(int n_bath, double fraction, int n_samples,
                                             uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw InvalidFractionError("fraction must lie in (0, 1]");
    if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
    if (n_bath < 1) throw EmptyBathError("cannot sample fragments from an empty bath");
    const int size = fragment_size(fraction, n_bath);
    std::vector<FragmentSample> samples;
    samples.reserve(n_samples);
    std::vector<int> labels(n_bath);
    for (int k = 0; k < n_samples; ++k) {
        std::iota(labels.begin(), labels.end(), 1);
        SplitMix rng(mix(seed, static_cast<uint64_t>(k)));
        // partial Fisher-Yates: the first `size` entries become the draw
        for (int i = 0; i < size; ++i) {
            const int j = i + static_cast<int>(rng.next_below(static_cast<uint64_t>(n_bath - i)));
            std::swap(labels[i], labels[j]);
        }
        std::vector<int> picked(labels.begin(), labels.begin() + size);
        std::sort(picked.begin(), picked.end());
        char path[64];
        std::snprintf(path, sizeof(path), "s%llx/f%.6f/k%d",
                      static_cast<unsigned long long>(seed), fraction, k);
        samples.push_back(
            {ModeSet(std::move(picked)), static_cast<double>(size) / n_bath, path});
    }
    return samples;
}

FragmentInfoEngine::FragmentInfoEngine(const Mat& global_cov, int n_bath, bool global_is_pure)
    : cov_(global_cov), n_bath_(n_bath), pure_(global_is_pure) {
    if (global_cov.rows() != 2 * (n_bath + 1))
        throw WrongArityError("global covariance does not match bath size");
    h_system_ = block_entropy({0});
}

double FragmentInfoEngine::block_entropy(const std::vector<int>& modes) const {
    const int m = static_cast<int>(modes.size());
    if (m == 0) return 0.0;
    Mat sub(2 * m, 2 * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb)
                    sub(2 * a + qa, 2 * b + qb) = cov_(2 * modes[a] + qa, 2 * modes[b] + qb);
    return von_neumann_entropy(sub);
}

double FragmentInfoEngine::mi(const ModeSet& fragment) const {
    if (fragment.contains(0))
        throw InvalidSubsetError("fragment must exclude the system mode");
    for (int i : fragment.indices())
        if (i > n_bath_) throw InvalidSubsetError("fragment mode out of range");
    const int size = fragment.size();
    if (size == 0) return 0.0;

    std::vector<int> frag(fragment.indices());
    std::sort(frag.begin(), frag.end());
    std::vector<int> complement;
    complement.reserve(n_bath_ - size);
    {
        auto it = frag.begin();
        for (int k = 1; k <= n_bath_; ++k) {
            if (it != frag.end() && *it == k) {
                ++it;
                continue;
            }
            complement.push_back(k);
        }
    }

    double h_f, h_sf;
    if (pure_ && size > n_bath_ - size) {
        // H_f = H_{S u f^c} for a pure global state
        std::vector<int> with_system = {0};
        with_system.insert(with_system.end(), complement.begin(), complement.end());
        h_f = block_entropy(with_system);
    } else {
        h_f = block_entropy(frag);
    }
    if (pure_ && size + 1 > n_bath_ - size) {
        // H_{S,f} = H_{f^c}
        h_sf = block_entropy(complement);
    } else {
        std::vector<int> with_system = {0};
        with_system.insert(with_system.end(), frag.begin(), frag.end());
        h_sf = block_entropy(with_system);
    }
    return h_system_ + h_f - h_sf;
}

double mutual_information(const GaussianState& global, const ModeSet& fragment) {
    FragmentInfoEngine engine(global.cov(), global.modes() - 1, /*global_is_pure=*/false);
    return engine.mi(fragment);
}

MutualInfoCurve mutual_info_curve_from_cov(const Mat& global_cov, int n_bath, double t,
                                           const std::vector<double>& fraction_grid, int n_samples,
                                           uint64_t master_seed, bool global_is_pure) {
    if (fraction_grid.empty()) throw ConfigError("fraction grid is empty");
    FragmentInfoEngine engine(global_cov, n_bath, global_is_pure);
    MutualInfoCurve curve;
    curve.time = t;
    curve.n_samples = n_samples;
    curve.h_system = engine.h_system();
    curve.fractions = fraction_grid;
    curve.mi_mean.resize(fraction_grid.size());
    curve.mi_stderr.resize(fraction_grid.size());
    for (size_t fi = 0; fi < fraction_grid.size(); ++fi) {
        const double f = fraction_grid[fi];
        const auto samples =
            sample_fragments(n_bath, f, n_samples, fragment_point_seed(master_seed, t, f));
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& s : samples) values.push_back(engine.mi(s.fragment));
        const int n = static_cast<int>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        curve.mi_mean[fi] = mean;
        curve.mi_stderr[fi] = n > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    }
    return curve;
}

MutualInfoCurve mutual_info_curve(const ModelParams& model, double t,
                                  const std::vector<double>& fraction_grid, int n_samples,
                                  uint64_t master_seed) {
    const Mat cov = evolved_cov(model, t);
    return mutual_info_curve_from_cov(cov, model.bath.n_osc, t, fraction_grid, n_samples,
                                      master_seed, /*global_is_pure=*/true);
}

int first_crossing(const std::vector<double>& means, double threshold) {
    for (size_t i = 0; i < means.size(); ++i)
        if (means[i] >= threshold) return static_cast<int>(i);
    return -1;
}

double f_delta_from_cov(const Mat& global_cov, int n_bath, double t, double delta,
                        const std::vector<double>& search_grid, int n_samples,
                        uint64_t master_seed, bool global_is_pure) {
    if (search_grid.empty()) throw ConfigError("f_delta search grid is empty");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    FragmentInfoEngine engine(global_cov, n_bath, global_is_pure);
    if (engine.h_system() < kDegenerateEntropy) return 1.0;
    const double threshold = (1.0 - delta) * engine.h_system();
    // ascending scan with early stop: exactly the first-crossing rule, and the
    // per-point seeds do not depend on how far the scan runs
    for (double f : search_grid) {
        const auto samples =
            sample_fragments(n_bath, f, n_samples, fragment_point_seed(master_seed, t, f));
        double sum = 0.0;
        for (const auto& s : samples) sum += engine.mi(s.fragment);
        if (sum / samples.size() >= threshold) return f;
    }
    return 1.0;
}

double f_delta(const ModelParams& model, double t, double delta,
               const std::vector<double>& search_grid, int n_samples, uint64_t master_seed) {
    const Mat cov = evolved_cov(model, t);
    return f_delta_from_cov(cov, model.bath.n_osc, t, delta, search_grid, n_samples, master_seed,
                            /*global_is_pure=*/true);
}

double non_monotonicity_nf(const RedundancyTrace& trace) {
    if (trace.times.size() < 2 || trace.f_delta.size() != trace.times.size())
        throw ConfigError("redundancy trace needs at least two time points");
    double nf = 0.0;
    for (size_t i = 0; i + 1 < trace.f_delta.size(); ++i)
        nf += std::max(0.0, trace.f_delta[i + 1] - trace.f_delta[i]);
    return nf;
}

}  // namespace qdsim
