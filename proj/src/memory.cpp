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

#include "qdsim/memory.hpp"

#include <cmath>

#include "qdsim/errors.hpp"

namespace qdsim {

namespace {

void check_time_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) throw ConfigError("time grid needs at least two points");
    if (grid.front() != 0.0) throw ConfigError("time grid must start at 0");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i + 1] > grid[i])) throw ConfigError("time grid must be increasing");
}

GaussianState single_mode_state(double cxx, double cxp, double cpp, double mx, double mp) {
    Mat cov(2, 2);
    cov(0, 0) = cxx;
    cov(0, 1) = cov(1, 0) = cxp;
    cov(1, 1) = cpp;
    return GaussianState({mx, mp}, std::move(cov));
}

bool states_identical(const GaussianState& a, const GaussianState& b) {
    return a.mean() == b.mean() && max_abs_diff(a.cov(), b.cov()) == 0.0;
}

}  // namespace

ProbePair::ProbePair(GaussianState state_a, GaussianState state_b, std::string label_in)
    : a(std::move(state_a)), b(std::move(state_b)), label(std::move(label_in)) {
    if (a.modes() != 1 || b.modes() != 1) throw WrongArityError("probe states must be single-mode");
    if (!check_physical(a.cov()) || !check_physical(b.cov()))
        throw UnphysicalStateError("probe state is unphysical");
    if (states_identical(a, b)) throw ConfigError("probe pair states must differ");
}

std::vector<ProbePair> default_probe_ensemble(double omega_s) {
    std::vector<ProbePair> pairs;
    const double vx = 1.0 / (2.0 * omega_s);
    const double vp = omega_s / 2.0;
    for (double sep : {1.0, 2.0, 4.0}) {
        pairs.emplace_back(single_mode_state(vx, 0, vp, sep / 2, 0),
                           single_mode_state(vx, 0, vp, -sep / 2, 0),
                           "disp-x-" + std::to_string(static_cast<int>(sep)));
        pairs.emplace_back(single_mode_state(vx, 0, vp, 0, sep / 2),
                           single_mode_state(vx, 0, vp, 0, -sep / 2),
                           "disp-p-" + std::to_string(static_cast<int>(sep)));
    }
    for (double r : {0.5, 1.0}) {
        const double lo = std::exp(-2.0 * r) / 2.0, hi = std::exp(2.0 * r) / 2.0;
        // axis-aligned: x-squeezed vs p-squeezed (oscillator units)
        pairs.emplace_back(single_mode_state(2 * vx * lo, 0, 2 * vp * hi, 0, 0),
                           single_mode_state(2 * vx * hi, 0, 2 * vp * lo, 0, 0),
                           "sq-axes-r" + std::to_string(r).substr(0, 3));
        // +-45 degrees: rotate diag(lo, hi) by R(+-pi/4) before oscillator scaling
        const double mean_v = (lo + hi) / 2.0, skew = (hi - lo) / 2.0;
        pairs.emplace_back(single_mode_state(2 * vx * mean_v, std::sqrt(4 * vx * vp) * skew,
                                             2 * vp * mean_v, 0, 0),
                           single_mode_state(2 * vx * mean_v, -std::sqrt(4 * vx * vp) * skew,
                                             2 * vp * mean_v, 0, 0),
                           "sq-diag-r" + std::to_string(r).substr(0, 3));
    }
    return pairs;
}

std::vector<double> fidelity_trajectory(const ModelParams& model, const ProbePair& pair,
                                        const std::vector<double>& time_grid) {
    check_time_grid(time_grid);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(model));
    const std::vector<double> d0 = initial_cov_diagonal(model);
    ChannelEvaluator evaluator(basis, std::vector<double>(d0.begin() + 2, d0.end()));
    std::vector<double> f;
    f.reserve(time_grid.size());
    for (double t : time_grid) {
        const ReducedChannel ch = evaluator.at(t);
        f.push_back(fidelity_single_mode(ch.apply(pair.a), ch.apply(pair.b)));
    }
    return f;
}

double accumulated_fidelity_drops(const std::vector<double>& f_values) {
    double n = 0.0;
    for (size_t i = 0; i + 1 < f_values.size(); ++i)
        n += std::max(0.0, f_values[i] - f_values[i + 1]);
    return n;
}

NMResult nm_measure_with_basis(const ModelParams& model, const NormalModeBasis& basis,
                               const std::vector<ProbePair>& pairs,
                               const std::vector<double>& time_grid) {
    if (pairs.empty()) throw ConfigError("probe ensemble is empty");
    check_time_grid(time_grid);
    const std::vector<double> d0 = initial_cov_diagonal(model);
    ChannelEvaluator evaluator(basis, std::vector<double>(d0.begin() + 2, d0.end()));
    NMResult result;
    result.omega_s = model.omega_s;
    std::vector<double> prev(pairs.size()), acc(pairs.size(), 0.0);
    bool have_prev = false;
    for (double t : time_grid) {
        const ReducedChannel ch = evaluator.at(t);
        for (size_t p = 0; p < pairs.size(); ++p) {
            const double f = fidelity_single_mode(ch.apply(pairs[p].a), ch.apply(pairs[p].b));
            if (have_prev) acc[p] += std::max(0.0, prev[p] - f);
            prev[p] = f;
        }
        have_prev = true;
    }
    result.n_measure = 0.0;
    for (size_t p = 0; p < pairs.size(); ++p) {
        result.per_pair.emplace_back(pairs[p].label, acc[p]);
        result.n_measure = std::max(result.n_measure, acc[p]);
    }
    return result;
}

NMResult nm_measure(const ModelParams& model, const std::vector<ProbePair>& pairs,
                    const std::vector<double>& time_grid) {
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(model));
    return nm_measure_with_basis(model, basis, pairs, time_grid);
}

}  // namespace qdsim
