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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdsim/errors.hpp"
#include "qdsim/evolution.hpp"
#include "qdsim/experiments.hpp"
#include "qdsim/rng.hpp"

using namespace qdsim;

namespace {

ModelParams model(double omega_s, double r, int n, double kappa = 0.1) {
    return make_model(omega_s, r, {kappa, 0.3, 0.7}, n);
}

Mat system_block(const Mat& cov) {
    Mat sys(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sys(i, j) = cov(i, j);
    return sys;
}

}  // namespace

TEST_CASE("evolve_covariance basics") {
    const ModelParams m = model(0.5, 1.0, 4);
    const GaussianState init = initial_state(m);
    SymplecticPropagator id{Mat::identity(10)};
    const GaussianState same = evolve_covariance(id, init);
    CHECK(max_abs_diff(same.cov(), init.cov()) == 0.0);

    SymplecticPropagator wrong{Mat::identity(6)};
    CHECK_THROWS_AS(evolve_covariance(wrong, init), WrongArityError);
}

TEST_CASE("purity is preserved by the exact evolution") {
    const ModelParams m = model(0.45, 2.0, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const GaussianState init = initial_state(m);
    for (double t : {1.0, 7.0, 23.0}) {
        const GaussianState evolved = evolve_covariance(propagator(basis, t), init);
        for (double nu : symplectic_eigenvalues(evolved.cov()))
            CHECK(nu == doctest::Approx(0.5).epsilon(2e-6));
    }
}

TEST_CASE("normal-mode propagation matches the RK4 oracle at N = 3") {
    const ModelParams m = model(0.5, 1.2, 3);
    const Mat v = potential_matrix(m);
    const NormalModeBasis basis = normal_mode_decomposition(v);
    const GaussianState init = initial_state(m);
    for (double t : {5.0, 12.0}) {
        // refine until the oracle is self-converged
        int steps = 4096;
        Mat coarse = rk4_propagator(v, t, steps);
        Mat fine = rk4_propagator(v, t, 2 * steps);
        while (max_abs_diff(coarse, fine) > 1e-9) {
            steps *= 2;
            coarse = fine;
            fine = rk4_propagator(v, t, 2 * steps);
        }
        const SymplecticPropagator s_nm = propagator(basis, t);
        CHECK(max_abs_diff(s_nm.s, fine) < 1e-6);
        const GaussianState a = evolve_covariance(s_nm, init);
        const GaussianState b = evolve_covariance({fine}, init);
        CHECK(max_abs_diff(a.cov(), b.cov()) < 1e-6);
    }
}

TEST_CASE("evolved_pure_cov equals the generic evolution path") {
    const ModelParams m = model(0.42, 1.7, 5);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const GaussianState init = initial_state(m);
    for (double t : {0.0, 2.5, 9.0}) {
        const Mat fast = evolved_pure_cov(basis, initial_cov_diagonal(m), t);
        const GaussianState slow = evolve_covariance(propagator(basis, t), init);
        CHECK(max_abs_diff(fast, slow.cov()) < 1e-10);
    }
}

TEST_CASE("reduced channel trivial cases") {
    const ModelParams m = model(0.5, 0.0, 4);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    Mat bath_cov(8, 8);
    for (int i = 0; i < 8; ++i) bath_cov(i, i) = d0[i + 2];

    const ReducedChannel at0 = reduced_channel(propagator(basis, 0.0), bath_cov);
    CHECK(max_abs_diff(at0.x, Mat::identity(2)) < 1e-14);
    CHECK(max_abs(at0.y) < 1e-14);

    // decoupled: free rotation of the system, no added noise
    const ModelParams free_m = model(0.5, 0.0, 4, 0.0);
    const NormalModeBasis free_basis = normal_mode_decomposition(potential_matrix(free_m));
    const std::vector<double> fd0 = initial_cov_diagonal(free_m);
    ChannelEvaluator eval(free_basis, std::vector<double>(fd0.begin() + 2, fd0.end()));
    for (double t : {0.8, 4.4}) {
        const ReducedChannel ch = eval.at(t);
        const double w = 0.5;
        CHECK(ch.x(0, 0) == doctest::Approx(std::cos(w * t)).epsilon(1e-10));
        CHECK(ch.x(0, 1) == doctest::Approx(std::sin(w * t) / w).epsilon(1e-10));
        CHECK(ch.x(1, 0) == doctest::Approx(-w * std::sin(w * t)).epsilon(1e-10));
        CHECK(max_abs(ch.y) < 1e-12);
    }
}

TEST_CASE("channel evaluator equals channel from materialized propagator") {
    const ModelParams m = model(0.61, 0.0, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    Mat bath_cov(12, 12);
    for (int i = 0; i < 12; ++i) bath_cov(i, i) = d0[i + 2];
    ChannelEvaluator eval(basis, std::vector<double>(d0.begin() + 2, d0.end()));
    for (double t : {0.3, 5.1, 19.0}) {
        const ReducedChannel a = eval.at(t);
        const ReducedChannel b = reduced_channel(propagator(basis, t), bath_cov);
        CHECK(max_abs_diff(a.x, b.x) < 1e-11);
        CHECK(max_abs_diff(a.y, b.y) < 1e-11);
    }
}

TEST_CASE("channel reproduces global marginals on random system inputs") {
    const ModelParams m = model(0.47, 0.0, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    const double t = 6.3;
    ChannelEvaluator eval(basis, std::vector<double>(d0.begin() + 2, d0.end()));
    const ReducedChannel ch = eval.at(t);
    const SymplecticPropagator prop = propagator(basis, t);

    SplitMix rng(123);
    auto u = [&](double lo, double hi) { return lo + (hi - lo) * (rng.next() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 20; ++trial) {
        const Mat sys_cov = oracle::random_physical_cov(1, 777 + trial);
        const std::vector<double> sys_mean = {u(-2, 2), u(-2, 2)};
        // embed the system state into the product global state
        const int dim = 2 * (m.bath.n_osc + 1);
        Mat global_cov(dim, dim);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) global_cov(i, j) = sys_cov(i, j);
        for (int i = 2; i < dim; ++i) global_cov(i, i) = d0[i];
        std::vector<double> global_mean(dim, 0.0);
        global_mean[0] = sys_mean[0];
        global_mean[1] = sys_mean[1];
        const GaussianState evolved =
            evolve_covariance(prop, GaussianState(global_mean, global_cov));
        const GaussianState marginal = reduce_to_modes(evolved, ModeSet({0}));
        const GaussianState via_channel = ch.apply(GaussianState(sys_mean, sys_cov));
        CHECK(max_abs_diff(marginal.cov(), via_channel.cov()) < 1e-10);
        CHECK(std::abs(marginal.mean()[0] - via_channel.mean()[0]) < 1e-10);
        CHECK(std::abs(marginal.mean()[1] - via_channel.mean()[1]) < 1e-10);
    }
}

TEST_CASE("system entropy agrees between global marginal and channel output") {
    const ModelParams m = model(0.52, 2.0, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    ChannelEvaluator eval(basis, std::vector<double>(d0.begin() + 2, d0.end()));
    Mat sys_cov(2, 2);
    sys_cov(0, 0) = d0[0];
    sys_cov(1, 1) = d0[1];
    const GaussianState sys0({0.0, 0.0}, sys_cov);
    for (double t : {3.0, 14.0, 33.0}) {
        const Mat global = evolved_pure_cov(basis, d0, t);
        const double h_marginal = von_neumann_entropy(system_block(global));
        const double h_channel = von_neumann_entropy(eval.at(t).apply(sys0).cov());
        CHECK(h_channel == doctest::Approx(h_marginal).epsilon(1e-10));
    }
}

TEST_CASE("decoherence factor trivial cases") {
    const ModelParams free_m = model(0.5, 2.0, 4, 0.0);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(free_m));
    const SymplecticPropagator prop = propagator(basis, 8.0);
    const GaussianState state =
        evolve_covariance(prop, initial_state(free_m));

    // no coupling: no record in any fragment
    const DecoherenceRecord rec = decoherence_factor(prop, state, ModeSet({1, 3}), 8.0);
    CHECK(rec.d_value == doctest::Approx(0.0).epsilon(1e-14));

    // empty fragment
    CHECK(decoherence_factor(prop, state, ModeSet(), 8.0).d_value == 0.0);

    // fragment containing the system mode is rejected
    CHECK_THROWS_AS(decoherence_factor(prop, state, ModeSet({0, 1}), 8.0), InvalidSubsetError);
}

TEST_CASE("decoherence factor matches the two-run overlap oracle") {
    const ModelParams m = model(0.5385, 2.0, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    for (double t : {4.0, 11.0}) {
        const SymplecticPropagator prop = propagator(basis, t);
        const GaussianState state = evolve_covariance(prop, initial_state(m));
        for (const auto& frag : {ModeSet({2}), ModeSet({1, 4}), ModeSet({3, 5, 6})}) {
            const double d = decoherence_factor(prop, state, frag, t).d_value;
            CHECK(d >= 0.0);
            for (double dx : {0.5, 1.0, 2.0}) {
                // two branch evolutions differing only in the initial system position
                const int dim = 2 * (m.bath.n_osc + 1);
                Mat cov0(dim, dim);
                for (int i = 0; i < dim; ++i) cov0(i, i) = d0[i];
                std::vector<double> mean_a(dim, 0.0), mean_b(dim, 0.0);
                mean_a[0] = 0.75 * dx;
                mean_b[0] = -0.25 * dx;
                const GaussianState run_a =
                    reduce_to_modes(evolve_covariance(prop, GaussianState(mean_a, cov0)), frag);
                const GaussianState run_b =
                    reduce_to_modes(evolve_covariance(prop, GaussianState(mean_b, cov0)), frag);
                std::vector<double> du(run_a.mean().size());
                for (size_t i = 0; i < du.size(); ++i) du[i] = run_a.mean()[i] - run_b.mean()[i];
                std::vector<double> rhs = du;
                REQUIRE(spd_solve(run_a.cov(), rhs));
                double quad = 0.0;
                for (size_t i = 0; i < du.size(); ++i) quad += du[i] * rhs[i];
                const double overlap = std::exp(-0.25 * quad);
                CHECK(std::exp(-d * dx * dx) == doctest::Approx(overlap).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("decoherence factor adds over block-diagonal fragments") {
    // synthetic global state whose fragment covariance is exactly block
    // diagonal across A and B: d_{A u B} = d_A + d_B >= d_A
    const ModelParams m = model(0.5, 1.0, 4);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const double t = 6.0;
    const SymplecticPropagator prop = propagator(basis, t);
    const int dim = 2 * (m.bath.n_osc + 1);
    Mat cov(dim, dim);
    // physical diagonal blocks with distinct widths
    for (int mode = 0; mode <= m.bath.n_osc; ++mode) {
        cov(2 * mode, 2 * mode) = 0.6 + 0.1 * mode;
        cov(2 * mode + 1, 2 * mode + 1) = 0.7 + 0.05 * mode;
    }
    const GaussianState synthetic(std::vector<double>(dim, 0.0), cov);
    const double d_a = decoherence_factor(prop, synthetic, ModeSet({1}), t).d_value;
    const double d_b = decoherence_factor(prop, synthetic, ModeSet({3}), t).d_value;
    const double d_ab = decoherence_factor(prop, synthetic, ModeSet({1, 3}), t).d_value;
    CHECK(d_ab == doctest::Approx(d_a + d_b).epsilon(1e-10));
    CHECK(d_ab >= d_a);
    CHECK(d_a > 0.0);

    // real correlated state: monotonicity observed, logged only
    const GaussianState real_state = evolve_covariance(prop, initial_state(m));
    const double rd_a = decoherence_factor(prop, real_state, ModeSet({1}), t).d_value;
    const double rd_ab = decoherence_factor(prop, real_state, ModeSet({1, 3}), t).d_value;
    MESSAGE("general-case inclusion: d_A=", rd_a, " d_AB=", rd_ab);
}

TEST_CASE("full-environment record strength grows with system entropy on resonance") {
    const ModelParams m = model(0.5385, 2.0, 40);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const std::vector<double> d0 = initial_cov_diagonal(m);
    const ModeSet full_env = ModeSet::range(1, m.total_modes());
    double prev_h = -1.0, prev_d = -1.0;
    for (double t : {2.0, 6.0, 10.0, 14.0, 18.0}) {
        const SymplecticPropagator prop = propagator(basis, t);
        const GaussianState state = evolve_covariance(prop, initial_state(m));
        const Mat sys = reduce_to_modes(state, ModeSet({0})).cov();
        const double h = von_neumann_entropy(sys);
        const double d = decoherence_factor(prop, state, full_env, t).d_value;
        if (prev_h >= 0.0 && h >= prev_h) {
            // resonant regime: entropy growth comes with stronger records
            CHECK(d >= prev_d - 1e-9);
        }
        prev_h = h;
        prev_d = d;
    }

    // band-edge regime: inspected, not asserted
    const ModelParams edge = model(0.32, 2.0, 40);
    const NormalModeBasis edge_basis = normal_mode_decomposition(potential_matrix(edge));
    std::string trace;
    for (double t : {2.0, 6.0, 10.0, 14.0}) {
        const SymplecticPropagator prop = propagator(edge_basis, t);
        const GaussianState state = evolve_covariance(prop, initial_state(edge));
        trace += " " + std::to_string(
            decoherence_factor(prop, state, ModeSet::range(1, edge.total_modes()), t).d_value);
    }
    MESSAGE("band-edge d(full env) trace:", trace);
}
