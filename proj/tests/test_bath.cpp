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
#include "qdsim/bath.hpp"
#include "qdsim/errors.hpp"
#include "qdsim/evolution.hpp"

using namespace qdsim;

namespace {

const SpectralDensityParams kBand{0.1, 0.3, 0.7};

ModelParams small_model(double omega_s, double r, int n, double kappa = 0.1) {
    return make_model(omega_s, r, {kappa, 0.3, 0.7}, n);
}

}  // namespace

TEST_CASE("spectral density band edges and peak") {
    CHECK(rubin_spectral_density(0.3, kBand) == 0.0);
    CHECK(rubin_spectral_density(0.7, kBand) == 0.0);
    CHECK(rubin_spectral_density(0.2, kBand) == 0.0);
    CHECK(rubin_spectral_density(0.9, kBand) == 0.0);
    // analytic maximum at omega* = sqrt((w0^2 + wR^2)/2), J = 0.2 kappa
    const double peak = std::sqrt((0.09 + 0.49) / 2.0);
    CHECK(peak == doctest::Approx(0.538516480713).epsilon(1e-10));
    CHECK(rubin_spectral_density(peak, kBand) == doctest::Approx(0.2 * 0.1).epsilon(1e-12));
    for (double w : {0.35, 0.45, 0.55, 0.65})
        CHECK(rubin_spectral_density(w, kBand) <= rubin_spectral_density(peak, kBand));
}

TEST_CASE("spectral density Ohmic limit at omega0 = 0") {
    const SpectralDensityParams ohmic{0.4, 0.0, 0.7};
    for (double w : {0.1, 0.3, 0.5}) {
        CHECK(rubin_spectral_density(w, ohmic) ==
              doctest::Approx(0.4 * w * std::sqrt(0.49 - w * w)).epsilon(1e-12));
    }
}

TEST_CASE("discretization grid and couplings") {
    const BathDiscretization bath = discretize(kBand, 300);
    CHECK(bath.delta == doctest::Approx(1.0 / 750.0).epsilon(1e-14));
    CHECK(bath.omegas.front() == doctest::Approx(0.3 + 1.0 / 750.0).epsilon(1e-12));
    CHECK(bath.omegas.back() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(bath.couplings.back() == doctest::Approx(0.0).epsilon(1e-9));
    for (int k = 1; k < bath.n_osc; ++k) CHECK(bath.omegas[k] > bath.omegas[k - 1]);
    // g_k^2 = J(w_k) w_k Delta reproduced
    for (int k = 0; k < bath.n_osc; ++k) {
        const double expected =
            rubin_spectral_density(bath.omegas[k], kBand) * bath.omegas[k] * bath.delta;
        CHECK(bath.couplings[k] * bath.couplings[k] == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK_THROWS_AS(discretize(kBand, 0), EmptyBathError);
}

TEST_CASE("Riemann-sum consistency against quadrature oracle") {
    const double integral = oracle::integrate(
        [](double w) { return rubin_spectral_density(w, kBand); }, 0.3, 0.7);
    auto riemann = [&](int n) {
        const BathDiscretization bath = discretize(kBand, n);
        double sum = 0.0;
        for (int k = 0; k < n; ++k)
            sum += bath.couplings[k] * bath.couplings[k] / bath.omegas[k];
        return std::abs(sum - integral);
    };
    const double err150 = riemann(150);
    const double err300 = riemann(300);
    CHECK(err300 < err150);
    CHECK(err300 < 2e-4);
}

TEST_CASE("potential matrix structure") {
    // kappa = 0: diagonal
    const ModelParams decoupled = small_model(0.5, 0.0, 5, 0.0);
    const Mat v0 = potential_matrix(decoupled);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j)
            if (i != j) CHECK(v0(i, j) == 0.0);
    CHECK(v0(0, 0) == doctest::Approx(0.25));

    // N = 1 explicit arrow form
    const ModelParams tiny = small_model(0.5, 0.0, 1);
    const Mat v1 = potential_matrix(tiny);
    CHECK(v1.rows() == 2);
    CHECK(v1(0, 0) == doctest::Approx(0.25));
    CHECK(v1(1, 1) == doctest::Approx(0.49));
    CHECK(v1(0, 1) == doctest::Approx(-tiny.bath.couplings[0]));
    CHECK(v1(0, 1) == v1(1, 0));
}

TEST_CASE("stability check") {
    const ModelParams decoupled = small_model(0.5, 0.0, 4, 0.0);
    const double w1 = decoupled.bath.omegas[0];  // min(omega_s^2, omega_1^2) = omega_1^2 here
    CHECK(stability_check(potential_matrix(decoupled)) ==
          doctest::Approx(w1 * w1).epsilon(1e-12));

    // default kappa stable across the shipped sweep range
    for (double w : {0.15, 0.3, 0.5, 0.8, 1.2}) {
        const ModelParams m = small_model(w, 0.0, 300);
        CHECK(stability_check(potential_matrix(m)) > 0.0);
    }
    // below omega_s ~ 0.112 the Schur condition fails at kappa = 0.1: negative control
    const ModelParams low = small_model(0.05, 0.0, 300);
    CHECK(stability_check(potential_matrix(low)) < 0.0);

    // grossly over-coupled: unstable
    const ModelParams strong = small_model(0.5, 0.0, 50, 0.1 * 1e6);
    CHECK(stability_check(potential_matrix(strong)) < 0.0);
}

TEST_CASE("normal mode decomposition") {
    // diagonal V: eigenfreqs are the sorted square roots
    const ModelParams decoupled = small_model(0.5, 0.0, 3, 0.0);
    const NormalModeBasis basis0 = normal_mode_decomposition(potential_matrix(decoupled));
    CHECK(basis0.eigenfreqs.front() ==
          doctest::Approx(decoupled.bath.omegas[0]).epsilon(1e-12));
    // columns of O are coordinate axes up to sign/permutation
    for (size_t m = 0; m < basis0.eigenfreqs.size(); ++m)
        for (size_t j = 0; j < basis0.eigenfreqs.size(); ++j) {
            const double e = std::abs(basis0.orthogonal(static_cast<int>(j), static_cast<int>(m)));
            CHECK((e < 1e-9 || std::abs(e - 1.0) < 1e-9));
        }

    // N = 1: analytic 2x2 eigenvalues
    const ModelParams tiny = small_model(0.45, 0.0, 1);
    const Mat v = potential_matrix(tiny);
    const NormalModeBasis basis = normal_mode_decomposition(v);
    const double a = v(0, 0), b = v(1, 1), g = v(0, 1);
    const double disc = std::sqrt((a - b) * (a - b) + 4 * g * g);
    CHECK(basis.eigenfreqs[0] ==
          doctest::Approx(std::sqrt((a + b - disc) / 2)).epsilon(1e-12));
    CHECK(basis.eigenfreqs[1] ==
          doctest::Approx(std::sqrt((a + b + disc) / 2)).epsilon(1e-12));

    // unstable input throws with the offending eigenvalue attached
    const ModelParams bad = small_model(0.05, 0.0, 300);
    try {
        normal_mode_decomposition(potential_matrix(bad));
        CHECK(false);
    } catch (const InstabilityError& e) {
        CHECK(e.min_eigenvalue < 0.0);
    }
}

TEST_CASE("normal mode reconstruction on random stable potentials") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const Mat v = oracle::random_stable_potential(6, seed);
        const NormalModeBasis basis = normal_mode_decomposition(v);
        // O O^T = 1
        CHECK(max_abs_diff(gram(basis.orthogonal), Mat::identity(6)) < 1e-10);
        // O diag(nu^2) O^T = V
        Mat scaled = basis.orthogonal;
        std::vector<double> lam(6);
        for (int i = 0; i < 6; ++i) lam[i] = basis.eigenfreqs[i] * basis.eigenfreqs[i];
        scaled.scale_columns(lam);
        const Mat rec = matmul(scaled, basis.orthogonal, false, true);
        CHECK(max_abs_diff(rec, v) < 1e-9 * max_abs(v));
    }
}

TEST_CASE("propagator basics") {
    const ModelParams m = small_model(0.45, 0.0, 4);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));

    CHECK(max_abs_diff(propagator(basis, 0.0).s, Mat::identity(10)) < 1e-14);

    // free oscillator closes after one period
    const ModelParams free1 = small_model(0.5, 0.0, 1, 0.0);
    const NormalModeBasis fb = normal_mode_decomposition(potential_matrix(free1));
    const SymplecticPropagator cycle = propagator(fb, 2.0 * M_PI / 0.5);
    Mat sys(2, 2);
    sys(0, 0) = cycle.s(0, 0);
    sys(0, 1) = cycle.s(0, 1);
    sys(1, 0) = cycle.s(1, 0);
    sys(1, 1) = cycle.s(1, 1);
    CHECK(max_abs_diff(sys, Mat::identity(2)) < 1e-10);
}

TEST_CASE("propagator symplectic, group property, time reversal") {
    const ModelParams m = small_model(0.38, 0.0, 5);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const Mat omega = symplectic_form(6);
    for (double t : {0.7, 3.3, 11.0}) {
        const SymplecticPropagator s = propagator(basis, t);
        const Mat sos = matmul(matmul(s.s, omega), s.s, false, true);
        CHECK(max_abs_diff(sos, omega) < 1e-9);
    }
    const Mat s1 = propagator(basis, 1.3).s;
    const Mat s2 = propagator(basis, 2.9).s;
    const Mat s12 = propagator(basis, 4.2).s;
    CHECK(max_abs_diff(matmul(s1, s2), s12) < 1e-8);
    const Mat back = propagator(basis, -1.3).s;
    CHECK(max_abs_diff(matmul(s1, back), Mat::identity(12)) < 1e-8);
}

TEST_CASE("initial state convention") {
    // r = 0: every oscillator in its own ground state
    const ModelParams ground = small_model(0.5, 0.0, 3);
    const GaussianState g = initial_state(ground);
    CHECK(g.cov()(0, 0) == doctest::Approx(1.0 / (2 * 0.5)).epsilon(1e-14));
    CHECK(g.cov()(1, 1) == doctest::Approx(0.5 / 2).epsilon(1e-14));
    for (int k = 1; k <= 3; ++k) {
        const double w = ground.bath.omegas[k - 1];
        CHECK(g.cov()(2 * k, 2 * k) == doctest::Approx(1.0 / (2 * w)).epsilon(1e-14));
        CHECK(g.cov()(2 * k + 1, 2 * k + 1) == doctest::Approx(w / 2).epsilon(1e-14));
    }

    // r = 3, omega_s = 0.3: position variance e^6 / 0.6
    const ModelParams squeezed = small_model(0.3, 3.0, 3);
    const GaussianState s = initial_state(squeezed);
    CHECK(s.cov()(0, 0) == doctest::Approx(std::exp(6.0) / 0.6).epsilon(1e-12));
    CHECK(s.cov()(1, 1) == doctest::Approx(0.3 * std::exp(-6.0) / 2).epsilon(1e-12));

    // pure product state at any r
    for (double r : {0.0, 1.0, 5.0}) {
        const ModelParams m = small_model(0.4, r, 4);
        CHECK(von_neumann_entropy(initial_state(m).cov()) <= 1e-9);
    }
}

TEST_CASE("energy conservation along the evolution") {
    const ModelParams m = small_model(0.42, 1.5, 6);
    const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
    const GaussianState init = initial_state(m);
    const double e0 = mean_energy(m, init);
    for (double t : {0.5, 4.0, 17.0, 40.0}) {
        const GaussianState evolved = evolve_covariance(propagator(basis, t), init);
        CHECK(mean_energy(m, evolved) == doctest::Approx(e0).epsilon(1e-7));
    }
}

TEST_CASE("discretization Cauchy sequence for H_S at t = 40") {
    auto h_s_at = [](int n) {
        const ModelParams m = small_model(0.45, 2.0, n);
        const NormalModeBasis basis = normal_mode_decomposition(potential_matrix(m));
        const Mat cov = evolved_pure_cov(basis, initial_cov_diagonal(m), 40.0);
        Mat sys(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sys(i, j) = cov(i, j);
        return von_neumann_entropy(sys);
    };
    const double h75 = h_s_at(75), h150 = h_s_at(150), h300 = h_s_at(300);
    CHECK(std::abs(h300 - h150) < std::abs(h150 - h75));
}
