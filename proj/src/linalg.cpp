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

#include "qdsim/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdsim/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace qdsim {

void use_sequential_blas() { openblas_set_num_threads(1); }

Mat matmul(const Mat& a, const Mat& b, bool trans_a, bool trans_b, double alpha) {
    const int m = trans_a ? a.cols() : a.rows();
    const int k = trans_a ? a.rows() : a.cols();
    const int kb = trans_b ? b.cols() : b.rows();
    const int n = trans_b ? b.rows() : b.cols();
    if (k != kb) throw WrongArityError("matmul: inner dimensions do not match");
    Mat c(m, n);
    if (m == 0 || n == 0 || k == 0) return c;
    cblas_dgemm(CblasColMajor, trans_a ? CblasTrans : CblasNoTrans,
                trans_b ? CblasTrans : CblasNoTrans, m, n, k, alpha, a.data(), a.rows(), b.data(),
                b.rows(), 0.0, c.data(), m);
    return c;
}

Mat gram(const Mat& a, bool transpose_first) {
    const int n = transpose_first ? a.cols() : a.rows();
    const int k = transpose_first ? a.rows() : a.cols();
    Mat c(n, n);
    if (n == 0) return c;
    cblas_dsyrk(CblasColMajor, CblasLower, transpose_first ? CblasTrans : CblasNoTrans, n, k, 1.0,
                a.data(), a.rows(), 0.0, c.data(), n);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) c(j, i) = c(i, j);
    return c;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    const double* p = a.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw WrongArityError("max_abs_diff: shape mismatch");
    double m = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
    return m;
}

double frobenius_norm(const Mat& a) {
    double s = 0.0;
    const double* p = a.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

bool cholesky(const Mat& a, Mat& l) {
    if (a.rows() != a.cols()) throw WrongArityError("cholesky: matrix not square");
    l = a;
    const int n = a.rows();
    if (n == 0) return true;
    const int info = LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, l.data(), n);
    if (info > 0) return false;
    if (info < 0) throw SimError("cholesky: bad argument to dpotrf");
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) l(i, j) = 0.0;
    return true;
}

std::vector<double> sym_eigenvalues(const Mat& a) {
    if (a.rows() != a.cols()) throw WrongArityError("sym_eigenvalues: matrix not square");
    Mat tmp = a;
    const int n = a.rows();
    std::vector<double> w(n);
    if (n == 0) return w;
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, tmp.data(), n, w.data());
    if (info != 0) throw SimError("sym_eigenvalues: dsyevd failed");
    return w;
}

std::pair<Mat, std::vector<double>> sym_eigendecomposition(const Mat& a) {
    if (a.rows() != a.cols()) throw WrongArityError("sym_eigendecomposition: matrix not square");
    Mat v = a;
    const int n = a.rows();
    std::vector<double> w(n);
    if (n > 0) {
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, v.data(), n, w.data());
        if (info != 0) throw SimError("sym_eigendecomposition: dsyevd failed");
    }
    return {std::move(v), std::move(w)};
}

std::vector<double> singular_values(const Mat& a) {
    Mat tmp = a;
    const int m = a.rows(), n = a.cols();
    std::vector<double> s(std::min(m, n));
    if (m == 0 || n == 0) return s;
    const int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, tmp.data(), m, s.data(), nullptr,
                                    1, nullptr, 1);
    if (info != 0) throw SimError("singular_values: dgesdd failed");
    return s;
}

bool spd_solve(const Mat& a, std::vector<double>& b) {
    if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
        throw WrongArityError("spd_solve: shape mismatch");
    Mat f = a;
    const int n = a.rows();
    if (n == 0) return true;
    int info = LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, f.data(), n);
    if (info > 0) return false;
    if (info < 0) throw SimError("spd_solve: bad argument to dpotrf");
    info = LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', n, 1, f.data(), n, b.data(), n);
    if (info != 0) throw SimError("spd_solve: dpotrs failed");
    return true;
}

}  // namespace qdsim
