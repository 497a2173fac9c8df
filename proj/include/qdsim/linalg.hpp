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

#include <cstddef>
#include <utility>
#include <vector>

namespace qdsim {

/// Dense column-major real matrix. Thin value type over std::vector<double>;
/// heavy operations are delegated to BLAS/LAPACK through the free functions
/// below.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(j) * rows_ + i]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(j) * rows_ + i]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Scale column j by s[j] in place.
    void scale_columns(const std::vector<double>& s) {
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) (*this)(i, j) *= s[j];
    }

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  private:
    int rows_, cols_;
    std::vector<double> a_;
};

/// C = alpha * op(A) * op(B); op is transpose when the flag is set.
Mat matmul(const Mat& a, const Mat& b, bool trans_a = false, bool trans_b = false,
           double alpha = 1.0);

/// Symmetric rank-k product A * A^T (or A^T * A), full matrix filled in.
Mat gram(const Mat& a, bool transpose_first = false);

/// Max |a_ij|.
double max_abs(const Mat& a);

/// Max |a_ij - b_ij|; shapes must match.
double max_abs_diff(const Mat& a, const Mat& b);

/// Frobenius norm.
double frobenius_norm(const Mat& a);

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// Returns false (leaving `l` unspecified) when the matrix is not PD.
bool cholesky(const Mat& a, Mat& l);

/// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> sym_eigenvalues(const Mat& a);

/// Full symmetric eigendecomposition; eigenvalues ascending, eigenvectors in
/// the columns of the returned matrix.
std::pair<Mat, std::vector<double>> sym_eigendecomposition(const Mat& a);

/// Singular values, descending.
std::vector<double> singular_values(const Mat& a);

/// Solve A x = b for symmetric positive definite A via Cholesky.
/// Returns false when A is not PD.
bool spd_solve(const Mat& a, std::vector<double>& b);

/// Pin the BLAS backend to one thread per caller; qdsim parallelizes across
/// work items, and per-item determinism requires a fixed reduction order.
void use_sequential_blas();

}  // namespace qdsim
