/*
 *   Copyright 2026 The seam-rb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Small dense matrices and the cyclic Jacobi eigensolver for symmetric ones.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "seam/error.hpp"

namespace seam {

/// Column-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  DenseMatrix operator+(const DenseMatrix& o) const {
    DenseMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  /// max |a_ij - a_ji| / max |a_ij| (0 for the zero matrix).
  double asymmetry() const {
    if (rows_ != cols_) return INFINITY;
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) {
        scale = std::max(scale, std::abs((*this)(i, j)));
        worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
      }
    return scale > 0.0 ? worst / scale : 0.0;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues in descending order; vectors(:, k) belongs to values[k].
struct SymmetricEigen {
  std::vector<double> values;
  DenseMatrix vectors;
  int sweeps = 0;
};

/// Full eigendecomposition by cyclic Jacobi rotations.
/// Throws InvalidArgument when the input is not symmetric to 1e-10 relative.
inline SymmetricEigen jacobi_eigen(const DenseMatrix& input, int max_sweeps = 100) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw InvalidArgument("eigensolver needs a square matrix");
  if (input.asymmetry() > 1e-10) throw InvalidArgument("eigensolver needs a symmetric matrix");

  // Symmetrise so that row p and column p hold the same values.
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  DenseMatrix v = DenseMatrix::identity(n);

  const double scale = a.frobenius_norm();
  int sweep = 0;
  for (; sweep < max_sweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t q = 1; q < n; ++q)
      for (std::size_t p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;

    bool rotated = false;
    for (std::size_t q = 1; q < n; ++q) {
      for (std::size_t p = 0; p < q; ++p) {
        const double apq = a(p, q);
        const double app = a(p, p), aqq = a(q, q);
        // Negligible against both diagonal entries: zero it without rotating.
        if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq)) || apq == 0.0) {
          if (apq != 0.0) {
            a(p, q) = 0.0;
            a(q, p) = 0.0;
          }
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        double* col_p = &a(0, p);
        double* col_q = &a(0, q);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double g = col_p[k], h = col_q[k];
          col_p[k] = g - s * (h + g * tau);
          col_q[k] = h + s * (g - h * tau);
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(p, k) = col_p[k];
          a(q, k) = col_q[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        double* vp = &v(0, p);
        double* vq = &v(0, q);
        for (std::size_t k = 0; k < n; ++k) {
          const double g = vp[k], h = vq[k];
          vp[k] = g - s * (h + g * tau);
          vq[k] = h + s * (g - h * tau);
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    const auto src = v.column(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.column(k).begin());
  }
  return out;
}

/// Descending eigenvalues only.
inline std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) { return jacobi_eigen(a).values; }

}  // namespace seam
