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

// Gram-matrix eigenanalysis of snapshot blocks and the rank-1 POD basis.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "seam/dense.hpp"
#include "seam/error.hpp"
#include "seam/sparse.hpp"

namespace seam {

/// Non-owning view of consecutive columns of a snapshot matrix.
class SnapshotBlock {
 public:
  SnapshotBlock(const DenseMatrix& m, std::size_t first, std::size_t count)
      : m_(&m), first_(first), count_(count) {
    if (count == 0) throw InvalidArgument("snapshot block must be nonempty");
    if (first + count > m.cols()) throw InvalidArgument("snapshot block exceeds the matrix");
  }
  explicit SnapshotBlock(const DenseMatrix& m) : SnapshotBlock(m, 0, m.cols()) {}

  std::size_t rows() const { return m_->rows(); }
  std::size_t count() const { return count_; }
  std::size_t first() const { return first_; }
  std::span<const double> column(std::size_t k) const { return m_->column(first_ + k); }

  double frobenius_squared() const {
    double s = 0.0;
    for (std::size_t k = 0; k < count_; ++k) s += dot(column(k), column(k));
    return s;
  }

 private:
  const DenseMatrix* m_;
  std::size_t first_, count_;
};

/// X = U^T U for the block.
inline DenseMatrix gram(const SnapshotBlock& block) {
  const std::size_t n = block.count();
  DenseMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = dot(block.column(i), block.column(j));
      x(i, j) = v;
      x(j, i) = v;
    }
  return x;
}

struct GramSpectrum {
  int segment = 0;
  std::vector<double> eigenvalues;  // descending, clamped at zero
  Vector leading_vector;            // b0, unit length, largest-magnitude entry positive
  double trace = 0.0;
};

namespace detail {

inline void fix_sign(Vector& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  if (!v.empty() && v[arg] < 0.0)
    for (double& x : v) x = -x;
}

inline void clamp_eigenvalues(std::vector<double>& values, double trace) {
  const double floor = -1e-12 * std::abs(trace);
  for (double& l : values) {
    if (l < floor) throw Error("Gram matrix has a significantly negative eigenvalue " + std::to_string(l));
    if (l < 0.0) l = 0.0;
  }
}

}  // namespace detail

/// Leading `k` eigenpairs of a symmetric matrix (k <= 0 keeps all), by Jacobi.
inline GramSpectrum eig_descending(const DenseMatrix& x, int k = 0) {
  const int n = static_cast<int>(x.rows());
  if (k > n) throw InvalidArgument("requested more eigenvalues than the matrix has");
  SymmetricEigen e = jacobi_eigen(x);
  GramSpectrum s;
  s.trace = x.trace();
  detail::clamp_eigenvalues(e.values, s.trace);
  s.eigenvalues.assign(e.values.begin(), e.values.begin() + (k <= 0 ? n : k));
  const auto v0 = e.vectors.column(0);
  s.leading_vector.assign(v0.begin(), v0.end());
  detail::fix_sign(s.leading_vector);
  return s;
}

/// Spectrum of the block's Gram matrix. When the block is wider than tall the
/// M x M matrix U U^T is diagonalised instead; it shares the nonzero spectrum,
/// the remaining eigenvalues are exactly zero and b0 = U^T v0 / sqrt(lambda0).
inline GramSpectrum segment_spectrum(const SnapshotBlock& block, int segment = 0) {
  const std::size_t rows = block.rows(), cols = block.count();
  GramSpectrum s;
  if (rows >= cols) {
    s = eig_descending(gram(block));
  } else {
    DenseMatrix c(rows, rows);
    for (std::size_t k = 0; k < cols; ++k) {
      const auto u = block.column(k);
      for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i <= j; ++i) c(i, j) += u[i] * u[j];
    }
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t i = 0; i < j; ++i) c(j, i) = c(i, j);
    SymmetricEigen e = jacobi_eigen(c);
    s.trace = c.trace();
    detail::clamp_eigenvalues(e.values, s.trace);
    s.eigenvalues = e.values;
    s.eigenvalues.resize(cols, 0.0);
    s.leading_vector.assign(cols, 0.0);
    const auto v0 = e.vectors.column(0);
    for (std::size_t k = 0; k < cols; ++k) s.leading_vector[k] = dot(block.column(k), v0);
    const double len = norm2(s.leading_vector);
    if (len > 0.0)
      for (double& b : s.leading_vector) b /= len;
    detail::fix_sign(s.leading_vector);
  }
  s.segment = segment;
  return s;
}

struct PodBasis {
  Vector beta;  // unit 2-norm
  double lambda0 = 0.0;
  Vector b0;
  int rank = 1;
};

/// beta = (1 / sqrt(lambda0)) * U b0.
inline PodBasis pod_basis(const SnapshotBlock& block, const GramSpectrum& spectrum) {
  const double lambda0 = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
  if (!(lambda0 > std::numeric_limits<double>::epsilon() * spectrum.trace) || !(lambda0 > 0.0))
    throw DegenerateSnapshot("snapshot block has no dominant energy (lambda0 = " + std::to_string(lambda0) + ")");
  if (spectrum.leading_vector.size() != block.count())
    throw InvalidArgument("spectrum does not belong to this block");
  PodBasis basis;
  basis.lambda0 = lambda0;
  basis.b0 = spectrum.leading_vector;
  basis.beta.assign(block.rows(), 0.0);
  for (std::size_t k = 0; k < block.count(); ++k) axpy(spectrum.leading_vector[k], block.column(k), basis.beta);
  const double scale = 1.0 / std::sqrt(lambda0);
  for (double& b : basis.beta) b *= scale;
  return basis;
}

/// sum_k || U_k - (beta . U_k) beta ||^2
inline double projection_residual(const SnapshotBlock& block, const PodBasis& basis) {
  double total = 0.0;
  Vector r(block.rows());
  for (std::size_t k = 0; k < block.count(); ++k) {
    const auto u = block.column(k);
    const double c = dot(basis.beta, u);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = u[i] - c * basis.beta[i];
    total += dot(r, r);
  }
  return total;
}

}  // namespace seam
