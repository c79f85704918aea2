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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "seam/error.hpp"

namespace seam {

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

/// Symmetric matrix in compressed-row form with both triangles stored.
/// Column indices within a row are sorted.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Builds the structure from per-row column lists; values start at zero.
  static CsrMatrix from_pattern(const std::vector<std::vector<int>>& rows) {
    CsrMatrix a;
    a.n_ = rows.size();
    a.offsets_.assign(a.n_ + 1, 0);
    for (std::size_t i = 0; i < a.n_; ++i) {
      std::vector<int> cols = rows[i];
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      a.columns_.insert(a.columns_.end(), cols.begin(), cols.end());
      a.offsets_[i + 1] = a.columns_.size();
    }
    a.values_.assign(a.columns_.size(), 0.0);
    return a;
  }

  /// Dense row-major input; zero entries are dropped. Mostly for tests.
  static CsrMatrix from_dense(std::size_t n, std::span<const double> dense) {
    std::vector<std::vector<int>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dense[i * n + j] != 0.0 || i == j) rows[i].push_back(static_cast<int>(j));
    CsrMatrix a = from_pattern(rows);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = a.offsets_[i]; k < a.offsets_[i + 1]; ++k)
        a.values_[k] = dense[i * n + a.columns_[k]];
    return a;
  }

  static CsrMatrix identity(std::size_t n, double scale = 1.0) {
    std::vector<std::vector<int>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i].push_back(static_cast<int>(i));
    CsrMatrix a = from_pattern(rows);
    std::fill(a.values_.begin(), a.values_.end(), scale);
    return a;
  }

  std::size_t size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }
  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const int> columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  /// Accumulates into an existing structural entry.
  void add(int i, int j, double v) {
    const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) throw InvalidArgument("entry outside the sparsity pattern");
    values_[static_cast<std::size_t>(it - columns_.begin())] += v;
  }

  double at(int i, int j) const {
    const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - columns_.begin())];
  }

  void multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k] * x[columns_[k]];
      y[i] = s;
    }
  }

  Vector operator*(std::span<const double> x) const {
    Vector y(n_);
    multiply(x, y);
    return y;
  }

  /// x^T A x
  double quadratic_form(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) row += values_[k] * x[columns_[k]];
      s += x[i] * row;
    }
    return s;
  }

  /// this + s * other; both must share the same pattern.
  CsrMatrix plus_scaled(double s, const CsrMatrix& other) const {
    if (other.offsets_ != offsets_ || other.columns_ != columns_)
      throw InvalidArgument("sparsity patterns differ");
    CsrMatrix r = *this;
    for (std::size_t k = 0; k < values_.size(); ++k) r.values_[k] += s * other.values_[k];
    return r;
  }

  /// Largest |a_ij - a_ji| relative to the largest |a_ij|; structural asymmetry gives +inf.
  double asymmetry() const {
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
        const int j = columns_[k];
        scale = std::max(scale, std::abs(values_[k]));
        const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[j]);
        const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[j + 1]);
        const auto it = std::lower_bound(first, last, static_cast<int>(i));
        if (it == last || *it != static_cast<int>(i)) return INFINITY;
        worst = std::max(worst, std::abs(values_[k] - values_[static_cast<std::size_t>(it - columns_.begin())]));
      }
    return scale > 0.0 ? worst / scale : 0.0;
  }

  std::vector<double> to_dense() const {
    std::vector<double> d(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) d[i * n_ + columns_[k]] = values_[k];
    return d;
  }

  /// MatrixMarket coordinate dump (general, 1-based).
  void write_matrix_market(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.precision(17);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << n_ << ' ' << n_ << ' ' << values_.size() << '\n';
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
        out << i + 1 << ' ' << columns_[k] + 1 << ' ' << values_[k] << '\n';
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<int> columns_;
  std::vector<double> values_;
};

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Unpreconditioned conjugate gradients for SPD `a`. `x` holds the initial
/// guess on entry. Stops when ||b - a x|| <= tol * ||b||; throws SolverFailure
/// after `max_iterations` (default 10 * size).
inline CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                                   double tol = 1e-12, int max_iterations = -1) {
  const std::size_t n = a.size();
  if (max_iterations < 0) max_iterations = static_cast<int>(std::max<std::size_t>(10 * n, 10));
  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  Vector r(n), p(n), q(n);
  a.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  p = r;
  double rr = dot(r, r);
  const double target = tol * b_norm;
  int it = 0;
  while (std::sqrt(rr) > target) {
    if (it >= max_iterations)
      throw SolverFailure("conjugate gradients did not converge", std::sqrt(rr) / b_norm);
    a.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) throw SolverFailure("conjugate gradients broke down (matrix not SPD?)", std::sqrt(rr) / b_norm);
    const double step = rr / pq;
    axpy(step, p, x);
    axpy(-step, q, r);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    ++it;
  }
  return {it, std::sqrt(rr) / b_norm};
}

}  // namespace seam
