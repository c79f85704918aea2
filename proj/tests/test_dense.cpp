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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "seam/dense.hpp"

using namespace seam;

namespace {

DenseMatrix to_dense(const oracle::Dense& a) {
  DenseMatrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return m;
}

}  // namespace

TEST(Jacobi, DiagonalInput) {
  const std::vector<double> d{3, 1, 2};
  const SymmetricEigen e = jacobi_eigen(DenseMatrix::diagonal(d));
  EXPECT_EQ(e.values, (std::vector<double>{3, 2, 1}));
}

TEST(Jacobi, RejectsAsymmetricInput) {
  DenseMatrix a(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(jacobi_eigen(a), InvalidArgument);
}

TEST(Jacobi, EigenpairsReconstructMatrix) {
  std::mt19937_64 rng(11);
  const DenseMatrix a = to_dense(oracle::random_symmetric(rng, 12));
  const SymmetricEigen e = jacobi_eigen(a);
  for (std::size_t k = 0; k < 12; ++k) {
    const auto v = e.vectors.column(k);
    for (std::size_t i = 0; i < 12; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < 12; ++j) av += a(i, j) * v[j];
      EXPECT_NEAR(av, e.values[k] * v[i], 1e-12);
    }
    for (std::size_t l = 0; l < 12; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < 12; ++i) s += v[i] * e.vectors(i, l);
      EXPECT_NEAR(s, k == l ? 1.0 : 0.0, 1e-12);
    }
  }
}

// 500 random symmetric matrices up to 6x6 against the inertia-bisection
// reference and the Faddeev-LeVerrier characteristic polynomial.
TEST(Jacobi, MatchesDenseOracles) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 6);
  double worst = 0.0, worst_poly = 0.0;
  for (int c = 0; c < 500; ++c) {
    const auto n = static_cast<std::size_t>(size(rng));
    const oracle::Dense a = oracle::random_symmetric(rng, n, -5.0, 5.0);
    const std::vector<double> jac = symmetric_eigenvalues(to_dense(a));
    const std::vector<double> ref = oracle::symmetric_eigenvalues(a);
    ASSERT_EQ(jac.size(), ref.size());
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(jac[k] - ref[k]));
    const auto poly = oracle::characteristic_polynomial(a);
    const auto from_roots = oracle::poly_from_roots(jac);
    for (std::size_t k = 0; k <= n; ++k)
      worst_poly = std::max(worst_poly, std::abs(poly[k] - from_roots[k]) / std::max(1.0, std::abs(poly[k])));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_LE(worst_poly, 1e-8);
}

TEST(Dense, BasicOperations) {
  DenseMatrix a = DenseMatrix::identity(3);
  a(0, 2) = a(2, 0) = 2.0;
  EXPECT_DOUBLE_EQ(a.trace(), 3.0);
  EXPECT_DOUBLE_EQ(a.frobenius_norm(), std::sqrt(11.0));
  EXPECT_DOUBLE_EQ(a.asymmetry(), 0.0);
  const DenseMatrix b = a + a;
  EXPECT_DOUBLE_EQ(b(0, 2), 4.0);
}
