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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seam/hifi.hpp"
#include "seam/pod.hpp"

using namespace seam;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(-1, 1);
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = u(rng);
  return m;
}

}  // namespace

TEST(Gram, SmallCases) {
  DenseMatrix same(3, 2);
  same(0, 0) = same(0, 1) = 1.0;
  const DenseMatrix x = gram(SnapshotBlock(same));
  EXPECT_EQ(x(0, 0), 1.0);
  EXPECT_EQ(x(0, 1), 1.0);
  EXPECT_EQ(x(1, 1), 1.0);
  const DenseMatrix i = DenseMatrix::identity(4);
  const DenseMatrix g = gram(SnapshotBlock(i));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(g(a, b), a == b ? 1.0 : 0.0);
}

TEST(Gram, Heat1dTraceMatchesColumnNorms) {
  const SnapshotMatrix u = run_hifi(FullOrderModel(scenario("heat1d")));
  const DenseMatrix x = gram(SnapshotBlock(u.columns));
  double norms = 0.0;
  for (std::size_t n = 0; n < u.count(); ++n)
    for (double v : u.column(n)) norms += v * v;
  EXPECT_NEAR(x.trace(), norms, 1e-12 * norms);
}

TEST(EigDescending, DiagonalAndTruncation) {
  const GramSpectrum s = eig_descending(DenseMatrix::diagonal(std::vector<double>{3, 1, 2}));
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{3, 2, 1}));
  EXPECT_EQ(s.leading_vector, (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(eig_descending(DenseMatrix::identity(3), 2).eigenvalues.size(), 2u);
  EXPECT_THROW(eig_descending(DenseMatrix::identity(3), 4), InvalidArgument);
}

TEST(EigDescending, FiveByFiveAgainstOracle) {
  std::mt19937_64 rng(55);
  const oracle::Dense a = oracle::random_symmetric(rng, 5);
  DenseMatrix m(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = a[i][j] + (i == j ? 5.0 : 0.0);
  oracle::Dense shifted = a;
  for (std::size_t i = 0; i < 5; ++i) shifted[i][i] += 5.0;
  const auto ref = oracle::symmetric_eigenvalues(shifted);
  const GramSpectrum s = eig_descending(m);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(s.eigenvalues[k], ref[k], 1e-8);
}

TEST(EigDescending, SignRule) {
  DenseMatrix x(2, 2);
  x(0, 0) = x(1, 1) = 1.0;
  x(0, 1) = x(1, 0) = -0.5;
  const GramSpectrum s = eig_descending(x);
  const auto& b = s.leading_vector;
  const double largest = std::abs(b[0]) >= std::abs(b[1]) ? b[0] : b[1];
  EXPECT_GT(largest, 0.0);
}

TEST(EigDescending, ClampsRoundoffNegatives) {
  std::vector<double> v{5.0, -1e-14};
  detail::clamp_eigenvalues(v, 5.0);
  EXPECT_EQ(v[1], 0.0);
  std::vector<double> bad{5.0, -1.0};
  EXPECT_THROW(detail::clamp_eigenvalues(bad, 5.0), Error);
}

TEST(SegmentSpectrum, TraceIdentityAndDualAgreement) {
  std::mt19937_64 rng(8);
  // Tall (primal) and wide (dual) blocks.
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{20, 10}, {6, 15}}) {
    const DenseMatrix u = random_matrix(rng, rows, cols);
    const SnapshotBlock block(u);
    const GramSpectrum s = segment_spectrum(block, 3);
    EXPECT_EQ(s.segment, 3);
    ASSERT_EQ(s.eigenvalues.size(), cols);
    double sum = 0.0;
    for (double l : s.eigenvalues) sum += l;
    EXPECT_NEAR(sum, block.frobenius_squared(), 1e-10 * sum);
    const GramSpectrum primal = eig_descending(gram(block));
    for (std::size_t k = 0; k < cols; ++k) EXPECT_NEAR(s.eigenvalues[k], primal.eigenvalues[k], 1e-10 * sum);
    for (std::size_t k = 0; k < cols; ++k) EXPECT_NEAR(s.leading_vector[k], primal.leading_vector[k], 1e-9);
  }
}

TEST(PodBasis, RankOneSegment) {
  const std::size_t rows = 7;
  DenseMatrix u(rows, 5);
  std::vector<double> v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (i % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(rows));
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < rows; ++i) u(i, k) = std::pow(0.8, k) * v[i];
  const SnapshotBlock block(u);
  const PodBasis b = pod_basis(block, segment_spectrum(block));
  const double s = b.beta[0] > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < rows; ++i) EXPECT_NEAR(b.beta[i], s * v[i], 1e-12);
  EXPECT_NEAR(projection_residual(block, b), 0.0, 1e-12);
}

TEST(PodBasis, UnitNormOnHeat1d) {
  const SnapshotMatrix u = run_hifi(FullOrderModel(scenario("heat1d")));
  const SnapshotBlock block(u.columns);
  const GramSpectrum s = segment_spectrum(block);
  const PodBasis b = pod_basis(block, s);
  EXPECT_NEAR(norm2(b.beta), 1.0, 1e-12);
  double tail = 0.0;
  for (std::size_t k = 1; k < s.eigenvalues.size(); ++k) tail += s.eigenvalues[k];
  EXPECT_NEAR(projection_residual(block, b), tail, 1e-10 * s.trace);
}

TEST(PodBasis, ZeroSegmentIsDegenerate) {
  const DenseMatrix z(4, 3);
  const SnapshotBlock block(z);
  EXPECT_THROW(pod_basis(block, segment_spectrum(block)), DegenerateSnapshot);
}

TEST(PodBasis, OrthonormalColumns) {
  const DenseMatrix u = DenseMatrix::identity(3);
  const SnapshotBlock block(u);
  PodBasis b;
  b.beta = {1, 0, 0};
  EXPECT_NEAR(projection_residual(block, b), 2.0, 1e-15);
}

TEST(PodBasis, ProjectionIdentityOnRandomSegments) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> rows(1, 20), cols(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const DenseMatrix u = random_matrix(rng, rows(rng), cols(rng));
    const SnapshotBlock block(u);
    const GramSpectrum s = segment_spectrum(block);
    const PodBasis b = pod_basis(block, s);
    double tail = 0.0;
    for (std::size_t k = 1; k < s.eigenvalues.size(); ++k) tail += s.eigenvalues[k];
    EXPECT_NEAR(projection_residual(block, b), tail, 1e-10 * s.trace);
  }
}

TEST(SnapshotBlock, RejectsBadRanges) {
  const DenseMatrix u(3, 4);
  EXPECT_THROW(SnapshotBlock(u, 0, 0), InvalidArgument);
  EXPECT_THROW(SnapshotBlock(u, 2, 3), InvalidArgument);
}
