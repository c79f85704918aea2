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

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seam/analysis.hpp"
#include "seam/assembly.hpp"

using namespace seam;

namespace {

CsrMatrix diag(std::vector<double> d) {
  std::vector<double> dense(d.size() * d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) dense[i * d.size() + i] = d[i];
  return CsrMatrix::from_dense(d.size(), dense);
}

oracle::Dense rows_of(const CsrMatrix& m) {
  const std::size_t n = m.size();
  const auto flat = m.to_dense();
  oracle::Dense d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = flat[i * n + j];
  return d;
}

DenseMatrix to_dense(const oracle::Dense& a) {
  DenseMatrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return m;
}

}  // namespace

TEST(OperatorNorm, TrivialPencils) {
  EXPECT_NEAR(operator_norm_A(CsrMatrix::identity(3), diag({1, 4, 9})).value, 9.0, 1e-8);
  EXPECT_NEAR(operator_norm_A(CsrMatrix::identity(4, 2.0), CsrMatrix::identity(4, 2.0)).value, 1.0, 1e-12);
}

TEST(OperatorNorm, OneDimensionalPencilAgainstDenseOracle) {
  const Mesh mesh = build_interval_mesh(4);
  const CsrMatrix m = assemble_mass(mesh);
  const CsrMatrix s = assemble_stiffness(mesh, {ScalarField::constant(1.0)}, ScalarField::constant(0.0));
  const auto ref = oracle::pencil_eigenvalues(rows_of(s), rows_of(m), 0.0, 1e4);
  EXPECT_NEAR(operator_norm_A(m, s).value, ref.front(), 1e-8 * ref.front());
}

TEST(OperatorNorm, SquareMeshAgainstDenseOracle) {
  const Mesh mesh = build_square_mesh(6);
  const CsrMatrix m = assemble_mass(mesh);
  const CsrMatrix s = assemble_stiffness(mesh, {parse_expression("x^2"), parse_expression("y^2")},
                                         parse_expression("pi^2*(1-2*x^2*y^2)"));
  const auto ref = oracle::pencil_eigenvalues(rows_of(s), rows_of(m), -1e3, 1e5);
  EXPECT_NEAR(operator_norm_A(m, s).value, ref.front(), 1e-8 * ref.front());
}

TEST(TimeStepAssumption, Arithmetic) {
  const auto a = check_time_step_assumption(1e-4, 5000.0);
  EXPECT_NEAR(a.tau_norm, 0.5, 1e-15);
  EXPECT_TRUE(a.satisfied);
  const auto b = check_time_step_assumption(1e-3, 2000.0);
  EXPECT_NEAR(b.tau_norm, 2.0, 1e-15);
  EXPECT_FALSE(b.satisfied);
  EXPECT_THROW(check_time_step_assumption(1e-3, 0.0), InvalidArgument);
}

TEST(ReferenceSpectrum, ClosedFormLimits) {
  const Vector u0{3.0, 4.0};
  EXPECT_NEAR(static_cast<double>(reference_lambda0(u0, 0.0, 0.1, 7)), 25.0 * 8, 1e-12);
  const double r = 1.0 - 0.1 * 2.0;
  EXPECT_NEAR(static_cast<double>(reference_lambda0(u0, 2.0, 0.1, 1)), 25.0 * (1 + r * r), 1e-12);
}

TEST(ReferenceSpectrum, ClosedFormMatchesExplicitConstruction) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1), tn(0.0, 0.99);
  std::uniform_int_distribution<int> len(1, 30), rows(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    Vector u0(static_cast<std::size_t>(rows(rng)));
    for (double& v : u0) v = u(rng);
    const double tau = 1e-3, norm_a = tn(rng) / tau;
    const int n = len(rng);
    const DenseMatrix ref = reference_matrix(u0, norm_a, tau, n);
    const GramSpectrum s = segment_spectrum(SnapshotBlock(ref));
    const double closed = static_cast<double>(reference_lambda0(u0, norm_a, tau, n));
    EXPECT_NEAR(s.eigenvalues[0], closed, 1e-10 * closed);
    for (std::size_t k = 1; k < s.eigenvalues.size(); ++k) EXPECT_LE(s.eigenvalues[k], 1e-12 * closed);
  }
}

TEST(Perturbation, ReferenceGramGivesZero) {
  const Vector u0{1.0, -2.0, 0.5};
  const double tau = 1e-3, norm_a = 300.0;
  const int n = 10;
  const DenseMatrix ref = reference_matrix(u0, norm_a, tau, n);
  GramSpectrum s = segment_spectrum(SnapshotBlock(ref));
  std::fill(s.eigenvalues.begin() + 1, s.eigenvalues.end(), 0.0);
  s.eigenvalues[0] = static_cast<double>(reference_lambda0(u0, norm_a, tau, n));
  const SegmentDiagnostics d = perturbation_quantity(s, reference_lambda0(u0, norm_a, tau, n), n, tau);
  EXPECT_NEAR(static_cast<double>(d.perturbation), 0.0, 1e-20);
  EXPECT_NEAR(d.bound_proxy, 1e4 * 1e-6, 1e-18);
}

TEST(Perturbation, DominatesTrailingSquares) {
  GramSpectrum s;
  s.eigenvalues = {10.0, 0.5, 0.25};
  const SegmentDiagnostics d = perturbation_quantity(s, 9.0L, 2, 0.1);
  EXPECT_NEAR(static_cast<double>(d.perturbation), 1.0 + 0.25 + 0.0625, 1e-15);
  EXPECT_GE(d.perturbation, d.trailing_squares);
  EXPECT_NEAR(d.trailing_sum, 0.75, 1e-15);
}

TEST(HoffmanWielandt, EqualityCases) {
  const DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{1.0, 2.0});
  const auto zero = hoffman_wielandt_check(a, DenseMatrix(2, 2));
  EXPECT_NEAR(zero.displacement, 0.0, 1e-12);
  EXPECT_NEAR(zero.frobenius_margin, 0.0, 1e-12);
  EXPECT_NEAR(zero.interval_margin, 0.0, 1e-12);
  const auto d = hoffman_wielandt_check(a, DenseMatrix::diagonal(std::vector<double>{0.1, -0.1}));
  EXPECT_NEAR(d.displacement, 0.02, 1e-12);
  EXPECT_NEAR(d.frobenius_squared, 0.02, 1e-12);
  EXPECT_NEAR(d.frobenius_margin, 0.0, 1e-12);
}

TEST(HoffmanWielandt, RandomPairs) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(2, 20);
  for (int c = 0; c < 100; ++c) {
    const auto n = static_cast<std::size_t>(size(rng));
    const DenseMatrix a = to_dense(oracle::random_symmetric(rng, n));
    const DenseMatrix e = to_dense(oracle::random_symmetric(rng, n));
    const auto r = hoffman_wielandt_check(a, e);
    EXPECT_TRUE(r.holds(1e-9)) << r.frobenius_margin << ' ' << r.interval_margin;
  }
}

TEST(HoffmanWielandt, RejectsAsymmetric) {
  DenseMatrix e(2, 2);
  e(0, 1) = 1.0;
  EXPECT_THROW(hoffman_wielandt_check(DenseMatrix::identity(2), e), InvalidArgument);
}

TEST(RelativeError, BasicValues) {
  const CsrMatrix m = CsrMatrix::identity(3);
  DenseMatrix u(3, 4);
  for (std::size_t i = 0; i < u.data().size(); ++i) u.data()[i] = 0.1 * (i + 1);
  EXPECT_EQ(relative_l2_error(u, u, m, 0.1), 0.0);
  EXPECT_NEAR(relative_l2_error(u, DenseMatrix(3, 4), m, 0.1), 1.0, 1e-15);
  EXPECT_THROW(relative_l2_error(DenseMatrix(3, 4), u, m, 0.1), DegenerateReference);
  EXPECT_THROW(relative_l2_error(u, DenseMatrix(3, 3), m, 0.1), InvalidArgument);
}

TEST(RelativeError, ColumnPermutationInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> un(-1, 1);
  const Mesh mesh = build_square_mesh(4);
  const CsrMatrix m = assemble_mass(mesh);
  DenseMatrix a(m.size(), 6), b(m.size(), 6);
  for (double& v : a.data()) v = un(rng);
  for (double& v : b.data()) v = un(rng);
  std::vector<std::size_t> perm{3, 1, 5, 0, 2, 4};
  DenseMatrix pa(m.size(), 6), pb(m.size(), 6);
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t i = 0; i < m.size(); ++i) {
      pa(i, k) = a(i, perm[k]);
      pb(i, k) = b(i, perm[k]);
    }
  EXPECT_NEAR(relative_l2_error(a, b, m, 0.01), relative_l2_error(pa, pb, m, 0.01), 1e-14);
}

TEST(SpectralReport, Heat1dFlags) {
  const FullOrderModel model(scenario("heat1d"));
  const SnapshotMatrix u = run_hifi(model);
  const double norm_a = operator_norm_A(model.mass(), model.stiffness()).value;
  const std::vector<GramSpectrum> spectra{segment_spectrum(SnapshotBlock(u.columns))};
  const SpectralReport rep = spectral_report(u, spectra, 1000, norm_a);
  ASSERT_EQ(rep.segments.size(), 1u);
  EXPECT_EQ(rep.time_step.satisfied, rep.time_step.tau_norm < 1.0);
  EXPECT_EQ(rep.segments[0].leading.size(), 5u);
  EXPECT_GE(rep.segments[0].perturbation, rep.segments[0].trailing_squares);
}
