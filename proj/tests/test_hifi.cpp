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

#include "seam/hifi.hpp"

using namespace seam;

namespace {

ProblemSpec single_node(double tau) {
  ProblemSpec s = scenario("heat1d");
  s.mesh_divisions = 2;
  s.tau = tau;
  s.T = 1000 * tau;
  set_field(s.u0, s.u0_text, "1");
  return s;
}

}  // namespace

// Single interior node: M = 2h/3, S = 2/h, so U_n = (M / (M + tau S))^n U_0.
TEST(Hifi, SingleNodeGeometricRecurrence) {
  const double tau = 1e-3;
  const FullOrderModel model(single_node(tau));
  ASSERT_EQ(model.dofs(), 1u);
  EXPECT_NEAR(model.mass().at(0, 0), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(model.stiffness().at(0, 0), 4.0, 1e-15);
  const SnapshotMatrix u = run_hifi(model, 1000);
  const double ratio = (1.0 / 3.0) / (1.0 / 3.0 + 4.0 * tau);
  double expected = 1.0;
  for (int n = 0; n <= 1000; ++n) {
    EXPECT_NEAR(u.column(n)[0], expected, 1e-12 * std::abs(expected)) << "step " << n;
    expected *= ratio;
  }
}

TEST(Hifi, ZeroDataStaysZero) {
  const FullOrderModel model(scenario("heat1d"));
  const Vector z(model.dofs(), 0.0);
  for (double v : backward_euler_step(model.mass(), model.stiffness(), z, z, 1e-4)) EXPECT_EQ(v, 0.0);

  ProblemSpec s = scenario("s1");
  s.mesh_divisions = 6;
  set_field(s.u0, s.u0_text, "0");
  const SnapshotMatrix u = run_hifi(FullOrderModel(s), 20);
  for (std::size_t n = 0; n < u.count(); ++n)
    for (double v : u.column(n)) EXPECT_EQ(v, 0.0);
}

TEST(Hifi, Heat1dShapeEnergyDecayAndResiduals) {
  const FullOrderModel model(scenario("heat1d"));
  const SnapshotMatrix u = run_hifi(model);
  EXPECT_EQ(u.dofs(), 98u);
  EXPECT_EQ(u.count(), 1001u);
  const Vector u0 = model.initial();
  for (std::size_t i = 0; i < u0.size(); ++i) EXPECT_EQ(u.column(0)[i], u0[i]);
  double prev = model.mass().quadratic_form(u.column(0));
  for (std::size_t n = 1; n < u.count(); ++n) {
    const double e = model.mass().quadratic_form(u.column(n));
    EXPECT_LE(e, prev);
    prev = e;
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pick(1, 1000);
  const Vector f = model.load(0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = pick(rng);
    Vector rhs = model.mass() * u.column(n - 1);
    axpy(model.tau(), f, rhs);
    Vector r = model.system() * u.column(n);
    axpy(-1.0, rhs, r);
    EXPECT_LE(norm2(r), 1e-10 * norm2(rhs));
  }
}

TEST(Hifi, ResidualWithSourceTerm) {
  ProblemSpec s = scenario("s2", "10");
  s.mesh_divisions = 10;
  const FullOrderModel model(s);
  const SnapshotMatrix u = run_hifi(model, 50);
  for (int n : {1, 7, 33, 50}) {
    Vector rhs = model.mass() * u.column(n - 1);
    axpy(model.tau(), model.load(n), rhs);
    Vector r = model.system() * u.column(n);
    axpy(-1.0, rhs, r);
    EXPECT_LE(norm2(r), 1e-10 * norm2(rhs));
  }
}

TEST(Hifi, TimeDependentLoadIsReassembled) {
  ProblemSpec s = scenario("s1");
  s.mesh_divisions = 4;
  set_field(s.f, s.f_text, "t");
  const FullOrderModel model(s);
  EXPECT_FALSE(model.autonomous());
  EXPECT_NEAR(model.load(10)[0] / model.load(5)[0], 2.0, 1e-14);
}

TEST(Hifi, Deterministic) {
  ProblemSpec s = scenario("s2", "xy");
  s.mesh_divisions = 8;
  const SnapshotMatrix a = run_hifi(FullOrderModel(s), 30);
  const SnapshotMatrix b = run_hifi(FullOrderModel(s), 30);
  for (std::size_t n = 0; n < a.count(); ++n)
    for (std::size_t i = 0; i < a.dofs(); ++i) ASSERT_EQ(a.column(n)[i], b.column(n)[i]);
}

TEST(Hifi, SnapshotFileRoundTrip) {
  ProblemSpec s = scenario("s1");
  s.mesh_divisions = 5;
  const SnapshotMatrix a = run_hifi(FullOrderModel(s), 12);
  const std::string path = ::testing::TempDir() + "snap.bin";
  write_snapshots(path, a);
  const SnapshotMatrix b = read_snapshots(path);
  EXPECT_EQ(b.tau, a.tau);
  ASSERT_EQ(b.dofs(), a.dofs());
  ASSERT_EQ(b.count(), a.count());
  for (std::size_t n = 0; n < a.count(); ++n)
    for (std::size_t i = 0; i < a.dofs(); ++i) ASSERT_EQ(a.column(n)[i], b.column(n)[i]);
  EXPECT_THROW(read_snapshots(::testing::TempDir() + "missing.bin"), IoError);
}

TEST(Hifi, RejectsBadInputs) {
  const FullOrderModel model(scenario("heat1d"));
  const Vector z(model.dofs(), 0.0);
  EXPECT_THROW(backward_euler_step(model.mass(), model.stiffness(), z, z, 0.0), InvalidArgument);
  EXPECT_THROW(backward_euler_step(model.mass(), model.stiffness(), Vector(3), z, 1e-4), InvalidArgument);
  ProblemSpec s = scenario("heat1d");
  s.tau = -1.0;
  EXPECT_THROW(FullOrderModel{s}, InvalidArgument);
}
