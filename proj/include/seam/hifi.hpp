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

// Backward-Euler time stepping of the semi-discrete system
//   (M + tau S) U_n = M U_{n-1} + tau F_n.

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "seam/assembly.hpp"
#include "seam/dense.hpp"
#include "seam/problem.hpp"
#include "seam/sparse.hpp"

namespace seam {

/// Snapshot columns U_0..U_N (M x (N+1), column-major).
struct SnapshotMatrix {
  DenseMatrix columns;
  double tau = 0.0;
  std::string source;  // scenario name or file it came from

  std::size_t dofs() const { return columns.rows(); }
  std::size_t count() const { return columns.cols(); }
  std::span<const double> column(std::size_t n) const { return columns.column(n); }
};

/// Discretised problem: operators, initial data and the load vector at each step.
class FullOrderModel {
 public:
  explicit FullOrderModel(ProblemSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    disc_ = discretize(spec_);
    system_ = disc_.mass.plus_scaled(spec_.tau, disc_.stiffness);
    initial_ = interpolate_initial(disc_.mesh, spec_.u0);
    autonomous_ = !spec_.f.depends_on_time();
    if (autonomous_) constant_load_ = assemble_load(disc_.mesh, spec_.f, 0.0);
  }

  const ProblemSpec& spec() const { return spec_; }
  const Mesh& mesh() const { return disc_.mesh; }
  const CsrMatrix& mass() const { return disc_.mass; }
  const CsrMatrix& stiffness() const { return disc_.stiffness; }
  /// M + tau S
  const CsrMatrix& system() const { return system_; }
  const Vector& initial() const { return initial_; }
  double tau() const { return spec_.tau; }
  std::size_t dofs() const { return initial_.size(); }
  bool autonomous() const { return autonomous_; }

  /// F at t_n = n tau.
  Vector load(int step) const {
    if (autonomous_) return constant_load_;
    return assemble_load(disc_.mesh, spec_.f, step * spec_.tau);
  }

 private:
  ProblemSpec spec_;
  Discretization disc_;
  CsrMatrix system_;
  Vector initial_;
  bool autonomous_ = true;
  Vector constant_load_;
};

inline constexpr double kStepTolerance = 1e-12;

/// One step with a prebuilt system matrix M + tau S; CG is warm-started from `previous`.
inline Vector step_with_system(const CsrMatrix& system, const CsrMatrix& mass, std::span<const double> load,
                               std::span<const double> previous, double tau) {
  Vector rhs = mass * previous;
  axpy(tau, load, rhs);
  Vector next(previous.begin(), previous.end());
  conjugate_gradient(system, rhs, next, kStepTolerance);
  return next;
}

inline Vector backward_euler_step(const CsrMatrix& mass, const CsrMatrix& stiffness, std::span<const double> load,
                                  std::span<const double> previous, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (mass.size() != stiffness.size() || load.size() != mass.size() || previous.size() != mass.size())
    throw InvalidArgument("operator and vector sizes disagree");
  return step_with_system(mass.plus_scaled(tau, stiffness), mass, load, previous, tau);
}

/// Runs `steps` backward-Euler steps from the interpolated initial data.
inline SnapshotMatrix run_hifi(const FullOrderModel& model, int steps) {
  if (steps < 0) throw InvalidArgument("step count must be non-negative");
  SnapshotMatrix out;
  out.tau = model.tau();
  out.source = model.spec().name;
  out.columns = DenseMatrix(model.dofs(), static_cast<std::size_t>(steps) + 1);
  std::copy(model.initial().begin(), model.initial().end(), out.columns.column(0).begin());
  for (int n = 1; n <= steps; ++n) {
    const Vector load = model.load(n);
    const Vector next = step_with_system(model.system(), model.mass(), load, out.column(n - 1), model.tau());
    std::copy(next.begin(), next.end(), out.columns.column(n).begin());
  }
  return out;
}

/// Runs to the horizon T of the spec (N = T / tau).
inline SnapshotMatrix run_hifi(const FullOrderModel& model) { return run_hifi(model, model.spec().steps_for_horizon()); }

// ---------------------------------------------------------------------------
// Snapshot files: little-endian header {uint64 M, uint64 columns, float64 tau}
// followed by the column-major float64 payload.

namespace detail {

template <class T>
void write_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <class T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw IoError("truncated snapshot file");
  return value;
}

}  // namespace detail

inline void write_snapshots(const std::string& path, const DenseMatrix& columns, double tau) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  detail::write_le<std::uint64_t>(out, columns.rows());
  detail::write_le<std::uint64_t>(out, columns.cols());
  detail::write_le<double>(out, tau);
  out.write(reinterpret_cast<const char*>(columns.data().data()),
            static_cast<std::streamsize>(columns.data().size() * sizeof(double)));
  if (!out) throw IoError("failed writing " + path);
}

inline void write_snapshots(const std::string& path, const SnapshotMatrix& s) {
  write_snapshots(path, s.columns, s.tau);
}

inline SnapshotMatrix read_snapshots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const auto rows = detail::read_le<std::uint64_t>(in);
  const auto cols = detail::read_le<std::uint64_t>(in);
  SnapshotMatrix s;
  s.tau = detail::read_le<double>(in);
  s.source = path;
  if (rows == 0 || cols == 0 || rows > (1ull << 32) || cols > (1ull << 32))
    throw IoError("implausible snapshot header in " + path);
  s.columns = DenseMatrix(rows, cols);
  in.read(reinterpret_cast<char*>(s.columns.data().data()),
          static_cast<std::streamsize>(rows * cols * sizeof(double)));
  if (!in) throw IoError("truncated snapshot file " + path);
  return s;
}

/// CSV with one row per dof and one column per time index. Meant for small cases.
inline void write_snapshots_csv(const std::string& path, const DenseMatrix& columns, double tau) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  out << "dof";
  for (std::size_t n = 0; n < columns.cols(); ++n) out << ",t" << n * tau;
  out << '\n';
  for (std::size_t i = 0; i < columns.rows(); ++i) {
    out << i;
    for (std::size_t n = 0; n < columns.cols(); ++n) out << ',' << columns(i, n);
    out << '\n';
  }
}

}  // namespace seam
