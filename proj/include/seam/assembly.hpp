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

// Continuous piecewise-linear finite elements on interior nodes (homogeneous
// Dirichlet data). Variable coefficients are frozen at the element centroid.

#include <array>
#include <cmath>
#include <vector>

#include "seam/mesh.hpp"
#include "seam/problem.hpp"
#include "seam/sparse.hpp"

namespace seam {

namespace detail {

// Gradients of the barycentric coordinates of `cell`, grad[k][axis].
inline std::array<std::array<double, 3>, 4> barycentric_gradients(const Mesh& mesh, const Cell& cell) {
  const int d = mesh.dimension;
  // Rows of B are the edge vectors p_k - p_0; grad(lambda_k) solves B g = e_k.
  double b[3][3] = {};
  const Point& p0 = mesh.vertices[cell[0]];
  for (int k = 0; k < d; ++k)
    for (int a = 0; a < d; ++a) b[k][a] = mesh.vertices[cell[k + 1]][a] - p0[a];

  double inv[3][3] = {};
  if (d == 1) {
    inv[0][0] = 1.0 / b[0][0];
  } else if (d == 2) {
    const double det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    inv[0][0] = b[1][1] / det;
    inv[0][1] = -b[0][1] / det;
    inv[1][0] = -b[1][0] / det;
    inv[1][1] = b[0][0] / det;
  } else {
    const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    inv[0][0] = (b[1][1] * b[2][2] - b[1][2] * b[2][1]) / det;
    inv[0][1] = (b[0][2] * b[2][1] - b[0][1] * b[2][2]) / det;
    inv[0][2] = (b[0][1] * b[1][2] - b[0][2] * b[1][1]) / det;
    inv[1][0] = (b[1][2] * b[2][0] - b[1][0] * b[2][2]) / det;
    inv[1][1] = (b[0][0] * b[2][2] - b[0][2] * b[2][0]) / det;
    inv[1][2] = (b[0][2] * b[1][0] - b[0][0] * b[1][2]) / det;
    inv[2][0] = (b[1][0] * b[2][1] - b[1][1] * b[2][0]) / det;
    inv[2][1] = (b[0][1] * b[2][0] - b[0][0] * b[2][1]) / det;
    inv[2][2] = (b[0][0] * b[1][1] - b[0][1] * b[1][0]) / det;
  }
  // grad(lambda_k)[axis] = inv[axis][k-1]
  std::array<std::array<double, 3>, 4> g{};
  for (int k = 1; k <= d; ++k)
    for (int a = 0; a < d; ++a) g[k][a] = inv[a][k - 1];
  for (int a = 0; a < d; ++a) {
    double s = 0.0;
    for (int k = 1; k <= d; ++k) s += g[k][a];
    g[0][a] = -s;
  }
  return g;
}

// Exact P1 mass entry factor: int phi_a phi_b = |T| (1 + delta_ab) d! / (d+2)!
inline double mass_factor(int d, bool diagonal) {
  return (diagonal ? 2.0 : 1.0) * factorial(d) / factorial(d + 2);
}

inline CsrMatrix interior_pattern(const Mesh& mesh) {
  std::vector<std::vector<int>> rows(mesh.interior_count());
  const int nv = mesh.vertices_per_cell();
  for (const Cell& cell : mesh.cells)
    for (int a = 0; a < nv; ++a) {
      const int ia = mesh.interior_index[cell[a]];
      if (ia < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int ib = mesh.interior_index[cell[b]];
        if (ib >= 0) rows[ia].push_back(ib);
      }
    }
  return CsrMatrix::from_pattern(rows);
}

inline EvalPoint at(const Point& p, double t = 0.0) { return {p[0], p[1], p[2], t}; }

}  // namespace detail

inline CsrMatrix assemble_mass(const Mesh& mesh) {
  CsrMatrix mass = detail::interior_pattern(mesh);
  const int d = mesh.dimension;
  const int nv = mesh.vertices_per_cell();
  for (const Cell& cell : mesh.cells) {
    const double vol = cell_volume(mesh, cell);
    for (int a = 0; a < nv; ++a) {
      const int ia = mesh.interior_index[cell[a]];
      if (ia < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int ib = mesh.interior_index[cell[b]];
        if (ib >= 0) mass.add(ia, ib, vol * detail::mass_factor(d, a == b));
      }
    }
  }
  return mass;
}

/// Matrix of a(u, v) = (alpha grad u, grad v) + (c u, v) with diagonal alpha.
inline CsrMatrix assemble_stiffness(const Mesh& mesh, const std::vector<ScalarField>& alpha_diag,
                                    const ScalarField& c) {
  const int d = mesh.dimension;
  if (static_cast<int>(alpha_diag.size()) != d)
    throw InvalidArgument("alpha needs exactly one expression per axis");
  CsrMatrix stiffness = detail::interior_pattern(mesh);
  const int nv = mesh.vertices_per_cell();
  for (const Cell& cell : mesh.cells) {
    const double vol = cell_volume(mesh, cell);
    const EvalPoint xc = detail::at(cell_centroid(mesh, cell));
    std::array<double, 3> alpha{};
    for (int a = 0; a < d; ++a) alpha[a] = alpha_diag[a](xc);
    const double reaction = c(xc);
    const auto grad = detail::barycentric_gradients(mesh, cell);
    for (int a = 0; a < nv; ++a) {
      const int ia = mesh.interior_index[cell[a]];
      if (ia < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int ib = mesh.interior_index[cell[b]];
        if (ib < 0) continue;
        double diffusion = 0.0;
        for (int k = 0; k < d; ++k) diffusion += alpha[k] * grad[a][k] * grad[b][k];
        stiffness.add(ia, ib, vol * diffusion + reaction * vol * detail::mass_factor(d, a == b));
      }
    }
  }
  return stiffness;
}

/// F_k = sum_T f(x_T, t) |T| / (d+1) over cells touching interior node k.
inline Vector assemble_load(const Mesh& mesh, const ScalarField& f, double t) {
  Vector load(mesh.interior_count(), 0.0);
  if (f.is_zero_constant()) return load;
  const int nv = mesh.vertices_per_cell();
  for (const Cell& cell : mesh.cells) {
    const double vol = cell_volume(mesh, cell);
    const double fc = f(detail::at(cell_centroid(mesh, cell), t));
    for (int a = 0; a < nv; ++a) {
      const int ia = mesh.interior_index[cell[a]];
      if (ia >= 0) load[ia] += fc * vol / nv;
    }
  }
  return load;
}

/// Nodal interpolant of u0 on the interior nodes.
inline Vector interpolate_initial(const Mesh& mesh, const ScalarField& u0) {
  Vector u(mesh.interior_count());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = u0(detail::at(mesh.vertices[mesh.interior_vertex[k]]));
  return u;
}

/// Mesh plus the time-independent operators of a problem.
struct Discretization {
  Mesh mesh;
  CsrMatrix mass;
  CsrMatrix stiffness;
};

inline Discretization discretize(const ProblemSpec& spec) {
  Discretization disc;
  disc.mesh = build_mesh(spec.dimension, spec.mesh_divisions);
  disc.mass = assemble_mass(disc.mesh);
  disc.stiffness = assemble_stiffness(disc.mesh, spec.alpha_diag, spec.c);
  return disc;
}

}  // namespace seam
