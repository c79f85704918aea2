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

// Uniform simplicial meshes of the unit interval, square and cube.

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "seam/error.hpp"

namespace seam {

using Point = std::array<double, 3>;  // unused trailing coordinates are zero
using Cell = std::array<int, 4>;      // first dimension+1 entries are used

struct Mesh {
  int dimension = 1;
  int divisions = 0;  // cells per axis
  std::vector<Point> vertices;
  std::vector<Cell> cells;
  std::vector<bool> boundary;       // per vertex
  std::vector<int> interior_index;  // per vertex, -1 on the boundary
  std::vector<int> interior_vertex; // inverse map, length M

  int vertices_per_cell() const { return dimension + 1; }
  std::size_t interior_count() const { return interior_vertex.size(); }
};

namespace detail {

inline double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Signed volume: det of edge vectors / d!
inline double signed_volume(const Mesh& mesh, const Cell& cell) {
  const int d = mesh.dimension;
  const Point& p0 = mesh.vertices[cell[0]];
  double e[3][3] = {};
  for (int k = 0; k < d; ++k)
    for (int a = 0; a < d; ++a) e[k][a] = mesh.vertices[cell[k + 1]][a] - p0[a];
  double det = 0.0;
  if (d == 1) {
    det = e[0][0];
  } else if (d == 2) {
    det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
  } else {
    det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
          e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
          e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
  }
  return det / factorial(d);
}

inline void finalize(Mesh& mesh) {
  const int d = mesh.dimension;
  for (Cell& c : mesh.cells)
    if (signed_volume(mesh, c) < 0.0) std::swap(c[0], c[1]);

  const std::size_t nv = mesh.vertices.size();
  mesh.boundary.assign(nv, false);
  mesh.interior_index.assign(nv, -1);
  mesh.interior_vertex.clear();
  // Vertices are generated lexicographically (x fastest), so a single pass
  // yields the lexicographic interior order.
  for (std::size_t v = 0; v < nv; ++v) {
    bool on_boundary = false;
    for (int a = 0; a < d; ++a) {
      const double x = mesh.vertices[v][a];
      if (x == 0.0 || x == 1.0) on_boundary = true;
    }
    mesh.boundary[v] = on_boundary;
    if (!on_boundary) {
      mesh.interior_index[v] = static_cast<int>(mesh.interior_vertex.size());
      mesh.interior_vertex.push_back(static_cast<int>(v));
    }
  }
}

inline void require_divisions(int m) {
  if (m < 2)
    throw InvalidArgument("mesh needs at least 2 divisions per axis to have an interior node, got " +
                          std::to_string(m));
}

inline double grid_coord(int i, int m) { return i == m ? 1.0 : static_cast<double>(i) / m; }

}  // namespace detail

inline Mesh build_interval_mesh(int m) {
  detail::require_divisions(m);
  Mesh mesh;
  mesh.dimension = 1;
  mesh.divisions = m;
  for (int i = 0; i <= m; ++i) mesh.vertices.push_back({detail::grid_coord(i, m), 0.0, 0.0});
  for (int i = 0; i < m; ++i) mesh.cells.push_back({i, i + 1, 0, 0});
  detail::finalize(mesh);
  return mesh;
}

/// Each grid square is split along its lower-left to upper-right diagonal.
inline Mesh build_square_mesh(int m) {
  detail::require_divisions(m);
  Mesh mesh;
  mesh.dimension = 2;
  mesh.divisions = m;
  const auto id = [m](int i, int j) { return j * (m + 1) + i; };
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= m; ++i)
      mesh.vertices.push_back({detail::grid_coord(i, m), detail::grid_coord(j, m), 0.0});
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      mesh.cells.push_back({v00, v10, v11, 0});
      mesh.cells.push_back({v00, v11, v01, 0});
    }
  detail::finalize(mesh);
  return mesh;
}

/// Kuhn (Freudenthal) split: one tetrahedron per axis permutation, all sharing
/// the cube's main diagonal.
inline Mesh build_cube_mesh(int m) {
  detail::require_divisions(m);
  Mesh mesh;
  mesh.dimension = 3;
  mesh.divisions = m;
  const auto id = [m](int i, int j, int k) { return (k * (m + 1) + j) * (m + 1) + i; };
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= m; ++i)
        mesh.vertices.push_back(
            {detail::grid_coord(i, m), detail::grid_coord(j, m), detail::grid_coord(k, m)});
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        for (const auto& p : perms) {
          std::array<int, 3> c{i, j, k};
          Cell cell{};
          cell[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[p[s]];
            cell[s + 1] = id(c[0], c[1], c[2]);
          }
          mesh.cells.push_back(cell);
        }
  detail::finalize(mesh);
  return mesh;
}

inline Mesh build_mesh(int dimension, int m) {
  switch (dimension) {
    case 1: return build_interval_mesh(m);
    case 2: return build_square_mesh(m);
    case 3: return build_cube_mesh(m);
    default: throw InvalidArgument("dimension must be 1, 2 or 3");
  }
}

inline double cell_volume(const Mesh& mesh, const Cell& cell) {
  return detail::signed_volume(mesh, cell);
}

inline Point cell_centroid(const Mesh& mesh, const Cell& cell) {
  Point c{0.0, 0.0, 0.0};
  const int nv = mesh.vertices_per_cell();
  for (int k = 0; k < nv; ++k)
    for (int a = 0; a < 3; ++a) c[a] += mesh.vertices[cell[k]][a];
  for (double& x : c) x /= nv;
  return c;
}

inline std::vector<Point> interior_nodes(const Mesh& mesh) {
  std::vector<Point> out;
  out.reserve(mesh.interior_count());
  for (int v : mesh.interior_vertex) out.push_back(mesh.vertices[v]);
  return out;
}

/// CSV dump with a `vertices` and a `cells` section.
inline void write_mesh_csv(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  static const char* axis[] = {"x", "y", "z"};
  out << "vertices\nid";
  for (int a = 0; a < mesh.dimension; ++a) out << ',' << axis[a];
  out << ",boundary\n";
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    out << v;
    for (int a = 0; a < mesh.dimension; ++a) out << ',' << mesh.vertices[v][a];
    out << ',' << (mesh.boundary[v] ? 1 : 0) << '\n';
  }
  out << "cells\nid";
  for (int k = 0; k <= mesh.dimension; ++k) out << ",v" << k;
  out << '\n';
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    out << c;
    for (int k = 0; k <= mesh.dimension; ++k) out << ',' << mesh.cells[c][k];
    out << '\n';
  }
}

}  // namespace seam
