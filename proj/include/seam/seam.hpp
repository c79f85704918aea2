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

// Single-eigenvalue reduced model: one POD mode per time segment and a scalar
// backward-Euler recurrence for its coefficient.

#include <functional>
#include <fstream>
#include <string>
#include <vector>

#include "seam/hifi.hpp"
#include "seam/parallel.hpp"
#include "seam/pod.hpp"

namespace seam {

/// Load vector at a global time index.
using LoadFunction = std::function<Vector(int step)>;

inline LoadFunction constant_load(Vector f) {
  return [f = std::move(f)](int) { return f; };
}

inline LoadFunction model_load(const FullOrderModel& model) {
  return [&model](int step) { return model.load(step); };
}

struct SeamModel {
  PodBasis basis;
  double a = 0.0;  // beta^T (M + tau S) beta
  double m = 0.0;  // beta^T M beta
  std::vector<double> reduced_load;  // g_k = beta^T F at the segment's k-th step, k = 0..n
  double alpha0 = 0.0;               // beta^T (first column of the segment)
  double tau = 0.0;
  int first_step = 0;                // global index of the segment's first column
};

/// Offline phase for one block: POD basis, reduced operators and reduced loads.
inline SeamModel seam_offline(const SnapshotBlock& block, const CsrMatrix& mass, const CsrMatrix& stiffness,
                              const LoadFunction& load, double tau, const GramSpectrum* spectrum = nullptr) {
  if (mass.size() != block.rows() || stiffness.size() != block.rows())
    throw InvalidArgument("operator size does not match the snapshot rows");
  GramSpectrum own;
  if (!spectrum) {
    own = segment_spectrum(block);
    spectrum = &own;
  }
  SeamModel model;
  model.basis = pod_basis(block, *spectrum);
  const Vector& beta = model.basis.beta;
  model.m = mass.quadratic_form(beta);
  model.a = model.m + tau * stiffness.quadratic_form(beta);
  model.tau = tau;
  model.first_step = static_cast<int>(block.first());
  model.alpha0 = dot(beta, block.column(0));
  model.reduced_load.assign(block.count(), 0.0);
  for (std::size_t k = 1; k < block.count(); ++k)
    model.reduced_load[k] = dot(beta, load(model.first_step + static_cast<int>(k)));
  if (!(model.a > 0.0) || !(model.m > 0.0)) throw Error("reduced operators are not positive");
  return model;
}

inline SeamModel seam_offline(const SnapshotBlock& block, const CsrMatrix& mass, const CsrMatrix& stiffness,
                              const Vector& load, double tau) {
  return seam_offline(block, mass, stiffness, constant_load(load), tau);
}

/// alpha_k = (m alpha_{k-1} + tau g_k) / a, k = 1..steps. Returns alpha_0..alpha_steps.
inline std::vector<double> seam_online(const SeamModel& model, int steps) {
  if (steps < 0 || static_cast<std::size_t>(steps) >= model.reduced_load.size())
    throw InvalidArgument("more online steps than reduced load entries");
  std::vector<double> alpha(static_cast<std::size_t>(steps) + 1);
  alpha[0] = model.alpha0;
  for (int k = 1; k <= steps; ++k) alpha[k] = (model.m * alpha[k - 1] + model.tau * model.reduced_load[k]) / model.a;
  return alpha;
}

struct SeamSegment {
  SeamModel model;
  std::vector<double> alpha;  // alpha_{k,0..n}
};

struct SeamSolution {
  std::vector<SeamSegment> segments;
  std::size_t dofs = 0;
  std::size_t columns_per_segment = 0;
  double tau = 0.0;

  std::size_t count() const { return segments.size() * columns_per_segment; }

  /// Column at global time index n: alpha beta.
  Vector column(std::size_t n) const {
    const SeamSegment& s = segments.at(n / columns_per_segment);
    const double a = s.alpha[n % columns_per_segment];
    Vector out(s.model.basis.beta);
    for (double& v : out) v *= a;
    return out;
  }

  DenseMatrix reconstruct() const {
    DenseMatrix out(dofs, count());
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const SeamSegment& s = segments[k];
      for (std::size_t j = 0; j < columns_per_segment; ++j) {
        auto col = out.column(k * columns_per_segment + j);
        for (std::size_t i = 0; i < dofs; ++i) col[i] = s.alpha[j] * s.model.basis.beta[i];
      }
    }
    return out;
  }
};

/// Throws DivisibilityError unless `columns` splits into blocks of n+1.
inline std::size_t segment_total(std::size_t columns, int n) {
  if (n < 1) throw InvalidArgument("segment length n must be at least 1");
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  if (columns % width != 0)
    throw DivisibilityError(std::to_string(columns) + " snapshot columns are not a multiple of n+1 = " +
                            std::to_string(width));
  return columns / width;
}

/// Segmented SEAM: an independent rank-1 model per block of n+1 columns.
/// `spectra`, when given, holds the precomputed Gram spectrum of every block.
inline SeamSolution run_parallel_seam(const SnapshotMatrix& snapshots, int n, const CsrMatrix& mass,
                                      const CsrMatrix& stiffness, const LoadFunction& load, unsigned threads = 1,
                                      const std::vector<GramSpectrum>* spectra = nullptr) {
  const std::size_t segments = segment_total(snapshots.count(), n);
  if (spectra && spectra->size() != segments) throw InvalidArgument("one spectrum per segment is required");
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  SeamSolution sol;
  sol.dofs = snapshots.dofs();
  sol.columns_per_segment = width;
  sol.tau = snapshots.tau;
  sol.segments.resize(segments);
  parallel_for(segments, threads, [&](std::size_t k) {
    const SnapshotBlock block(snapshots.columns, k * width, width);
    SeamSegment& seg = sol.segments[k];
    seg.model = seam_offline(block, mass, stiffness, load, snapshots.tau, spectra ? &(*spectra)[k] : nullptr);
    seg.alpha = seam_online(seg.model, n);
  });
  return sol;
}

/// Per-segment metadata (lambda0, a, m, alpha0) next to seam.bin.
inline void write_seam_metadata_csv(const std::string& path, const SeamSolution& sol) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  out << "segment,first_step,lambda0,a,m,alpha0\n";
  for (std::size_t k = 0; k < sol.segments.size(); ++k) {
    const SeamModel& m = sol.segments[k].model;
    out << k << ',' << m.first_step << ',' << m.basis.lambda0 << ',' << m.a << ',' << m.m << ',' << m.alpha0 << '\n';
  }
}

}  // namespace seam
