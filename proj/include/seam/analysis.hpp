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

// Spectral diagnostics for snapshot Gram matrices: the operator norm of
// M^{-1/2} S M^{-1/2}, the rank-one reference spectrum, the perturbation
// quantity it bounds, Hoffman-Wielandt checks and the space-time L2 error.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "seam/dense.hpp"
#include "seam/error.hpp"
#include "seam/pod.hpp"
#include "seam/seam.hpp"
#include "seam/sparse.hpp"

namespace seam {

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
};

/// Largest eigenvalue of the pencil S v = lambda M v, i.e. ||M^{-1/2} S M^{-1/2}||_2.
/// Power iteration on M^{-1} S; every application is one CG solve with M.
/// Stops once successive Rayleigh quotients agree to `tol` relative.
inline PowerIterationResult operator_norm_A(const CsrMatrix& mass, const CsrMatrix& stiffness, double tol = 1e-10,
                                            int max_iterations = 10000) {
  const std::size_t n = mass.size();
  if (stiffness.size() != n) throw InvalidArgument("operator sizes disagree");
  std::mt19937_64 rng(20240613);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector x(n);
  for (double& v : x) v = uni(rng);
  const auto normalise = [&](Vector& v) {
    const double len = std::sqrt(mass.quadratic_form(v));
    for (double& e : v) e /= len;
  };
  normalise(x);

  Vector sx(n), z(n, 0.0);
  double previous = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    stiffness.multiply(x, sx);
    const double rayleigh = dot(x, sx);  // x is M-normalised
    if (it > 1 && std::abs(rayleigh - previous) <= tol * std::abs(rayleigh)) return {rayleigh, it};
    previous = rayleigh;
    std::fill(z.begin(), z.end(), 0.0);
    conjugate_gradient(mass, sx, z, 1e-13);
    if (norm2(z) == 0.0) return {0.0, it};  // S annihilates x
    x.swap(z);
    normalise(x);
  }
  throw SolverFailure("power iteration stagnated", std::abs(previous));
}

struct TimeStepCheck {
  double tau_norm = 0.0;   // tau ||A||_2
  bool satisfied = false;  // tau ||A||_2 < 1
};

inline TimeStepCheck check_time_step_assumption(double tau, double norm_a) {
  if (!(norm_a > 0.0)) throw InvalidArgument("operator norm must be positive");
  const double p = tau * norm_a;
  return {p, p < 1.0};
}

/// lambda_0 of the rank-one reference Gram matrix built from
/// (1 - tau ||A||)^k U0, k = 0..n: ||U0||^2 sum_k (1 - tau ||A||)^{2k}.
/// Extended precision, since the ratio exceeds one in magnitude whenever the
/// step-size assumption fails.
inline long double reference_lambda0(std::span<const double> u0, double norm_a, double tau, int n) {
  const long double r = 1.0L - static_cast<long double>(tau) * norm_a;
  const long double r2 = r * r;
  long double sum = 0.0L, term = 1.0L;
  for (int k = 0; k <= n; ++k) {
    sum += term;
    term *= r2;
  }
  long double u2 = 0.0L;
  for (double v : u0) u2 += static_cast<long double>(v) * v;
  return u2 * sum;
}

/// Explicit reference columns (1 - tau ||A||)^k U0, k = 0..n.
inline DenseMatrix reference_matrix(std::span<const double> u0, double norm_a, double tau, int n) {
  DenseMatrix out(u0.size(), static_cast<std::size_t>(n) + 1);
  const double r = 1.0 - tau * norm_a;
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) {
    auto col = out.column(k);
    for (std::size_t i = 0; i < u0.size(); ++i) col[i] = scale * u0[i];
    scale *= r;
  }
  return out;
}

struct SegmentDiagnostics {
  int segment = 0;
  std::vector<double> leading;   // first few eigenvalues of X
  double trailing_sum = 0.0;     // sum_{k>=1} lambda_k
  double trailing_squares = 0.0; // sum_{k>=1} lambda_k^2
  long double reference = 0.0L;  // lambda_0 of the reference Gram matrix
  long double perturbation = 0.0L;
  double bound_proxy = 0.0;      // n^4 tau^2
  long double ratio = 0.0L;      // perturbation / bound_proxy

  double log10_perturbation() const {
    return perturbation > 0.0L ? static_cast<double>(std::log10(perturbation)) : -INFINITY;
  }
};

/// P = (lambda_0(X) - lambda_0(ref))^2 + sum_{k>=1} lambda_k(X)^2 next to n^4 tau^2.
inline SegmentDiagnostics perturbation_quantity(const GramSpectrum& spectrum, long double reference_lambda, int n,
                                                double tau, std::size_t head = 5) {
  SegmentDiagnostics d;
  d.segment = spectrum.segment;
  const auto& ev = spectrum.eigenvalues;
  d.leading.assign(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(std::min(head, ev.size())));
  for (std::size_t k = 1; k < ev.size(); ++k) {
    d.trailing_sum += ev[k];
    d.trailing_squares += ev[k] * ev[k];
  }
  d.reference = reference_lambda;
  const long double gap = (ev.empty() ? 0.0L : static_cast<long double>(ev[0])) - reference_lambda;
  d.perturbation = gap * gap + d.trailing_squares;
  d.bound_proxy = std::pow(static_cast<double>(n), 4) * tau * tau;
  d.ratio = d.bound_proxy > 0.0 ? d.perturbation / d.bound_proxy : 0.0L;
  return d;
}

struct HoffmanWielandtRecord {
  double displacement = 0.0;      // sum_k (lambda_k(A+E) - lambda_k(A))^2
  double frobenius_squared = 0.0; // ||E||_F^2
  double frobenius_margin = 0.0;  // frobenius_squared - displacement (>= 0)
  double interval_margin = 0.0;   // min_k min(d_k - lambda_min(E), lambda_max(E) - d_k) (>= 0)
  bool holds(double slack) const { return frobenius_margin >= -slack && interval_margin >= -slack; }
};

/// Evaluates both Hoffman-Wielandt eigenvalue perturbation statements for
/// symmetric A and E.
inline HoffmanWielandtRecord hoffman_wielandt_check(const DenseMatrix& a, const DenseMatrix& e) {
  if (a.rows() != e.rows() || a.cols() != e.cols()) throw InvalidArgument("matrices differ in size");
  if (a.asymmetry() > 1e-12 || e.asymmetry() > 1e-12) throw InvalidArgument("matrices must be symmetric");
  const std::vector<double> la = symmetric_eigenvalues(a);
  const std::vector<double> lae = symmetric_eigenvalues(a + e);
  const std::vector<double> le = symmetric_eigenvalues(e);
  HoffmanWielandtRecord r;
  r.frobenius_squared = e.frobenius_norm() * e.frobenius_norm();
  r.interval_margin = INFINITY;
  for (std::size_t k = 0; k < la.size(); ++k) {
    const double d = lae[k] - la[k];
    r.displacement += d * d;
    r.interval_margin = std::min({r.interval_margin, d - le.back(), le.front() - d});
  }
  if (la.empty()) r.interval_margin = 0.0;
  r.frobenius_margin = r.frobenius_squared - r.displacement;
  return r;
}

/// Space-time relative L2 error: mass-matrix inner product in space,
/// rectangle rule over all time indices.
inline double relative_l2_error(const DenseMatrix& reference, const DenseMatrix& approx, const CsrMatrix& mass,
                                double tau) {
  if (reference.rows() != approx.rows() || reference.cols() != approx.cols() || mass.size() != reference.rows())
    throw InvalidArgument("dimensions do not match");
  double num = 0.0, den = 0.0;
  Vector diff(reference.rows());
  for (std::size_t n = 0; n < reference.cols(); ++n) {
    const auto u = reference.column(n);
    const auto v = approx.column(n);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = u[i] - v[i];
    num += tau * mass.quadratic_form(diff);
    den += tau * mass.quadratic_form(u);
  }
  if (!(den > 0.0)) throw DegenerateReference("reference solution is identically zero");
  return std::sqrt(num / den);
}

inline double relative_l2_error(const SnapshotMatrix& hifi, const SeamSolution& seam, const CsrMatrix& mass) {
  if (seam.count() != hifi.count()) throw InvalidArgument("column counts differ");
  return relative_l2_error(hifi.columns, seam.reconstruct(), mass, hifi.tau);
}

/// Per-time-index errors ||U_n - V_n||_M and the relative value.
struct TimeError {
  double t = 0.0;
  double absolute = 0.0;
  double relative = 0.0;
};

inline std::vector<TimeError> error_over_time(const DenseMatrix& reference, const DenseMatrix& approx,
                                              const CsrMatrix& mass, double tau) {
  std::vector<TimeError> out;
  Vector diff(reference.rows());
  for (std::size_t n = 0; n < reference.cols(); ++n) {
    const auto u = reference.column(n);
    const auto v = approx.column(n);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = u[i] - v[i];
    const double e = std::sqrt(std::max(0.0, mass.quadratic_form(diff)));
    const double r = std::sqrt(std::max(0.0, mass.quadratic_form(u)));
    out.push_back({n * tau, e, r > 0.0 ? e / r : 0.0});
  }
  return out;
}

struct SpectralReport {
  int n = 0;
  double tau = 0.0;
  double norm_a = 0.0;
  TimeStepCheck time_step;
  std::vector<SegmentDiagnostics> segments;
};

/// Full report for snapshot blocks of n+1 columns with precomputed spectra.
inline SpectralReport spectral_report(const SnapshotMatrix& snapshots, const std::vector<GramSpectrum>& spectra, int n,
                                      double norm_a) {
  SpectralReport rep;
  rep.n = n;
  rep.tau = snapshots.tau;
  rep.norm_a = norm_a;
  rep.time_step = check_time_step_assumption(snapshots.tau, norm_a);
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    const auto u0 = snapshots.column(k * width);
    const long double ref = reference_lambda0(u0, norm_a, snapshots.tau, n);
    rep.segments.push_back(perturbation_quantity(spectra[k], ref, n, snapshots.tau));
  }
  return rep;
}

}  // namespace seam
