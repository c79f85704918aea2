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

// Orchestration behind the command-line tool: full-order solve, POD, SEAM,
// diagnostics, file output and timing.

#include <sys/utsname.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "seam/analysis.hpp"
#include "seam/config.hpp"
#include "seam/hifi.hpp"
#include "seam/pod.hpp"
#include "seam/seam.hpp"

namespace seam {

inline constexpr int kSummarySchemaVersion = 1;
inline constexpr std::size_t kEigenvaluesPerSegment = 5;

struct BenchResult {
  std::vector<double> hifi_samples;
  std::vector<double> online_samples;
  double hifi_median = 0.0;
  double online_median = 0.0;
  double offline_seconds = 0.0;
  double speedup = 0.0;
};

struct HwSelftestResult {
  int cases = 0;
  int passed = 0;
  double worst_frobenius_margin = INFINITY;
  double worst_interval_margin = INFINITY;
};

struct RunSummary {
  std::string scenario;
  Mode mode = Mode::ParallelSeam;
  int dimension = 0;
  int mesh_divisions = 0;
  std::size_t dofs = 0;
  int reduced_dofs = 1;
  std::string reduction;  // "M:1"
  double tau = 0.0;
  double horizon = 0.0;   // N tau actually simulated
  int steps = 0;          // N
  int n = 0;              // columns per segment minus one
  int segments = 0;       // number of segments analysed
  double hifi_seconds = 0.0;
  double seam_offline_seconds = 0.0;
  double seam_online_seconds = 0.0;
  std::optional<double> seam_error;
  std::vector<double> lambda0;              // per segment
  std::vector<std::vector<double>> leading; // first eigenvalues per segment
  std::optional<SpectralReport> report;
  std::optional<BenchResult> bench;
  std::optional<HwSelftestResult> hw;
  std::vector<std::string> warnings;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline nlohmann::json long_double_json(long double v) {
  const double d = static_cast<double>(v);
  return std::isfinite(d) ? nlohmann::json(d) : nlohmann::json(nullptr);
}

inline nlohmann::json machine_fingerprint() {
  nlohmann::json m;
  utsname u{};
  if (uname(&u) == 0) {
    m["system"] = u.sysname;
    m["release"] = u.release;
    m["machine"] = u.machine;
  }
  m["hardware_threads"] = std::thread::hardware_concurrency();
#ifdef __VERSION__
  m["compiler"] = __VERSION__;
#endif
  return m;
}

}  // namespace detail

/// Resolves the configured problem; throws InvalidArgument on config errors.
inline ProblemSpec resolve_problem(const RunConfig& cfg, Overrides& overrides, std::vector<std::string>& warnings) {
  overrides = cfg.overrides;
  ProblemSpec spec;
  if (!cfg.config_path.empty()) {
    spec = problem_from_file(cfg.config_path, overrides);
  } else if (!cfg.scenario.empty()) {
    spec = scenario(cfg.scenario);
  } else {
    throw InvalidArgument("either --scenario or --config is required");
  }
  if (spec.name == "heat3d" && !overrides.m && !cfg.large) spec.mesh_divisions = 16;
  apply_overrides(spec, overrides);
  if (spec.dimension == 3 && spec.mesh_divisions > kLargeMeshDivisions && !cfg.large)
    throw InvalidArgument("3D mesh with m=" + std::to_string(spec.mesh_divisions) + " requires --large");
  if (cfg.repeats < 1) throw InvalidArgument("--repeats must be at least 1");
  const auto w = validate(spec);
  warnings.insert(warnings.end(), w.begin(), w.end());
  return spec;
}

/// N: from T when the horizon was given explicitly, otherwise the
/// segment-exact count (n+1)(segments+1) - 1.
inline int resolve_steps(const ProblemSpec& spec, const Overrides& overrides) {
  return overrides.T ? spec.steps_for_horizon() : spec.steps_for_segments();
}

inline void write_eigenvalues_csv(const std::string& path, const std::vector<std::vector<double>>& leading) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  out << "segment,index,eigenvalue\n";
  for (std::size_t s = 0; s < leading.size(); ++s)
    for (std::size_t k = 0; k < leading[s].size(); ++k) out << s + 1 << ',' << k << ',' << leading[s][k] << '\n';
}

inline void write_error_csv(const std::string& path, const std::vector<TimeError>& errors) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  out << "step,t,abs_error,rel_error\n";
  for (std::size_t n = 0; n < errors.size(); ++n)
    out << n << ',' << errors[n].t << ',' << errors[n].absolute << ',' << errors[n].relative << '\n';
}

inline void write_slice_csv(const std::string& path, const Mesh& mesh, std::span<const double> hifi,
                            std::span<const double> reduced) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.precision(17);
  static const char* axis[] = {"x", "y", "z"};
  for (int a = 0; a < mesh.dimension; ++a) out << axis[a] << ',';
  out << "hifi,seam\n";
  for (std::size_t k = 0; k < hifi.size(); ++k) {
    const Point& p = mesh.vertices[mesh.interior_vertex[k]];
    for (int a = 0; a < mesh.dimension; ++a) out << p[a] << ',';
    out << hifi[k] << ',' << reduced[k] << '\n';
  }
}

inline nlohmann::json report_json(const SpectralReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["tau"] = rep.tau;
  j["norm_A"] = rep.norm_a;
  j["tau_norm_A"] = rep.time_step.tau_norm;
  j["time_step_assumption"] = rep.time_step.satisfied;
  j["segments"] = nlohmann::json::array();
  for (const SegmentDiagnostics& d : rep.segments) {
    nlohmann::json s;
    s["segment"] = d.segment + 1;
    s["eigenvalues"] = d.leading;
    s["trailing_sum"] = d.trailing_sum;
    s["trailing_squares"] = d.trailing_squares;
    s["reference_lambda0"] = detail::long_double_json(d.reference);
    s["perturbation"] = detail::long_double_json(d.perturbation);
    s["log10_perturbation"] = d.log10_perturbation();
    s["n4_tau2"] = d.bound_proxy;
    s["ratio"] = detail::long_double_json(d.ratio);
    j["segments"].push_back(s);
  }
  return j;
}

inline nlohmann::json summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["scenario"] = s.scenario;
  j["mode"] = to_string(s.mode);
  j["dimension"] = s.dimension;
  j["m"] = s.mesh_divisions;
  j["dofs"] = s.dofs;
  j["reduced_dofs"] = s.reduced_dofs;
  j["reduction"] = s.reduction;
  j["tau"] = s.tau;
  j["T"] = s.horizon;
  j["steps"] = s.steps;
  j["n"] = s.n;
  j["segments"] = s.segments;
  j["hifi_seconds"] = s.hifi_seconds;
  j["seam_offline_seconds"] = s.seam_offline_seconds;
  j["seam_online_seconds"] = s.seam_online_seconds;
  j["seam_error_l2"] = s.seam_error ? nlohmann::json(*s.seam_error) : nlohmann::json(nullptr);
  const std::size_t k = std::min<std::size_t>(5, s.lambda0.size());
  j["lambda0_head"] = std::vector<double>(s.lambda0.begin(), s.lambda0.begin() + static_cast<std::ptrdiff_t>(k));
  j["lambda0_tail"] = std::vector<double>(s.lambda0.end() - static_cast<std::ptrdiff_t>(k), s.lambda0.end());
  if (s.report) {
    j["norm_A"] = s.report->norm_a;
    j["tau_norm_A"] = s.report->time_step.tau_norm;
    j["time_step_assumption"] = s.report->time_step.satisfied;
  }
  if (s.bench) {
    j["bench"] = {{"hifi_median_seconds", s.bench->hifi_median},
                  {"online_median_seconds", s.bench->online_median},
                  {"offline_seconds", s.bench->offline_seconds},
                  {"speedup", s.bench->speedup}};
  }
  if (s.hw) j["hw_selftest"] = {{"cases", s.hw->cases}, {"passed", s.hw->passed}};
  j["warnings"] = s.warnings;
  return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

/// Random symmetric pairs (sizes 2..20, entries in [-1, 1]).
inline HwSelftestResult hw_selftest(int cases, std::uint64_t seed, const std::string& csv_path = "") {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 20);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  auto random_symmetric = [&](std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i <= j; ++i) m(i, j) = m(j, i) = entry(rng);
    return m;
  };
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path + " for writing");
    csv.precision(17);
    csv << "case,size,frobenius_margin,interval_margin,holds\n";
  }
  HwSelftestResult r;
  for (int c = 0; c < cases; ++c) {
    const auto n = static_cast<std::size_t>(size(rng));
    const DenseMatrix a = random_symmetric(n);
    const DenseMatrix e = random_symmetric(n);
    const HoffmanWielandtRecord rec = hoffman_wielandt_check(a, e);
    const bool ok = rec.holds(1e-9);
    ++r.cases;
    r.passed += ok ? 1 : 0;
    r.worst_frobenius_margin = std::min(r.worst_frobenius_margin, rec.frobenius_margin);
    r.worst_interval_margin = std::min(r.worst_interval_margin, rec.interval_margin);
    if (csv) csv << c << ',' << n << ',' << rec.frobenius_margin << ',' << rec.interval_margin << ',' << ok << '\n';
  }
  return r;
}

/// Executes one configured run and writes its artifacts into cfg.out_dir.
/// Throws InvalidArgument (config), SolverFailure, DivisibilityError and IoError.
inline RunSummary run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  RunSummary sum;
  sum.mode = cfg.mode;

  if (cfg.mode == Mode::HwSelftest) {
    fs::create_directories(cfg.out_dir);
    sum.scenario = "hw-selftest";
    sum.hw = hw_selftest(100, 7, (fs::path(cfg.out_dir) / "hw.csv").string());
    write_json((fs::path(cfg.out_dir) / "summary.json").string(), summary_json(sum));
    return sum;
  }

  Overrides overrides;
  const ProblemSpec spec = resolve_problem(cfg, overrides, sum.warnings);
  const int steps = resolve_steps(spec, overrides);

  // Segment width and the number of columns actually used.
  int n = spec.segment_length;
  if (cfg.mode == Mode::Seam) n = steps;
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  const std::size_t total = static_cast<std::size_t>(steps) + 1;
  if (cfg.mode == Mode::ParallelSeam || cfg.mode == Mode::Bench) segment_total(total, n);
  if (cfg.mode == Mode::Eigs && total < width)
    throw DivisibilityError("horizon is shorter than one segment of n+1 columns");

  const FullOrderModel model(spec);
  fs::create_directories(cfg.out_dir);
  const auto out = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };

  sum.scenario = spec.name;
  sum.dimension = spec.dimension;
  sum.mesh_divisions = spec.mesh_divisions;
  sum.dofs = model.dofs();
  sum.reduction = std::to_string(model.dofs()) + ":1";
  sum.tau = spec.tau;
  sum.steps = steps;
  sum.horizon = steps * spec.tau;
  sum.n = n;

  SnapshotMatrix snapshots;
  auto t0 = detail::Clock::now();
  if (!cfg.snapshots_path.empty()) {
    snapshots = read_snapshots(cfg.snapshots_path);
    if (snapshots.dofs() != model.dofs() || snapshots.count() != total || snapshots.tau != spec.tau)
      throw InvalidArgument("snapshot file " + cfg.snapshots_path + " does not match the configured problem");
  } else {
    snapshots = run_hifi(model, steps);
    sum.hifi_seconds = detail::seconds_since(t0);
    write_snapshots(out("snapshots.bin"), snapshots);
  }
  if (cfg.mode == Mode::Hifi) {
    write_json(out("summary.json"), summary_json(sum));
    return sum;
  }

  // Diagnostic mode truncates to whole segments.
  const std::size_t segments = total / width;
  sum.segments = static_cast<int>(segments);
  if (segments * width != total) {
    sum.warnings.push_back("truncated to " + std::to_string(segments * width) + " of " + std::to_string(total) +
                           " columns");
    DenseMatrix cut(snapshots.dofs(), segments * width);
    for (std::size_t k = 0; k < segments * width; ++k)
      std::copy(snapshots.column(k).begin(), snapshots.column(k).end(), cut.column(k).begin());
    snapshots.columns = std::move(cut);
  }

  t0 = detail::Clock::now();
  std::vector<GramSpectrum> spectra(segments);
  parallel_for(segments, cfg.threads, [&](std::size_t k) {
    spectra[k] = segment_spectrum(SnapshotBlock(snapshots.columns, k * width, width), static_cast<int>(k));
  });
  const double spectrum_seconds = detail::seconds_since(t0);
  for (const GramSpectrum& s : spectra) {
    sum.lambda0.push_back(s.eigenvalues.front());
    sum.leading.emplace_back(s.eigenvalues.begin(),
                             s.eigenvalues.begin() +
                                 static_cast<std::ptrdiff_t>(std::min(kEigenvaluesPerSegment, s.eigenvalues.size())));
  }
  write_eigenvalues_csv(out("eigenvalues.csv"), sum.leading);

  if (cfg.mode == Mode::Eigs) {
    const double norm_a = operator_norm_A(model.mass(), model.stiffness()).value;
    sum.report = spectral_report(snapshots, spectra, n, norm_a);
    if (!sum.report->time_step.satisfied)
      sum.warnings.push_back("tau*||A|| = " + std::to_string(sum.report->time_step.tau_norm) + " >= 1");
    write_json(out("report.json"), report_json(*sum.report));
    write_json(out("summary.json"), summary_json(sum));
    return sum;
  }

  // Offline: POD bases and reduced operators.
  t0 = detail::Clock::now();
  const LoadFunction load = model_load(model);
  SeamSolution sol;
  sol.dofs = snapshots.dofs();
  sol.columns_per_segment = width;
  sol.tau = snapshots.tau;
  sol.segments.resize(segments);
  parallel_for(segments, cfg.threads, [&](std::size_t k) {
    sol.segments[k].model = seam_offline(SnapshotBlock(snapshots.columns, k * width, width), model.mass(),
                                         model.stiffness(), load, snapshots.tau, &spectra[k]);
  });
  sum.seam_offline_seconds = spectrum_seconds + detail::seconds_since(t0);

  // Online: scalar recurrences and reconstruction.
  const auto online = [&]() {
    for (SeamSegment& seg : sol.segments) seg.alpha = seam_online(seg.model, n);
    return sol.reconstruct();
  };
  t0 = detail::Clock::now();
  DenseMatrix reduced = online();
  sum.seam_online_seconds = detail::seconds_since(t0);

  sum.seam_error = relative_l2_error(snapshots.columns, reduced, model.mass(), snapshots.tau);

  if (cfg.mode == Mode::Bench) {
    BenchResult b;
    b.offline_seconds = sum.seam_offline_seconds;
    for (int r = 0; r < cfg.repeats; ++r) {
      auto start = detail::Clock::now();
      const SnapshotMatrix again = run_hifi(model, steps);
      b.hifi_samples.push_back(detail::seconds_since(start));
      start = detail::Clock::now();
      reduced = online();
      b.online_samples.push_back(detail::seconds_since(start));
    }
    b.hifi_median = detail::median(b.hifi_samples);
    b.online_median = detail::median(b.online_samples);
    b.speedup = b.online_median > 0.0 ? b.hifi_median / b.online_median : INFINITY;
    sum.bench = b;
    nlohmann::json j = {{"scenario", spec.name},
                        {"repeats", cfg.repeats},
                        {"hifi_samples_seconds", b.hifi_samples},
                        {"hifi_median_seconds", b.hifi_median},
                        {"online_samples_seconds", b.online_samples},
                        {"online_median_seconds", b.online_median},
                        {"offline_seconds", b.offline_seconds},
                        {"speedup", b.speedup},
                        {"machine", detail::machine_fingerprint()}};
    write_json(out("bench.json"), j);
    write_json(out("summary.json"), summary_json(sum));
    return sum;
  }

  write_snapshots(out("seam.bin"), reduced, snapshots.tau);
  write_seam_metadata_csv(out("seam_segments.csv"), sol);
  write_error_csv(out("error.csv"), error_over_time(snapshots.columns, reduced, model.mass(), snapshots.tau));
  for (const char* label : {"0.25", "0.5", "0.75", "1.0"}) {
    const double t = std::stod(label);
    const auto idx = static_cast<std::size_t>(std::llround(t / snapshots.tau));
    if (idx >= snapshots.count()) continue;
    write_slice_csv(out(std::string("slices_t") + label + ".csv"), model.mesh(), snapshots.column(idx),
                    reduced.column(idx));
  }
  write_json(out("summary.json"), summary_json(sum));
  return sum;
}

}  // namespace seam
