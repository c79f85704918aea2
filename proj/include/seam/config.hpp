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

// Run configuration: scenario selection, overrides and JSON config files.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "seam/error.hpp"
#include "seam/problem.hpp"

namespace seam {

enum class Mode { Hifi, Seam, ParallelSeam, Eigs, Bench, HwSelftest };

inline Mode parse_mode(const std::string& s) {
  if (s == "hifi") return Mode::Hifi;
  if (s == "seam") return Mode::Seam;
  if (s == "parallel-seam") return Mode::ParallelSeam;
  if (s == "eigs") return Mode::Eigs;
  if (s == "bench") return Mode::Bench;
  if (s == "hw-selftest") return Mode::HwSelftest;
  throw InvalidArgument("unknown mode '" + s + "'");
}

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Hifi: return "hifi";
    case Mode::Seam: return "seam";
    case Mode::ParallelSeam: return "parallel-seam";
    case Mode::Eigs: return "eigs";
    case Mode::Bench: return "bench";
    case Mode::HwSelftest: return "hw-selftest";
  }
  return {};
}

struct Overrides {
  std::optional<int> m;
  std::optional<double> tau;
  std::optional<double> T;
  std::optional<int> n;
  std::optional<int> segments;
  std::optional<std::string> f;
};

struct RunConfig {
  std::string scenario;     // built-in name, or empty when config_path is used
  std::string config_path;  // JSON file
  Mode mode = Mode::ParallelSeam;
  Overrides overrides;
  std::string out_dir = "seam_out";
  std::string snapshots_path;  // reuse stored snapshots instead of solving
  unsigned threads = 0;        // 0: hardware concurrency
  bool large = false;
  int repeats = 3;
};

inline constexpr int kLargeMeshDivisions = 24;  // 3D meshes beyond this need --large

/// Applies overrides; an f override is a variant name ("xy") or any expression.
inline void apply_overrides(ProblemSpec& spec, const Overrides& o) {
  if (o.m) spec.mesh_divisions = *o.m;
  if (o.tau) spec.tau = *o.tau;
  if (o.T) spec.T = *o.T;
  if (o.n) spec.segment_length = *o.n;
  if (o.segments) spec.segment_count = *o.segments;
  if (o.f) set_field(spec.f, spec.f_text, *o.f == "xy" ? "x*y" : *o.f);
}

namespace detail {

inline void read_overrides(const nlohmann::json& j, Overrides& o) {
  if (j.contains("m")) o.m = j.at("m").get<int>();
  if (j.contains("tau")) o.tau = j.at("tau").get<double>();
  if (j.contains("T")) o.T = j.at("T").get<double>();
  if (j.contains("n")) o.n = j.at("n").get<int>();
  if (j.contains("segments")) o.segments = j.at("segments").get<int>();
  if (j.contains("f")) {
    const auto& f = j.at("f");
    o.f = f.is_string() ? f.get<std::string>() : nlohmann::json(f).dump();
  }
}

inline std::string expression_text(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace detail

/// Parses a JSON config: {"scenario": name, overrides...} or an explicit
/// problem {"dimension", "alpha": [..], "c", "f", "u0", "T", "tau", "m", "n", "segments"}.
/// Overrides found in the file are merged into `overrides` (command-line values win).
inline ProblemSpec problem_from_json(const nlohmann::json& j, Overrides& overrides) {
  try {
    ProblemSpec spec;
    if (j.contains("scenario")) {
      spec = scenario(j.at("scenario").get<std::string>());
    } else {
      spec.name = j.value("name", std::string("custom"));
      spec.dimension = j.at("dimension").get<int>();
      if (spec.dimension < 1 || spec.dimension > 3) throw InvalidArgument("dimension must be 1, 2 or 3");
      std::vector<std::string> alpha;
      const auto& a = j.at("alpha");
      if (a.is_array()) {
        for (const auto& e : a) alpha.push_back(detail::expression_text(e));
      } else {
        alpha.assign(static_cast<std::size_t>(spec.dimension), detail::expression_text(a));
      }
      set_alpha(spec, alpha);
      set_field(spec.c, spec.c_text, detail::expression_text(j.value("c", nlohmann::json("0"))));
      set_field(spec.f, spec.f_text, detail::expression_text(j.value("f", nlohmann::json("0"))));
      set_field(spec.u0, spec.u0_text, detail::expression_text(j.at("u0")));
      spec.T = j.at("T").get<double>();
      spec.tau = j.at("tau").get<double>();
      spec.mesh_divisions = j.at("m").get<int>();
      spec.segment_length = j.value("n", 0);
      spec.segment_count = j.value("segments", 0);
      if (spec.segment_length == 0) {
        // One segment spanning the horizon.
        spec.segment_length = spec.steps_for_horizon();
        spec.segment_count = 0;
      }
      // Explicit problems run to their own horizon.
      if (!overrides.T) overrides.T = spec.T;
      return spec;
    }
    Overrides file;
    detail::read_overrides(j, file);
    // Command-line values win over the file.
    if (!overrides.m) overrides.m = file.m;
    if (!overrides.tau) overrides.tau = file.tau;
    if (!overrides.T) overrides.T = file.T;
    if (!overrides.n) overrides.n = file.n;
    if (!overrides.segments) overrides.segments = file.segments;
    if (!overrides.f) overrides.f = file.f;
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config: ") + e.what());
  }
}

inline ProblemSpec problem_from_file(const std::string& path, Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
  }
  return problem_from_json(j, overrides);
}

}  // namespace seam
