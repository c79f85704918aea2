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

// Problem definitions and the registry of built-in scenarios.

#include <cmath>
#include <string>
#include <vector>

#include "seam/error.hpp"
#include "seam/expression.hpp"

namespace seam {

struct ProblemSpec {
  std::string name;
  int dimension = 1;
  std::vector<ScalarField> alpha_diag;  // one entry per axis
  ScalarField c;
  ScalarField f;
  ScalarField u0;
  std::string alpha_text, c_text, f_text, u0_text;  // source expressions, for reports
  double T = 1.0;
  double tau = 1e-4;
  int mesh_divisions = 32;
  int segment_length = 100;  // n: a segment holds n+1 columns
  int segment_count = 100;   // ñ: there are ñ+1 segments

  int columns_per_segment() const { return segment_length + 1; }
  int segment_total() const { return segment_count + 1; }

  /// N such that N+1 = (ñ+1)(n+1).
  int steps_for_segments() const { return columns_per_segment() * segment_total() - 1; }

  /// N = T/τ; throws when T is not an integer multiple of τ.
  int steps_for_horizon() const {
    const double ratio = T / tau;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(steps * tau - T) >= 1e-9 * T)
      throw InvalidArgument("T=" + std::to_string(T) + " is not an integer multiple of tau=" +
                            std::to_string(tau));
    return static_cast<int>(steps);
  }
};

/// Sets a field from expression text, keeping the text for reporting.
inline void set_field(ScalarField& field, std::string& text, const std::string& source) {
  field = parse_expression(source);
  text = source;
}

inline void set_alpha(ProblemSpec& spec, const std::vector<std::string>& sources) {
  if (static_cast<int>(sources.size()) != spec.dimension)
    throw InvalidArgument("alpha needs exactly one expression per axis");
  spec.alpha_diag.clear();
  spec.alpha_text.clear();
  for (const std::string& s : sources) {
    spec.alpha_diag.push_back(parse_expression(s));
    if (!spec.alpha_text.empty()) spec.alpha_text += ";";
    spec.alpha_text += s;
  }
}

/// Throws InvalidArgument on a structurally unusable spec. Returns warnings.
inline std::vector<std::string> validate(const ProblemSpec& spec) {
  if (spec.dimension < 1 || spec.dimension > 3) throw InvalidArgument("dimension must be 1, 2 or 3");
  if (static_cast<int>(spec.alpha_diag.size()) != spec.dimension)
    throw InvalidArgument("alpha needs exactly one expression per axis");
  if (!(spec.tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(spec.T > 0.0)) throw InvalidArgument("T must be positive");
  if (spec.mesh_divisions < 2) throw InvalidArgument("m must be at least 2");
  if (spec.segment_length < 1) throw InvalidArgument("n must be at least 1");
  if (spec.segment_count < 0) throw InvalidArgument("segment count must be non-negative");

  std::vector<std::string> warnings;
  // Coefficients may vanish on the boundary (s2), so negativity only warns.
  constexpr int samples = 11;
  bool negative = false;
  for (int i = 0; i < samples && !negative; ++i)
    for (int j = 0; j < (spec.dimension > 1 ? samples : 1) && !negative; ++j)
      for (int k = 0; k < (spec.dimension > 2 ? samples : 1) && !negative; ++k) {
        const EvalPoint p{i / (samples - 1.0), j / (samples - 1.0), k / (samples - 1.0), 0.0};
        for (const ScalarField& a : spec.alpha_diag)
          if (a(p) < 0.0) negative = true;
      }
  if (negative) warnings.push_back("alpha takes negative values on the sample grid");
  return warnings;
}

/// Names accepted by scenario().
inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"heat1d", "s1", "s2", "s3", "heat3d"};
  return names;
}

/// Built-in experiment definitions. `f_variant` selects among the listed
/// source terms ("0", "xy", "10"); empty picks the first one.
inline ProblemSpec scenario(const std::string& name, const std::string& f_variant = "") {
  ProblemSpec s;
  s.name = name;
  std::vector<std::string> allowed_f;
  if (name == "heat1d") {
    s.dimension = 1;
    s.mesh_divisions = 99;
    s.T = 0.1;
    s.tau = 1e-4;
    s.segment_length = 1000;
    s.segment_count = 0;
    set_alpha(s, {"1"});
    set_field(s.c, s.c_text, "0");
    set_field(s.u0, s.u0_text, "sin(4*pi*x)");
    allowed_f = {"0"};
  } else if (name == "s1") {
    s.dimension = 2;
    s.mesh_divisions = 32;
    s.T = 1.0;
    s.tau = 1e-4;
    s.segment_length = 100;
    s.segment_count = 100;
    set_alpha(s, {"1", "1"});
    set_field(s.c, s.c_text, "1");
    set_field(s.u0, s.u0_text, "sin(pi*x*y)");
    allowed_f = {"0", "xy"};
  } else if (name == "s2" || name == "s3") {
    s.dimension = 2;
    s.mesh_divisions = 32;
    s.T = 1.0;
    if (name == "s2") {
      s.tau = 1e-4;
      s.segment_length = 100;
      s.segment_count = 100;
      allowed_f = {"0", "10", "xy"};
    } else {
      s.tau = 2.5e-3;
      s.segment_length = 20;
      s.segment_count = 20;
      allowed_f = {"0"};
    }
    set_alpha(s, {"x^2", "y^2"});
    set_field(s.c, s.c_text, "pi^2*(1-2*x^2*y^2)");
    set_field(s.u0, s.u0_text, "sin(pi*x)*sin(pi*y)");
  } else if (name == "heat3d") {
    s.dimension = 3;
    s.mesh_divisions = 32;
    s.T = 1.0;
    s.tau = 2.5e-3;
    s.segment_length = 20;
    s.segment_count = 20;
    set_alpha(s, {"1", "1", "1"});
    set_field(s.c, s.c_text, "0");
    set_field(s.u0, s.u0_text, "sin(2*pi*x)*sin(2*pi*y)*sin(2*pi*z)");
    allowed_f = {"0"};
  } else {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }

  const std::string variant = f_variant.empty() ? allowed_f.front() : f_variant;
  bool ok = false;
  for (const std::string& a : allowed_f) ok = ok || a == variant;
  if (!ok) throw InvalidArgument("scenario '" + name + "' has no f variant '" + variant + "'");
  set_field(s.f, s.f_text, variant == "xy" ? "x*y" : variant);
  return s;
}

}  // namespace seam
