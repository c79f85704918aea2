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

// Command-line front end: seam_cli --scenario s1 --mode parallel-seam --out run1

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "seam/driver.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kSolver = 3, kDivisibility = 4 };

void print_summary(const seam::RunSummary& s) {
  std::cout << "scenario " << s.scenario << " mode " << seam::to_string(s.mode);
  if (s.hw) {
    std::cout << ": " << s.hw->passed << "/" << s.hw->cases << " Hoffman-Wielandt cases hold\n";
    return;
  }
  std::cout << " dofs " << s.dofs << " steps " << s.steps << " segments " << s.segments << '\n';
  if (s.seam_error) std::cout << "relative L2 error " << *s.seam_error << '\n';
  if (s.report)
    std::cout << "||A||_2 " << s.report->norm_a << " tau*||A||_2 " << s.report->time_step.tau_norm << '\n';
  if (s.bench)
    std::cout << "hifi " << s.bench->hifi_median << " s, online " << s.bench->online_median << " s, speedup "
              << s.bench->speedup << '\n';
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segmented single-mode POD reduction of linear parabolic problems"};
  seam::RunConfig cfg;
  std::string mode = "parallel-seam";
  std::optional<int> m, n, segments;
  std::optional<double> tau, horizon;
  std::optional<std::string> f;

  app.add_option("--scenario", cfg.scenario, "built-in scenario (heat1d, s1, s2, s3, heat3d)");
  app.add_option("--config", cfg.config_path, "JSON problem or scenario file")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "hifi | seam | parallel-seam | eigs | bench | hw-selftest")->capture_default_str();
  app.add_option("--m", m, "mesh divisions per axis");
  app.add_option("--tau", tau, "time step");
  app.add_option("--T", horizon, "final time");
  app.add_option("--n", n, "steps per segment");
  app.add_option("--segments", segments, "number of segments minus one");
  app.add_option("--f", f, "source term: variant name (xy) or expression");
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--snapshots", cfg.snapshots_path, "reuse a stored snapshots.bin")->check(CLI::ExistingFile);
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
  app.add_flag("--large", cfg.large, "allow the full-size 3D mesh");
  app.add_option("--repeats", cfg.repeats, "bench repetitions")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    cfg.mode = seam::parse_mode(mode);
    if (mode != "hw-selftest" && cfg.scenario.empty() == cfg.config_path.empty())
      throw seam::InvalidArgument("exactly one of --scenario and --config is required");
    cfg.overrides = {m, tau, horizon, n, segments, f};
    const seam::RunSummary s = seam::run(cfg);
    print_summary(s);
    if (s.hw && s.hw->passed != s.hw->cases) return kOther;
    return kOk;
  } catch (const seam::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const seam::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const seam::DivisibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDivisibility;
  } catch (const seam::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const seam::DegenerateSnapshot& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const seam::DegenerateReference& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
