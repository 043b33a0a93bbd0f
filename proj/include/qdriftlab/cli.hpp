// Copyright 2026 The qdrift-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdriftlab/models.hpp"
#include "qdriftlab/norms.hpp"
#include "qdriftlab/table.hpp"

namespace qdriftlab::cli {

/// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
/// 3 size error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSize = 3;

enum class Command { Estimate, Verify, Sample, Encode };
enum class ModelKind { Tfim, SingleTerm, TwoTerm, Encoding, Raw };
enum class DataDistribution { UniformPm1, Uniform01, Gauss };

DataDistribution parse_distribution(std::string_view tag);

/// Fully resolved run description (CLI flags > config file > defaults).
struct RunConfig {
  Command command = Command::Estimate;

  ModelKind model = ModelKind::Tfim;
  int spins = 2;
  double coupling = 1.0;     // J
  double field = 0.5;        // h
  double dephasing = 0.1;    // gamma
  double gamma_raw = 0.0;    // raw-mode Gamma
  double omega_raw = 0.0;    // raw-mode Omega
  int encode_n = 100;
  int encode_n_max = 0;      // 0: single point
  int encode_points = 1;
  DataDistribution dist = DataDistribution::UniformPm1;
  bool exact_check = false;

  double t = 1.0;
  double t_max = 0.0;        // 0: single point
  int points = 1;
  double epsilon = 1e-6;
  NormConvention convention = NormConvention::Tight;
  std::vector<std::uint64_t> step_grid = {4, 16, 64, 256};
  std::uint64_t trajectories = 1000;
  std::uint64_t steps = 32;
  bool timing = false;

  std::uint64_t seed = 0;
  unsigned threads = 0;      // 0: hardware concurrency
  bool json = false;
  std::string output;        // empty: stdout
};

/// Sweep of log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int points);

Table run_estimate(const RunConfig& config, std::ostream& log);
Table run_verify(const RunConfig& config, std::ostream& log, bool& all_pass);
Table run_sample(const RunConfig& config, std::ostream& log);
Table run_encode(const RunConfig& config, std::ostream& log, bool& check_pass);

/// Builds the named model. Raw mode has no decomposition and throws.
GeneratorDecomposition build_model(const RunConfig& config);

/// Draws the encoding data vector for one row; redraws with an incremented
/// stream on an all-zero draw (logged).
std::vector<double> draw_data_vector(int n, DataDistribution dist, std::uint64_t seed,
                                     std::ostream& log);

/// Full dispatch: parse, run, write. `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qdriftlab::cli
