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

#include "qdriftlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdriftlab/qdrift.hpp"
#include "qdriftlab/rng.hpp"
#include "qdriftlab/version.hpp"

namespace qdriftlab::cli {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs job(0..count-1) on a bounded pool; callers index their results, so
/// the outcome does not depend on the thread count.
template <typename Fn>
void run_indexed(unsigned threads, std::size_t count, Fn&& job) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  }
  for (auto& worker : pool) worker.join();
}

double ratio_old_to_new(double gamma, double omega, double lambda_nu_sq) {
  // (Gamma Omega)^2 / sum(lambda nu^2), arranged so the common cancellations
  // (Omega = 2 with an all-Hamiltonian tight budget, or a flat budget) stay
  // exact in floating point.
  const double half_omega = omega / 2.0;
  return gamma * half_omega * half_omega * (4.0 * gamma / lambda_nu_sq);
}

struct EstimatePoint {
  double gamma = 0.0;
  double omega = 0.0;
  double lambda_nu_sq = 0.0;
};

std::vector<Cell> estimate_row(double t, double epsilon, const EstimatePoint& point) {
  const double r_old = steps_old(t, point.gamma, point.omega, epsilon);
  const double r_new = steps_new_from_sum(t, point.lambda_nu_sq, epsilon);
  const double r_cor = steps_corollary(t, point.gamma, epsilon);
  const double applications_new = ceil_guarded(point.gamma * r_new);
  return {
      real_cell(t),
      real_cell(point.gamma),
      real_cell(point.omega),
      count_cell(r_old),
      count_cell(r_new),
      count_cell(r_cor),
      count_cell(r_old),  // one exponential per step in the original protocol
      count_cell(applications_new),
      real_cell(ratio_old_to_new(point.gamma, point.omega, point.lambda_nu_sq)),
  };
}

std::string model_name(ModelKind model) {
  switch (model) {
    case ModelKind::Tfim: return "tfim";
    case ModelKind::SingleTerm: return "single-term";
    case ModelKind::TwoTerm: return "two-term";
    case ModelKind::Encoding: return "encoding";
    case ModelKind::Raw: return "raw";
  }
  return "?";
}

ModelKind parse_model(std::string_view tag) {
  if (tag == "tfim") return ModelKind::Tfim;
  if (tag == "single-term") return ModelKind::SingleTerm;
  if (tag == "two-term") return ModelKind::TwoTerm;
  if (tag == "encoding") return ModelKind::Encoding;
  throw DomainError("unknown model '" + std::string(tag) + "'");
}

}  // namespace

DataDistribution parse_distribution(std::string_view tag) {
  if (tag == "uniform-pm1") return DataDistribution::UniformPm1;
  if (tag == "uniform-01") return DataDistribution::Uniform01;
  if (tag == "gauss") return DataDistribution::Gauss;
  throw DomainError("unknown distribution '" + std::string(tag) +
                    "' (expected uniform-pm1, uniform-01 or gauss)");
}

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > 0.0) || points < 1) {
    throw DomainError("log_spaced: bounds must be positive and points >= 1");
  }
  if (points == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (std::log10(hi) - std::log10(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = std::pow(10.0, std::log10(lo) + i * step);
  }
  return out;
}

GeneratorDecomposition build_model(const RunConfig& config) {
  switch (config.model) {
    case ModelKind::Tfim:
      return build_tfim_dephasing(builtin_lattice(config.spins), config.coupling, config.field,
                                  config.dephasing);
    case ModelKind::SingleTerm: {
      GeneratorDecomposition decomp;
      decomp.dim = 2;
      decomp.terms.push_back(hamiltonian_term(1.0, pauli_matrix(PauliLetter::X), "X"));
      return decomp;
    }
    case ModelKind::TwoTerm: {
      GeneratorDecomposition decomp;
      decomp.dim = 2;
      decomp.terms.push_back(hamiltonian_term(0.7, pauli_matrix(PauliLetter::X), "X"));
      decomp.terms.push_back(hamiltonian_term(0.3, pauli_matrix(PauliLetter::Z), "Z"));
      return decomp;
    }
    case ModelKind::Encoding: {
      std::ostringstream sink;
      return build_encoding_hamiltonian(
          draw_data_vector(config.encode_n, config.dist, config.seed, sink));
    }
    case ModelKind::Raw:
      break;
  }
  throw DomainError("raw mode has no generator decomposition");
}

std::vector<double> draw_data_vector(int n, DataDistribution dist, std::uint64_t seed,
                                     std::ostream& log) {
  if (n < 1) throw DomainError("draw_data_vector: dimension must be positive");
  for (std::uint64_t attempt = 0;; ++attempt) {
    // Stream ids split by (dimension, attempt) so every row of a sweep and
    // every redraw consumes an independent stream.
    const CounterRng rng(seed, (attempt << 40) | static_cast<std::uint64_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n));
    bool any_nonzero = false;
    for (int i = 0; i < n; ++i) {
      const auto counter = static_cast<std::uint64_t>(i);
      double value = 0.0;
      switch (dist) {
        case DataDistribution::UniformPm1: value = 2.0 * rng.uniform(counter) - 1.0; break;
        case DataDistribution::Uniform01: value = rng.uniform(counter); break;
        case DataDistribution::Gauss: value = rng.gaussian_pair(counter).first; break;
      }
      x[static_cast<std::size_t>(i)] = value;
      any_nonzero = any_nonzero || value != 0.0;
    }
    if (any_nonzero) return x;
    log << "draw_data_vector: all-zero draw at n=" << n << ", redrawing with stream "
        << (attempt + 1) << "\n";
  }
}

Table run_estimate(const RunConfig& config, std::ostream& log) {
  EstimatePoint point;
  if (config.model == ModelKind::Raw) {
    if (!(config.gamma_raw > 0.0) || !(config.omega_raw > 0.0)) {
      throw DomainError("estimate: raw mode needs positive --gamma and --omega");
    }
    point.gamma = config.gamma_raw;
    point.omega = config.omega_raw;
    // Raw sweeps describe closed-system decompositions with normalized
    // terms, where the tight budget gives nu_k = 2 uniformly.
    point.lambda_nu_sq = 4.0 * point.gamma;
  } else {
    const GeneratorDecomposition decomp = build_model(config);
    point.gamma = decomp.gamma();
    point.omega = max_term_norm_bound(decomp, config.convention);
    point.lambda_nu_sq = sum_lambda_nu_sq(decomp, config.convention);
  }

  const std::vector<double> ts = config.t_max > 0.0
                                     ? log_spaced(config.t, config.t_max, config.points)
                                     : std::vector<double>{config.t};
  Table table;
  table.schema = "estimate";
  table.columns = {"t",           "gamma",            "omega",            "r_old", "r_new",
                   "r_corollary", "applications_old", "applications_new", "ratio"};
  for (double t : ts) table.rows.push_back(estimate_row(t, config.epsilon, point));
  log << "estimate: model=" << model_name(config.model)
      << " convention=" << convention_name(config.convention) << " rows=" << table.rows.size()
      << "\n";
  return table;
}

Table run_verify(const RunConfig& config, std::ostream& log, bool& all_pass) {
  if (config.step_grid.empty()) throw DomainError("verify: empty step grid");
  const GeneratorDecomposition decomp = build_model(config);
  VerifyOptions options;
  options.convention = config.convention;
  options.seesaw.seed = config.seed;

  std::vector<BoundReport> reports(config.step_grid.size());
  std::exception_ptr failure;
  run_indexed(resolve_threads(config.threads), config.step_grid.size(), [&](std::size_t i) {
    try {
      reports[i] = verify_bound(decomp, config.t, config.step_grid[i], options);
    } catch (...) {
      failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  Table table;
  table.schema = "verify";
  table.columns = {"steps",              "lhs_lower",    "lhs_upper", "rhs_theorem",
                   "per_step_lhs_lower", "per_step_rhs", "pass"};
  all_pass = true;
  for (const auto& report : reports) {
    all_pass = all_pass && report.pass;
    table.rows.push_back({
        count_cell(static_cast<double>(report.steps)),
        real_cell(report.lhs_lower),
        real_cell(report.lhs_upper),
        real_cell(report.rhs_theorem),
        real_cell(report.per_step_lhs_lower),
        real_cell(report.per_step_rhs),
        flag_cell(report.pass),
    });
    log << "verify: model=" << model_name(config.model) << " t=" << format_real(config.t)
        << " N=" << report.steps << " lhs_lower=" << format_real(report.lhs_lower)
        << " rhs=" << format_real(report.rhs_theorem) << (report.pass ? " pass" : " FAIL")
        << "\n";
  }
  return table;
}

Table run_sample(const RunConfig& config, std::ostream& log) {
  if (config.trajectories < 1) throw DomainError("sample: need at least one trajectory");
  if (config.steps < 1) throw DomainError("sample: need at least one step");
  const GeneratorDecomposition decomp = build_model(config);
  const auto [gamma, probs] = gamma_and_probs(decomp);
  const auto n_terms = static_cast<std::size_t>(decomp.n());
  const double tau = config.t * gamma / static_cast<double>(config.steps);
  const TermExponentials cache(decomp, tau);

  const auto start = std::chrono::steady_clock::now();

  // Fixed-size batches with one counter stream per trajectory; the mean is
  // reduced in batch order, so output is independent of --threads.
  constexpr std::uint64_t kBatch = 64;
  const std::uint64_t batches = (config.trajectories + kBatch - 1) / kBatch;
  const Index d2 = decomp.dim * decomp.dim;
  std::vector<ComplexMatrix> batch_sums(batches);
  std::vector<std::vector<std::uint64_t>> batch_counts(batches);

  run_indexed(resolve_threads(config.threads), batches, [&](std::size_t b) {
    ComplexMatrix sum = ComplexMatrix::Zero(d2, d2);
    std::vector<std::uint64_t> counts(n_terms, 0);
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBatch;
    const std::uint64_t hi = std::min(lo + kBatch, config.trajectories);
    for (std::uint64_t m = lo; m < hi; ++m) {
      const Trajectory trajectory =
          sample_trajectory(cache, probs, config.steps, config.seed, /*stream=*/m);
      sum += trajectory.channel.mat;
      for (int k : trajectory.indices) counts[static_cast<std::size_t>(k)]++;
    }
    batch_sums[b] = std::move(sum);
    batch_counts[b] = std::move(counts);
  });

  ComplexMatrix mean = ComplexMatrix::Zero(d2, d2);
  std::vector<std::uint64_t> counts(n_terms, 0);
  for (std::uint64_t b = 0; b < batches; ++b) {
    mean += batch_sums[b];
    for (std::size_t k = 0; k < n_terms; ++k) counts[k] += batch_counts[b][k];
  }
  mean /= static_cast<double>(config.trajectories);

  const Superoperator exact = compose_pow(exact_qdrift_channel(cache, probs), config.steps);
  const double frobenius_error = (mean - exact.mat).norm();

  const auto draws = static_cast<double>(config.trajectories * config.steps);
  double max_dev_sigma = 0.0;
  for (std::size_t k = 0; k < n_terms; ++k) {
    const double p = probs[k];
    const double sigma = std::sqrt(std::max(p * (1.0 - p) / draws, 1e-300));
    const double freq = static_cast<double>(counts[k]) / draws;
    const double dev = std::abs(freq - p) / sigma;
    max_dev_sigma = std::max(max_dev_sigma, dev);
    log << "sample: index " << k << " freq=" << format_real(freq) << " p=" << format_real(p)
        << " dev=" << format_real(dev) << " sigma\n";
  }

  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  // Wall-clock stays out of the file unless asked for, so default output is
  // a pure function of (config, seed).
  const double seconds = config.timing ? elapsed.count() : 0.0;

  Table table;
  table.schema = "sample";
  table.columns = {"trajectories", "steps", "frobenius_error", "max_freq_dev_sigma", "seconds"};
  table.rows.push_back({
      count_cell(static_cast<double>(config.trajectories)),
      count_cell(static_cast<double>(config.steps)),
      real_cell(frobenius_error),
      real_cell(max_dev_sigma),
      real_cell(seconds),
  });
  return table;
}

Table run_encode(const RunConfig& config, std::ostream& log, bool& check_pass) {
  check_pass = true;
  std::vector<int> ns;
  if (config.encode_n_max > 0 && config.encode_points > 1) {
    for (double v : log_spaced(config.encode_n, config.encode_n_max, config.encode_points)) {
      const int n = std::max(1, static_cast<int>(std::llround(v)));
      if (ns.empty() || ns.back() != n) ns.push_back(n);
    }
  } else {
    ns.push_back(config.encode_n);
  }

  Table table;
  table.schema = "encode";
  table.columns = {"n", "l", "gamma", "r_old", "r_corollary", "ratio"};
  for (int n : ns) {
    const auto x = draw_data_vector(n, config.dist, config.seed, log);
    const GeneratorDecomposition decomp = build_encoding_hamiltonian(x);
    const double gamma = decomp.gamma();
    const Index l = encoding_qubits(n);
    // Commutator terms with unit-norm Hermitian payloads: Omega = 2.
    const double omega = 2.0;
    const double r_old = steps_old(config.t, gamma, omega, config.epsilon);
    const double r_cor = steps_corollary(config.t, gamma, config.epsilon);
    table.rows.push_back({
        count_cell(static_cast<double>(n)),
        count_cell(static_cast<double>(l)),
        real_cell(gamma),
        count_cell(r_old),
        count_cell(r_cor),
        real_cell(ratio_old_to_new(gamma, omega, 4.0 * gamma)),
    });

    if (config.exact_check) {
      if (l > 3) {
        throw SizeError("encode: --exact-check supports l <= 3 (n <= 8), got l = " +
                        std::to_string(l));
      }
      VerifyOptions options;
      options.seesaw.seed = config.seed;
      const BoundReport report = verify_bound(decomp, config.t, 64, options);
      check_pass = check_pass && report.pass;
      log << "encode: exact check at n=" << n
          << " N=64 lhs_lower=" << format_real(report.lhs_lower)
          << " rhs=" << format_real(report.rhs_theorem) << (report.pass ? " pass" : " FAIL")
          << "\n";
    }
  }
  return table;
}

namespace {

nlohmann::json load_config_file(const std::vector<std::string>& args, std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + std::string(e.what()));
  }
  if (!config.is_object()) throw DomainError("config file must hold a JSON object");
  static const std::set<std::string> known = {
      "seed",     "threads",    "json",        "output", "model",     "spins",
      "j",        "h",          "dephasing",   "gamma",  "omega",     "t",
      "t-max",    "points",     "epsilon",     "convention", "steps", "step-grid",
      "trajectories", "n",      "n-max",       "n-points", "dist",    "exact-check",
      "timing"};
  for (const auto& [key, value] : config.items()) {
    (void)value;
    if (!known.contains(key)) err << "warning: ignoring unknown config key '" << key << "'\n";
  }
  return config;
}

template <typename T>
T config_or(const nlohmann::json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) return fallback;
  return config.at(key).get<T>();
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;
};

OutputTarget open_output(const std::string& path, std::ostream& fallback) {
  OutputTarget target;
  if (path.empty()) {
    target.stream = &fallback;
    return target;
  }
  target.file.open(path, std::ios::binary | std::ios::trunc);
  if (!target.file) throw DomainError("cannot open output file '" + path + "'");
  target.stream = &target.file;
  return target;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  nlohmann::json file_config;
  try {
    file_config = load_config_file(args, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"qDRIFT resource estimation, bound verification and sampling"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);

  RunConfig config;
  config.seed = config_or<std::uint64_t>(file_config, "seed", 0);
  config.threads = config_or<unsigned>(file_config, "threads", 0);
  config.json = config_or<bool>(file_config, "json", false);
  config.output = config_or<std::string>(file_config, "output", "");
  config.spins = config_or<int>(file_config, "spins", 2);
  config.coupling = config_or<double>(file_config, "j", 1.0);
  config.field = config_or<double>(file_config, "h", 0.5);
  config.dephasing = config_or<double>(file_config, "dephasing", 0.1);
  config.encode_n = config_or<int>(file_config, "n", 100);
  config.encode_n_max = config_or<int>(file_config, "n-max", 0);
  config.encode_points = config_or<int>(file_config, "n-points", 1);
  config.trajectories = config_or<std::uint64_t>(file_config, "trajectories", 1000);
  config.steps = config_or<std::uint64_t>(file_config, "steps", 32);
  config.t_max = config_or<double>(file_config, "t-max", 0.0);
  config.points = config_or<int>(file_config, "points", 0);
  config.exact_check = config_or<bool>(file_config, "exact-check", false);
  config.timing = config_or<bool>(file_config, "timing", false);
  if (file_config.contains("step-grid")) {
    config.step_grid = file_config.at("step-grid").get<std::vector<std::uint64_t>>();
  }

  std::string model_tag = config_or<std::string>(file_config, "model", "");
  std::string convention_tag = config_or<std::string>(file_config, "convention", "tight");
  std::string dist_tag = config_or<std::string>(file_config, "dist", "uniform-pm1");
  std::optional<double> t_flag;
  std::optional<double> epsilon_flag;
  std::optional<double> gamma_flag;
  std::optional<double> omega_flag;
  if (file_config.contains("t")) t_flag = file_config.at("t").get<double>();
  if (file_config.contains("epsilon")) epsilon_flag = file_config.at("epsilon").get<double>();
  if (file_config.contains("gamma")) gamma_flag = file_config.at("gamma").get<double>();
  if (file_config.contains("omega")) omega_flag = file_config.at("omega").get<double>();

  std::string config_path;  // consumed by the pre-scan; registered for --help
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  app.add_option("--seed", config.seed, "random seed")->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads (0: hardware)")
      ->capture_default_str();
  app.add_flag("--json", config.json, "emit JSON instead of CSV");
  app.add_option("--output", config.output, "output path (default: stdout)");

  auto add_model_flags = [&](CLI::App* cmd, const std::vector<std::string>& allowed) {
    cmd->add_option("--model", model_tag, "model name")
        ->check(CLI::IsMember(allowed))
        ->default_str("tfim");
    cmd->add_option("--spins", config.spins, "TFIM lattice size")
        ->check(CLI::IsMember({2, 4, 6}))
        ->capture_default_str();
    cmd->add_option("--j", config.coupling, "TFIM coupling J")->capture_default_str();
    cmd->add_option("--h", config.field, "TFIM transverse field h")->capture_default_str();
    cmd->add_option("--dephasing", config.dephasing, "TFIM dephasing rate")
        ->capture_default_str();
  };
  auto add_time = [&](CLI::App* cmd, const char* default_help) {
    cmd->add_option("--t", t_flag, "simulation time (dimensionless)")
        ->default_str(default_help);
  };
  auto add_epsilon = [&](CLI::App* cmd, const char* default_help) {
    cmd->add_option("--epsilon", epsilon_flag, "target accuracy")->default_str(default_help);
  };
  auto add_convention = [&](CLI::App* cmd) {
    cmd->add_option("--convention", convention_tag, "per-term norm budget")
        ->check(CLI::IsMember({"tight", "paper-ising"}))
        ->default_str("tight");
  };

  CLI::App* estimate = app.add_subcommand("estimate", "step-count tables for the bounds");
  add_model_flags(estimate, {"tfim", "encoding"});
  add_time(estimate, "1");
  add_epsilon(estimate, "1e-06");
  add_convention(estimate);
  estimate->add_option("--gamma", gamma_flag, "raw mode: Gamma");
  estimate->add_option("--omega", omega_flag, "raw mode: Omega");
  estimate->add_option("--t-min", t_flag, "sweep start (log-spaced)");
  estimate->add_option("--t-max", config.t_max, "sweep end");
  estimate->add_option("--points", config.points, "sweep points")->default_str("7");
  estimate->add_option("--n", config.encode_n, "encoding dimension")->capture_default_str();
  estimate->add_option("--dist", dist_tag, "encoding data distribution")
      ->check(CLI::IsMember({"uniform-pm1", "uniform-01", "gauss"}))
      ->default_str("uniform-pm1");

  CLI::App* verify = app.add_subcommand("verify", "dense check of the tightened bound");
  add_model_flags(verify, {"tfim", "single-term", "two-term"});
  add_time(verify, "0.5");
  add_convention(verify);
  verify->add_option("--steps", config.step_grid, "step grid")
      ->default_str("4 16 64 256");

  CLI::App* sample = app.add_subcommand("sample", "trajectory sampling statistics");
  add_model_flags(sample, {"tfim", "single-term", "two-term"});
  add_time(sample, "0.2");
  sample->add_option("--steps", config.steps, "steps per trajectory")->capture_default_str();
  sample->add_option("--trajectories", config.trajectories, "trajectory count")
      ->capture_default_str();
  sample->add_flag("--timing", config.timing, "record wall-clock in the seconds column");

  CLI::App* encode = app.add_subcommand("encode", "data-encoding benchmark");
  add_time(encode, "1");
  add_epsilon(encode, "1e-07");
  encode->add_option("--n", config.encode_n, "data dimension")->capture_default_str();
  encode->add_option("--n-max", config.encode_n_max, "dimension sweep end");
  encode->add_option("--n-points", config.encode_points, "dimension sweep points")
      ->default_str("1");
  encode->add_option("--dist", dist_tag, "data distribution")
      ->check(CLI::IsMember({"uniform-pm1", "uniform-01", "gauss"}))
      ->default_str("uniform-pm1");
  encode->add_flag("--exact-check", config.exact_check,
                   "dense bound check of the sampled decomposition (l <= 3)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      out << sub->help();
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    config.convention = parse_convention(convention_tag);
    config.dist = parse_distribution(dist_tag);

    Table table;
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> meta = {
        {"seed", std::to_string(config.seed)}};

    if (estimate->parsed()) {
      config.command = Command::Estimate;
      const bool raw_given = gamma_flag.has_value() || omega_flag.has_value();
      const bool model_given = !model_tag.empty();
      if (raw_given && model_given) {
        err << "usage error: pass either --model or raw --gamma/--omega, not both\n";
        return kExitUsage;
      }
      if (raw_given) {
        config.model = ModelKind::Raw;
        config.gamma_raw = gamma_flag.value_or(0.0);
        config.omega_raw = omega_flag.value_or(0.0);
      } else {
        config.model = model_given ? parse_model(model_tag) : ModelKind::Tfim;
      }
      config.t = t_flag.value_or(1.0);
      config.epsilon = epsilon_flag.value_or(1e-6);
      if (config.t_max > 0.0 && config.points < 2) config.points = 7;
      meta.emplace_back("model", model_name(config.model));
      meta.emplace_back("convention", convention_name(config.convention));
      table = run_estimate(config, err);
    } else if (verify->parsed()) {
      config.command = Command::Verify;
      config.model = model_tag.empty() ? ModelKind::Tfim : parse_model(model_tag);
      config.t = t_flag.value_or(0.5);
      meta.emplace_back("model", model_name(config.model));
      meta.emplace_back("convention", convention_name(config.convention));
      meta.emplace_back("t", format_real(config.t));
      table = run_verify(config, err, pass);
    } else if (sample->parsed()) {
      config.command = Command::Sample;
      config.model = model_tag.empty() ? ModelKind::Tfim : parse_model(model_tag);
      config.t = t_flag.value_or(0.2);
      meta.emplace_back("model", model_name(config.model));
      meta.emplace_back("t", format_real(config.t));
      table = run_sample(config, err);
    } else {
      config.command = Command::Encode;
      config.model = ModelKind::Encoding;
      config.t = t_flag.value_or(1.0);
      config.epsilon = epsilon_flag.value_or(1e-7);
      meta.emplace_back("dist", dist_tag);
      meta.emplace_back("t", format_real(config.t));
      table = run_encode(config, err, pass);
    }

    OutputTarget target = open_output(config.output, out);
    if (config.json) {
      write_json(table, *target.stream, meta);
    } else {
      write_csv(table, *target.stream);
    }
    return pass ? kExitOk : kExitVerifyFailed;
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
    return kExitSize;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qdriftlab::cli
