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

#include "qdriftlab/qdrift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdriftlab/rng.hpp"

namespace qdriftlab {

double ceil_guarded(double x) {
  if (!std::isfinite(x)) throw DomainError("ceil_guarded: non-finite value");
  const double nearest = std::nearbyint(x);
  const double guard = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(x);
  if (std::abs(x - nearest) <= guard) return nearest;
  return std::ceil(x);
}

TermExponentials::TermExponentials(const GeneratorDecomposition& decomp, double tau)
    : dim_(decomp.dim), tau_(tau) {
  if (!(tau >= 0.0)) throw DomainError("TermExponentials: tau must be nonnegative");
  factors_.reserve(decomp.terms.size());
  for (const auto& term : decomp.terms) {
    factors_.push_back(matrix_exp(tau * term_superop(term, decomp.dim).mat));
  }
}

Superoperator exact_qdrift_channel(const TermExponentials& cache,
                                   const std::vector<double>& probs) {
  if (static_cast<Index>(probs.size()) != cache.count()) {
    throw ShapeError("exact_qdrift_channel: probability count does not match term count");
  }
  const Index d = cache.dim();
  ComplexMatrix mix = ComplexMatrix::Zero(d * d, d * d);
  for (Index k = 0; k < cache.count(); ++k) {
    mix += probs[static_cast<std::size_t>(k)] * cache.factor(k);
  }
  return {d, std::move(mix)};
}

Superoperator exact_qdrift_channel(const GeneratorDecomposition& decomp, double tau) {
  if (!(tau >= 0.0)) throw DomainError("exact_qdrift_channel: tau must be nonnegative");
  return exact_qdrift_channel(TermExponentials(decomp, tau), decomp.probs());
}

namespace {

std::vector<double> cumulative(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    run += probs[k];
    cdf[k] = run;
  }
  cdf.back() = 1.0;  // absorb rounding so the last bin is always reachable
  return cdf;
}

int draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

std::vector<int> sample_indices(const GeneratorDecomposition& decomp, std::uint64_t n,
                                std::uint64_t seed, std::uint64_t stream) {
  const auto [gamma, probs] = gamma_and_probs(decomp);
  (void)gamma;
  const auto cdf = cumulative(probs);
  const CounterRng rng(seed, stream);
  std::vector<int> indices(n);
  for (std::uint64_t i = 0; i < n; ++i) indices[i] = draw(cdf, rng.uniform(i));
  return indices;
}

Trajectory sample_trajectory(const TermExponentials& cache, const std::vector<double>& probs,
                             std::uint64_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw DomainError("sample_trajectory: need at least one step");
  const auto cdf = cumulative(probs);
  const CounterRng rng(seed, stream);
  const Index d = cache.dim();
  Trajectory result{{}, Superoperator::identity(d)};
  result.indices.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const int k = draw(cdf, rng.uniform(i));
    result.indices[i] = k;
    result.channel.mat = cache.factor(k) * result.channel.mat;  // latest on the left
  }
  return result;
}

Trajectory sample_trajectory(const GeneratorDecomposition& decomp, double tau, std::uint64_t n,
                             std::uint64_t seed, std::uint64_t stream) {
  return sample_trajectory(TermExponentials(decomp, tau), decomp.probs(), n, seed, stream);
}

QDriftPlan make_plan(GeneratorDecomposition decomp, double t, std::uint64_t steps) {
  if (!(t >= 0.0)) throw DomainError("make_plan: t must be nonnegative");
  if (steps < 1) throw DomainError("make_plan: need at least one step");
  auto [gamma, probs] = gamma_and_probs(decomp);
  QDriftPlan plan;
  plan.steps = steps;
  plan.tau = t * gamma / static_cast<double>(steps);
  plan.probs = std::move(probs);
  plan.decomp = std::make_shared<const GeneratorDecomposition>(std::move(decomp));
  return plan;
}

double steps_old(double t, double gamma, double omega, double eps) {
  if (!(t > 0.0) || !(gamma > 0.0) || !(omega > 0.0) || !(eps > 0.0)) {
    throw DomainError("steps_old: all inputs must be positive");
  }
  const double product = t * gamma * omega;
  return std::max(1.0, ceil_guarded(product * product / eps));
}

double old_bound_value(double t, double gamma, double omega, double r) {
  if (!(t > 0.0) || !(gamma > 0.0) || !(omega > 0.0) || !(r > 0.0)) {
    throw DomainError("old_bound_value: all inputs must be positive");
  }
  const double x = t * gamma * omega / r;
  return x * x * r * std::exp(x);
}

double steps_new_from_sum(double t, double lambda_nu_sq_sum, double eps) {
  if (!(t > 0.0) || !(lambda_nu_sq_sum > 0.0) || !(eps > 0.0)) {
    throw DomainError("steps_new: all inputs must be positive");
  }
  return std::max(1.0, ceil_guarded(t * t / eps * lambda_nu_sq_sum));
}

double steps_new(double t, const GeneratorDecomposition& decomp, double eps,
                 NormConvention convention) {
  return steps_new_from_sum(t, sum_lambda_nu_sq(decomp, convention), eps);
}

double steps_corollary(double t, double gamma, double eps) {
  if (!(t > 0.0) || !(gamma > 0.0) || !(eps > 0.0)) {
    throw DomainError("steps_corollary: all inputs must be positive");
  }
  return std::max(1.0, ceil_guarded(4.0 * t * t * gamma / eps));
}

BoundReport verify_bound(const GeneratorDecomposition& decomp, double t, std::uint64_t steps,
                         const VerifyOptions& options) {
  if (!(t > 0.0)) throw DomainError("verify_bound: t must be positive");
  if (steps < 1) throw DomainError("verify_bound: need at least one step");
  if (decomp.dim > options.max_dim) {
    throw SizeError("verify_bound: dimension " + std::to_string(decomp.dim) +
                    " exceeds the dense verification cap " + std::to_string(options.max_dim) +
                    "; use the step estimators for larger systems");
  }

  const auto [gamma, probs] = gamma_and_probs(decomp);
  const double n = static_cast<double>(steps);
  const double tau = t * gamma / n;   // per-application duration
  const double eta = t / n;           // per-application share of exact time

  const Superoperator generator = total_generator(decomp);
  const Superoperator exact_total = channel_exp(generator, t);
  const TermExponentials cache(decomp, tau);
  const Superoperator step_channel = exact_qdrift_channel(cache, probs);
  const Superoperator protocol = compose_pow(step_channel, steps);

  const Superoperator total_diff{decomp.dim, exact_total.mat - protocol.mat};
  const Superoperator step_diff{decomp.dim,
                                channel_exp(generator, eta).mat - step_channel.mat};

  const DiamondNormBounds total_sandwich = choi_sandwich(total_diff);
  double lhs_lower = total_sandwich.lower;
  double per_step_lower = choi_sandwich(step_diff).lower;
  if (options.refine_lower) {
    lhs_lower = std::max(lhs_lower, seesaw_lower(total_diff, options.seesaw).lower);
    per_step_lower = std::max(per_step_lower, seesaw_lower(step_diff, options.seesaw).lower);
  }

  const double lambda_nu_sq = sum_lambda_nu_sq(decomp, options.convention);

  BoundReport report;
  report.steps = steps;
  report.t = t;
  report.tau = tau;
  report.lhs_lower = lhs_lower;
  report.lhs_upper = total_sandwich.upper;
  report.rhs_theorem = t * t * lambda_nu_sq * gamma / n;
  report.per_step_lhs_lower = per_step_lower;
  report.per_step_rhs = tau * tau * lambda_nu_sq / gamma;  // = rhs_theorem / N
  report.pass = report.lhs_lower <= report.rhs_theorem;
  return report;
}

}  // namespace qdriftlab
