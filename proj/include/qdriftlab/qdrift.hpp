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
#include <memory>
#include <vector>

#include "qdriftlab/channels.hpp"
#include "qdriftlab/models.hpp"
#include "qdriftlab/norms.hpp"

namespace qdriftlab {

/// Ceiling that snaps to the nearest integer when x sits within a few ulps
/// of it, so formula values that are exact integers in real arithmetic do
/// not round up by one. Returns an integer-valued double (exact up to 2^53).
double ceil_guarded(double x);

/// Cache of the per-term channel factors exp(tau * L_k); the averaged
/// channel and trajectory sampling share these n exponentials.
class TermExponentials {
 public:
  TermExponentials(const GeneratorDecomposition& decomp, double tau);

  Index dim() const { return dim_; }
  double tau() const { return tau_; }
  Index count() const { return static_cast<Index>(factors_.size()); }
  const ComplexMatrix& factor(Index k) const { return factors_[static_cast<std::size_t>(k)]; }

 private:
  Index dim_;
  double tau_;
  std::vector<ComplexMatrix> factors_;
};

/// The exact averaged single-step channel E(tau) = sum_k p_k exp(tau L_k).
Superoperator exact_qdrift_channel(const GeneratorDecomposition& decomp, double tau);
Superoperator exact_qdrift_channel(const TermExponentials& cache,
                                   const std::vector<double>& probs);

/// N term indices drawn independently with probabilities p_k from the
/// counter stream (seed, stream): identical arguments, identical output.
std::vector<int> sample_indices(const GeneratorDecomposition& decomp, std::uint64_t n,
                                std::uint64_t seed, std::uint64_t stream = 0);

struct Trajectory {
  std::vector<int> indices;
  Superoperator channel;  // ordered product, latest factor applied on the left
};

Trajectory sample_trajectory(const GeneratorDecomposition& decomp, double tau, std::uint64_t n,
                             std::uint64_t seed, std::uint64_t stream = 0);
Trajectory sample_trajectory(const TermExponentials& cache, const std::vector<double>& probs,
                             std::uint64_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Executable protocol description: N applications of E(tau) with
/// tau = t*Gamma/N.
struct QDriftPlan {
  std::uint64_t steps = 1;
  double tau = 0.0;
  std::vector<double> probs;
  std::shared_ptr<const GeneratorDecomposition> decomp;
};

QDriftPlan make_plan(GeneratorDecomposition decomp, double t, std::uint64_t steps);

/// ceil((t*Gamma*Omega)^2 / eps): the original step count.
double steps_old(double t, double gamma, double omega, double eps);

/// (t*Gamma*Omega)^2 / r * exp(t*Gamma*Omega / r): the pre-simplification
/// form of the original error bound.
double old_bound_value(double t, double gamma, double omega, double r);

/// ceil(t^2/eps * sum_k lambda_k nu_k^2): the tightened step count.
double steps_new(double t, const GeneratorDecomposition& decomp, double eps,
                 NormConvention convention);
double steps_new_from_sum(double t, double lambda_nu_sq_sum, double eps);

/// ceil(4 t^2 Gamma / eps): the closed-system specialization.
double steps_corollary(double t, double gamma, double eps);

/// Certified check of the tightened bound at one step count.
struct BoundReport {
  std::uint64_t steps = 0;
  double t = 0.0;
  double tau = 0.0;                // per-application duration t*Gamma/steps
  double lhs_lower = 0.0;          // certified lower bound on ||Lambda(t) - E^N||_diamond
  double lhs_upper = 0.0;
  double rhs_theorem = 0.0;        // t^2 * sum lambda nu^2 * Gamma / N
  double per_step_lhs_lower = 0.0; // certified lower bound on ||Lambda(t/N) - E(tau)||_diamond
  double per_step_rhs = 0.0;       // tau^2 * sum p nu^2 = rhs_theorem / N
  bool pass = false;               // lhs_lower <= rhs_theorem
};

struct VerifyOptions {
  NormConvention convention = NormConvention::Tight;
  SeesawOptions seesaw{};
  bool refine_lower = true;  // tighten the certified lower bounds by see-saw
  Index max_dim = 16;        // dense verification cap (d <= 16 by default)
};

/// Builds Lambda(t) and the N-step protocol channel exactly, brackets the
/// diamond-norm error and the per-step error, and compares against the
/// tightened bound. The protocol applies an integer number of steps N with
/// per-application duration t*Gamma/N; the reported right side is scaled to
/// that mapping (rhs = t^2 sum(lambda nu^2) Gamma / N).
BoundReport verify_bound(const GeneratorDecomposition& decomp, double t, std::uint64_t steps,
                         const VerifyOptions& options = {});

}  // namespace qdriftlab
