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
#include <string>
#include <string_view>
#include <vector>

#include "qdriftlab/channels.hpp"
#include "qdriftlab/models.hpp"

namespace qdriftlab {

enum class BoundMethod { ChoiSandwich, SeesawRefined };

std::string bound_method_name(BoundMethod m);

/// Certified bracket for a diamond norm: lower <= ||S||_diamond <= upper.
struct DiamondNormBounds {
  double lower = 0.0;
  double upper = 0.0;
  BoundMethod method = BoundMethod::ChoiSandwich;
};

/// ||J||_1 <= ||S||_diamond <= d ||J||_1 for the trace-one Choi
/// normalization.
DiamondNormBounds choi_sandwich(const Superoperator& s);

struct SeesawOptions {
  int restarts = 16;
  int max_iters = 200;
  double tol = 1e-12;
  std::uint64_t seed = 0;
};

/// Objective values per restart, in iteration order. Each sequence is
/// nondecreasing (alternating maximization).
struct SeesawTrace {
  std::vector<std::vector<double>> objectives;
};

/// Iterative lower bound on the diamond norm of a Hermiticity-preserving
/// map: alternating maximization of ||(S (x) id)(psi psi^dag)||_1 over unit
/// vectors on the doubled space. The first restart starts at the maximally
/// entangled vector, so the result is never below the sandwich lower bound;
/// the upper bound is inherited from the sandwich.
DiamondNormBounds seesaw_lower(const Superoperator& s, const SeesawOptions& options = {},
                               SeesawTrace* trace = nullptr);

/// Per-term diamond-norm budget nu_k used by the step estimators. `tight`
/// is 2||H|| for commutator terms and 2||L||^2 for dissipators; `paper-ising`
/// assigns the flat value 4 to every term.
enum class NormConvention { Tight, PaperIsing };

NormConvention parse_convention(std::string_view tag);
std::string convention_name(NormConvention c);

double term_norm_bound(const GeneratorTerm& term, NormConvention convention);

/// sum_k lambda_k nu_k^2 for the decomposition.
double sum_lambda_nu_sq(const GeneratorDecomposition& decomp, NormConvention convention);

/// Omega = max_k nu_k.
double max_term_norm_bound(const GeneratorDecomposition& decomp, NormConvention convention);

}  // namespace qdriftlab
