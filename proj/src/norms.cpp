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

#include "qdriftlab/norms.hpp"

#include <cmath>

#include "qdriftlab/rng.hpp"

namespace qdriftlab {

std::string bound_method_name(BoundMethod m) {
  return m == BoundMethod::ChoiSandwich ? "choi-sandwich" : "seesaw-refined";
}

DiamondNormBounds choi_sandwich(const Superoperator& s) {
  const double lower = trace_norm(choi(s).mat);
  return {lower, static_cast<double>(s.dim) * lower, BoundMethod::ChoiSandwich};
}

namespace {

/// (S (x) id) applied to a (d*d) x (d*d) operator on system (x) ancilla,
/// slice by slice over the ancilla indices.
ComplexMatrix apply_extended(const ComplexMatrix& superop, const ComplexMatrix& y, Index d) {
  ComplexMatrix out(d * d, d * d);
  ComplexMatrix slice(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      for (Index i = 0; i < d; ++i)
        for (Index jj = 0; jj < d; ++jj) slice(i, jj) = y(i * d + a, jj * d + b);
      const ComplexMatrix mapped = unvec(ComplexVector(superop * vec(slice)), d);
      for (Index i = 0; i < d; ++i)
        for (Index jj = 0; jj < d; ++jj) out(i * d + a, jj * d + b) = mapped(i, jj);
    }
  }
  return out;
}

ComplexVector maximally_entangled_vector(Index d) {
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return omega;
}

ComplexVector random_unit_vector(Index size, const CounterRng& rng, std::uint64_t offset) {
  ComplexVector v(size);
  for (Index i = 0; i < size; ++i) {
    const auto [re, im] = rng.gaussian_pair(offset + static_cast<std::uint64_t>(i));
    v(i) = Complex{re, im};
  }
  const double norm = v.norm();
  if (norm == 0.0) v(0) = 1.0; else v /= norm;
  return v;
}

}  // namespace

DiamondNormBounds seesaw_lower(const Superoperator& s, const SeesawOptions& options,
                               SeesawTrace* trace) {
  if (options.restarts < 1 || options.max_iters < 1 || !(options.tol > 0.0)) {
    throw DomainError("seesaw_lower: restarts, max_iters and tol must be positive");
  }
  const Index d = s.dim;
  const ChoiMatrix j = choi(s);
  if ((j.mat - j.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("seesaw_lower: map is not Hermiticity-preserving within 1e-10 "
                      "(Choi matrix is not Hermitian)");
  }
  const DiamondNormBounds sandwich = choi_sandwich(s);
  const ComplexMatrix adjoint_superop = s.mat.adjoint();

  if (trace) trace->objectives.assign(static_cast<std::size_t>(options.restarts), {});
  const CounterRng rng(options.seed, /*stream=*/0x5ee5aa);

  double best = 0.0;
  for (int restart = 0; restart < options.restarts; ++restart) {
    ComplexVector psi =
        restart == 0 ? maximally_entangled_vector(d)
                     : random_unit_vector(d * d, rng,
                                          static_cast<std::uint64_t>(restart) << 32);
    double previous = -1.0;
    for (int iter = 0; iter < options.max_iters; ++iter) {
      ComplexMatrix output = apply_extended(s.mat, psi * psi.adjoint(), d);
      output = 0.5 * (output + output.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(output);
      const double objective = es.eigenvalues().cwiseAbs().sum();
      if (trace) trace->objectives[static_cast<std::size_t>(restart)].push_back(objective);
      best = std::max(best, objective);
      if (previous >= 0.0 && std::abs(objective - previous) < options.tol) break;
      previous = objective;

      // Sign decomposition of the output, with sign(0) := +1.
      const Eigen::VectorXd signs =
          es.eigenvalues().unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
      const ComplexMatrix m =
          es.eigenvectors() * signs.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
      ComplexMatrix k = apply_extended(adjoint_superop, m, d);
      k = 0.5 * (k + k.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ek(k);
      psi = ek.eigenvectors().col(d * d - 1);  // eigenvalues sorted ascending
    }
  }
  return {best, sandwich.upper, BoundMethod::SeesawRefined};
}

NormConvention parse_convention(std::string_view tag) {
  if (tag == "tight") return NormConvention::Tight;
  if (tag == "paper-ising") return NormConvention::PaperIsing;
  throw DomainError("unknown norm convention '" + std::string(tag) +
                    "' (expected 'tight' or 'paper-ising')");
}

std::string convention_name(NormConvention c) {
  return c == NormConvention::Tight ? "tight" : "paper-ising";
}

double term_norm_bound(const GeneratorTerm& term, NormConvention convention) {
  if (convention == NormConvention::PaperIsing) return 4.0;
  const double norm = spectral_norm(term.op);
  return term.kind == TermKind::Hamiltonian ? 2.0 * norm : 2.0 * norm * norm;
}

double sum_lambda_nu_sq(const GeneratorDecomposition& decomp, NormConvention convention) {
  double sum = 0.0;
  for (const auto& term : decomp.terms) {
    const double nu = term_norm_bound(term, convention);
    sum += term.lambda * (nu * nu);
  }
  return sum;
}

double max_term_norm_bound(const GeneratorDecomposition& decomp, NormConvention convention) {
  double omega = 0.0;
  for (const auto& term : decomp.terms) {
    omega = std::max(omega, term_norm_bound(term, convention));
  }
  return omega;
}

}  // namespace qdriftlab
