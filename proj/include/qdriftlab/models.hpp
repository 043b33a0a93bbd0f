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

#include <string>
#include <utility>
#include <vector>

#include "qdriftlab/channels.hpp"
#include "qdriftlab/matrix.hpp"

namespace qdriftlab {

enum class PauliLetter : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

const ComplexMatrix& pauli_matrix(PauliLetter p);

/// Signed tensor product of single-qubit Pauli operators. The realized
/// matrix is Hermitian and unitary with spectral norm exactly 1; the sign
/// only carries an absorbed coefficient sign.
struct PauliString {
  Index qubits = 1;
  std::vector<PauliLetter> letters;
  int sign = +1;

  ComplexMatrix matrix() const;
  std::string name() const;  // e.g. "-XZY"
};

/// The first `count` strings of {I,X,Y,Z}^qubits in lexicographic order with
/// I < X < Y < Z, skipping the all-identity string. Deterministic.
std::vector<PauliString> enumerate_pauli_strings(Index qubits, Index count);

enum class TermKind { Hamiltonian, Dissipator };

/// One summand of a generator decomposition: lambda * term. Hamiltonian
/// payloads are Hermitian with unit spectral norm; dissipator payloads are
/// jump operators used as-is (their rate is the lambda).
struct GeneratorTerm {
  double lambda = 0.0;
  TermKind kind = TermKind::Hamiltonian;
  ComplexMatrix op;
  std::string label;
};

GeneratorTerm hamiltonian_term(double lambda, ComplexMatrix h, std::string label);
GeneratorTerm dissipator_term(double lambda, ComplexMatrix l, std::string label);

struct GeneratorDecomposition {
  Index dim = 0;
  std::vector<GeneratorTerm> terms;

  Index n() const { return static_cast<Index>(terms.size()); }
  double gamma() const;
  std::vector<double> probs() const;
};

/// Gamma = sum of the lambdas and the sampling probabilities p_k = lambda_k
/// over Gamma. Gamma must be positive.
std::pair<double, std::vector<double>> gamma_and_probs(const GeneratorDecomposition& decomp);

struct LatticeSpec {
  int sites = 0;
  std::vector<std::pair<int, int>> edges;
};

/// The built-in lattices: chain of 2 (1 edge), 2x2 grid (4 edges),
/// 2x3 grid (7 edges).
LatticeSpec builtin_lattice(int spins);

/// Transverse-field Ising model with local dephasing on an arbitrary
/// lattice: per edge a ZZ coupling of weight |J|, per site an X field of
/// weight |h| and a Z jump operator of rate gamma_rate. Coefficient signs
/// are absorbed into the Hermitian factors so every lambda is nonnegative;
/// zero-weight terms are dropped.
GeneratorDecomposition build_tfim_dephasing(const LatticeSpec& lattice, double j, double h,
                                            double gamma_rate);

/// Hamiltonian embedding of a real data vector: H = sum_i |x_i| sign(x_i) P_i
/// over the first N enumerated Pauli strings on max(1, ceil(log2 N)) qubits.
/// Zero components are dropped; an all-zero vector is rejected.
GeneratorDecomposition build_encoding_hamiltonian(const std::vector<double>& x);

/// Natural-representation superoperator of a single (lambda-free) term.
Superoperator term_superop(const GeneratorTerm& term, Index dim);

/// sum_k lambda_k * term_superop(k): the full generator.
Superoperator total_generator(const GeneratorDecomposition& decomp);

/// op acting on one site of a `sites`-qubit register (identity elsewhere).
ComplexMatrix single_site_operator(const ComplexMatrix& op, int site, int sites);

/// Number of qubits for an N-dimensional embedding: max(1, ceil(log2 N)).
Index encoding_qubits(Index n);

}  // namespace qdriftlab
