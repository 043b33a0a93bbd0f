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

#include "qdriftlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qdriftlab {

const ComplexMatrix& pauli_matrix(PauliLetter p) {
  static const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  static const ComplexMatrix sx = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
  static const ComplexMatrix sy =
      (ComplexMatrix(2, 2) << 0, Complex{0, -1}, Complex{0, 1}, 0).finished();
  static const ComplexMatrix sz = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
  switch (p) {
    case PauliLetter::I: return id;
    case PauliLetter::X: return sx;
    case PauliLetter::Y: return sy;
    case PauliLetter::Z: return sz;
  }
  throw DomainError("pauli_matrix: unknown letter");
}

ComplexMatrix PauliString::matrix() const {
  if (static_cast<Index>(letters.size()) != qubits || qubits < 1) {
    throw ShapeError("PauliString: letter count must equal the qubit count");
  }
  ComplexMatrix out = pauli_matrix(letters[0]);
  for (Index q = 1; q < qubits; ++q) out = kron(out, pauli_matrix(letters[q]));
  return static_cast<double>(sign) * out;
}

std::string PauliString::name() const {
  std::string s = sign < 0 ? "-" : "";
  for (PauliLetter p : letters) s += static_cast<char>(p);
  return s;
}

std::vector<PauliString> enumerate_pauli_strings(Index qubits, Index count) {
  if (qubits < 1) throw DomainError("enumerate_pauli_strings: need at least one qubit");
  if (qubits > 30) throw SizeError("enumerate_pauli_strings: qubit count too large");
  const Index available = (Index{1} << (2 * qubits)) - 1;  // 4^qubits minus identity
  if (count < 0 || count > available) {
    throw DomainError("enumerate_pauli_strings: only " + std::to_string(available) +
                      " non-identity strings exist on " + std::to_string(qubits) + " qubits");
  }
  static constexpr PauliLetter kOrder[4] = {PauliLetter::I, PauliLetter::X, PauliLetter::Y,
                                            PauliLetter::Z};
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index code = 1; code <= count; ++code) {
    // Base-4 digits of `code`, most significant qubit first, give the
    // lexicographic order with I < X < Y < Z.
    PauliString ps;
    ps.qubits = qubits;
    ps.letters.resize(static_cast<std::size_t>(qubits));
    Index rest = code;
    for (Index q = qubits - 1; q >= 0; --q) {
      ps.letters[static_cast<std::size_t>(q)] = kOrder[rest & 3];
      rest >>= 2;
    }
    out.push_back(std::move(ps));
  }
  return out;
}

GeneratorTerm hamiltonian_term(double lambda, ComplexMatrix h, std::string label) {
  if (!(lambda >= 0.0)) throw DomainError("hamiltonian_term: lambda must be nonnegative");
  if (!is_hermitian(h, 1e-12)) {
    throw DomainError("hamiltonian_term: payload must be Hermitian within 1e-12");
  }
  if (std::abs(spectral_norm(h) - 1.0) > 1e-12) {
    throw DomainError("hamiltonian_term: payload must have unit spectral norm within 1e-12");
  }
  return {lambda, TermKind::Hamiltonian, std::move(h), std::move(label)};
}

GeneratorTerm dissipator_term(double lambda, ComplexMatrix l, std::string label) {
  if (!(lambda >= 0.0)) throw DomainError("dissipator_term: lambda must be nonnegative");
  if (l.rows() != l.cols()) throw ShapeError("dissipator_term: jump operator must be square");
  return {lambda, TermKind::Dissipator, std::move(l), std::move(label)};
}

double GeneratorDecomposition::gamma() const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.lambda;
  return sum;
}

std::vector<double> GeneratorDecomposition::probs() const {
  return gamma_and_probs(*this).second;
}

std::pair<double, std::vector<double>> gamma_and_probs(const GeneratorDecomposition& decomp) {
  const double gamma = decomp.gamma();
  if (!(gamma > 0.0)) throw DomainError("gamma_and_probs: Gamma must be positive");
  std::vector<double> p;
  p.reserve(decomp.terms.size());
  for (const auto& term : decomp.terms) p.push_back(term.lambda / gamma);
  return {gamma, std::move(p)};
}

LatticeSpec builtin_lattice(int spins) {
  switch (spins) {
    case 2:
      return {2, {{0, 1}}};
    case 4:
      // 2x2 grid, sites row-major.
      return {4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}}};
    case 6:
      // 2x3 grid, sites row-major.
      return {6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}};
    default:
      throw DomainError("builtin_lattice: supported sizes are 2, 4, 6 "
                        "(build a LatticeSpec directly for other geometries)");
  }
}

namespace {

void validate_lattice(const LatticeSpec& lattice) {
  if (lattice.sites <= 0) throw DomainError("lattice must have at least one site");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : lattice.edges) {
    if (a == b) throw DomainError("lattice edge is a self-loop");
    if (a < 0 || b < 0 || a >= lattice.sites || b >= lattice.sites) {
      throw DomainError("lattice edge endpoint out of range");
    }
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw DomainError("duplicate lattice edge");
  }
}

}  // namespace

ComplexMatrix single_site_operator(const ComplexMatrix& op, int site, int sites) {
  if (site < 0 || site >= sites) throw DomainError("single_site_operator: site out of range");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < sites; ++q) {
    out = kron(out, q == site ? op : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

GeneratorDecomposition build_tfim_dephasing(const LatticeSpec& lattice, double j, double h,
                                            double gamma_rate) {
  validate_lattice(lattice);
  if (gamma_rate < 0.0) throw DomainError("build_tfim_dephasing: dephasing rate must be >= 0");

  const ComplexMatrix& sz = pauli_matrix(PauliLetter::Z);
  const ComplexMatrix& sx = pauli_matrix(PauliLetter::X);
  const int sites = lattice.sites;

  GeneratorDecomposition decomp;
  decomp.dim = Index{1} << sites;

  // H = -J sum_<i,j> Z_i Z_j - h sum_j X_j, with each coefficient sign
  // absorbed into the unit-norm Hermitian factor.
  if (j != 0.0) {
    const double sign = j > 0 ? -1.0 : 1.0;
    for (auto [a, b] : lattice.edges) {
      ComplexMatrix zz = single_site_operator(sz, a, sites);
      zz = zz * single_site_operator(sz, b, sites);
      decomp.terms.push_back(hamiltonian_term(
          std::abs(j), sign * zz, "ZZ(" + std::to_string(a) + "," + std::to_string(b) + ")"));
    }
  }
  if (h != 0.0) {
    const double sign = h > 0 ? -1.0 : 1.0;
    for (int q = 0; q < sites; ++q) {
      decomp.terms.push_back(hamiltonian_term(std::abs(h),
                                              sign * single_site_operator(sx, q, sites),
                                              "X(" + std::to_string(q) + ")"));
    }
  }
  if (gamma_rate > 0.0) {
    for (int q = 0; q < sites; ++q) {
      decomp.terms.push_back(dissipator_term(gamma_rate, single_site_operator(sz, q, sites),
                                             "dephase(" + std::to_string(q) + ")"));
    }
  }
  if (decomp.terms.empty()) {
    throw DomainError("build_tfim_dephasing: all couplings are zero");
  }
  return decomp;
}

Index encoding_qubits(Index n) {
  if (n < 1) throw DomainError("encoding_qubits: dimension must be positive");
  Index l = 0;
  while ((Index{1} << l) < n) ++l;
  return std::max<Index>(1, l);
}

GeneratorDecomposition build_encoding_hamiltonian(const std::vector<double>& x) {
  const auto n = static_cast<Index>(x.size());
  if (n < 1) throw DomainError("build_encoding_hamiltonian: empty data vector");
  const Index l = encoding_qubits(n);
  const auto strings = enumerate_pauli_strings(l, n);

  GeneratorDecomposition decomp;
  decomp.dim = Index{1} << l;
  for (Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    if (!std::isfinite(xi)) throw DomainError("build_encoding_hamiltonian: non-finite entry");
    if (xi == 0.0) continue;  // never sampled, would only inflate n
    PauliString ps = strings[static_cast<std::size_t>(i)];
    ps.sign = xi < 0 ? -1 : +1;
    decomp.terms.push_back(hamiltonian_term(std::abs(xi), ps.matrix(), ps.name()));
  }
  if (decomp.terms.empty()) {
    throw DomainError("build_encoding_hamiltonian: all components are zero (Gamma = 0)");
  }
  return decomp;
}

Superoperator term_superop(const GeneratorTerm& term, Index dim) {
  if (term.op.rows() != dim || term.op.cols() != dim) {
    throw ShapeError("term_superop: payload is " + std::to_string(term.op.rows()) + "x" +
                     std::to_string(term.op.cols()) + " but dimension " + std::to_string(dim) +
                     " was requested");
  }
  return term.kind == TermKind::Hamiltonian ? commutator_superop(term.op)
                                            : dissipator_superop(term.op);
}

Superoperator total_generator(const GeneratorDecomposition& decomp) {
  Superoperator total = Superoperator::zero(decomp.dim);
  for (const auto& term : decomp.terms) {
    total.mat += term.lambda * term_superop(term, decomp.dim).mat;
  }
  return total;
}

}  // namespace qdriftlab
