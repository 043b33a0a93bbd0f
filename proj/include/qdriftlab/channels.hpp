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

#include "qdriftlab/matrix.hpp"

namespace qdriftlab {

/// Linear map on d x d operators in its natural (column-stacking)
/// representation: a d^2 x d^2 matrix acting on vec(rho).
struct Superoperator {
  Index dim = 0;
  ComplexMatrix mat;

  Superoperator(Index d, ComplexMatrix m);
  static Superoperator identity(Index d);
  static Superoperator zero(Index d);
};

/// d x d state: Hermitian (1e-12), unit trace (1e-12), eigenvalues >= -1e-10.
struct DensityMatrix {
  Index dim = 0;
  ComplexMatrix mat;

  explicit DensityMatrix(ComplexMatrix m);
};

/// Choi state of a map, normalized to trace one for channels:
/// J = (S (x) id)(|Omega><Omega|) with |Omega> = sum_i |ii>/sqrt(d).
/// The map acts on the FIRST tensor factor.
struct ChoiMatrix {
  Index dim = 0;
  ComplexMatrix mat;
};

struct CptpReport {
  bool completely_positive = false;
  bool trace_preserving = false;
  double min_choi_eigenvalue = 0.0;  // most negative Choi eigenvalue found
  double trace_deviation = 0.0;      // max entrywise |Tr_out J - I/d|
  bool ok() const { return completely_positive && trace_preserving; }
};

/// rho -> -i[H, rho] as -i(I (x) H - H^T (x) I). H must be Hermitian
/// within herm_tol.
Superoperator commutator_superop(const ComplexMatrix& h, double herm_tol = 1e-10);

/// rho -> L rho L^dag - {L^dag L, rho}/2 as
/// conj(L) (x) L - (I (x) L^dag L)/2 - ((L^dag L)^T (x) I)/2.
Superoperator dissipator_superop(const ComplexMatrix& l);

/// exp(tau * G). Only forward evolution (tau >= 0) is a channel.
Superoperator channel_exp(const Superoperator& g, double tau);

ChoiMatrix choi(const Superoperator& s);

/// Trace over the first tensor factor of a (d*d) x (d*d) matrix.
ComplexMatrix partial_trace_first(const ComplexMatrix& j, Index d);

/// Choi positivity plus trace preservation, each within tol.
CptpReport cptp_report(const Superoperator& s, double tol);
bool is_cptp(const Superoperator& s, double tol);

/// S^n by repeated squaring; n = 0 returns the identity map.
Superoperator compose_pow(const Superoperator& s, std::uint64_t n);

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& rho);
ComplexMatrix apply(const Superoperator& s, const DensityMatrix& rho);

}  // namespace qdriftlab
