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

#include "qdriftlab/channels.hpp"

#include <cmath>
#include <string>

namespace qdriftlab {

namespace {

constexpr Complex kImag{0.0, 1.0};

}  // namespace

Superoperator::Superoperator(Index d, ComplexMatrix m) : dim(d), mat(std::move(m)) {
  if (d <= 0) throw ShapeError("Superoperator: dimension must be positive");
  if (mat.rows() != d * d || mat.cols() != d * d) {
    throw ShapeError("Superoperator: matrix must be " + std::to_string(d * d) + "x" +
                     std::to_string(d * d) + ", got " + std::to_string(mat.rows()) + "x" +
                     std::to_string(mat.cols()));
  }
}

Superoperator Superoperator::identity(Index d) {
  return {d, ComplexMatrix::Identity(d * d, d * d)};
}

Superoperator Superoperator::zero(Index d) {
  return {d, ComplexMatrix::Zero(d * d, d * d)};
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : dim(m.rows()), mat(std::move(m)) {
  if (mat.rows() != mat.cols() || mat.rows() == 0) {
    throw ShapeError("DensityMatrix: matrix must be square and nonempty");
  }
  if (!all_finite(mat)) throw DomainError("DensityMatrix: entries must be finite");
  if (!is_hermitian(mat, 1e-12)) {
    throw DomainError("DensityMatrix: not Hermitian within 1e-12");
  }
  if (std::abs(mat.trace() - Complex{1.0, 0.0}) > 1e-12) {
    throw DomainError("DensityMatrix: trace differs from 1 beyond 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("DensityMatrix: negative eigenvalue below -1e-10");
  }
}

Superoperator commutator_superop(const ComplexMatrix& h, double herm_tol) {
  if (h.rows() != h.cols()) throw ShapeError("commutator_superop: H must be square");
  if (!is_hermitian(h, herm_tol)) {
    throw DomainError("commutator_superop: H must be Hermitian within tolerance");
  }
  const Index d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return {d, -kImag * (kron(id, h) - kron(h.transpose(), id))};
}

Superoperator dissipator_superop(const ComplexMatrix& l) {
  if (l.rows() != l.cols()) throw ShapeError("dissipator_superop: L must be square");
  const Index d = l.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix ldl = l.adjoint() * l;
  return {d, kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id)};
}

Superoperator channel_exp(const Superoperator& g, double tau) {
  if (!(tau >= 0.0)) {
    throw DomainError("channel_exp: tau must be nonnegative (only forward evolution)");
  }
  return {g.dim, matrix_exp(tau * g.mat)};
}

ChoiMatrix choi(const Superoperator& s) {
  const Index d = s.dim;
  ComplexMatrix j(d * d, d * d);
  // J[(i,k),(j,l)] = S[(i,j),(k,l)] / d with vec-index (r,c) = r + d*c and
  // tensor row index i*d + k (map on the first factor).
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k)
      for (Index jj = 0; jj < d; ++jj)
        for (Index l = 0; l < d; ++l)
          j(i * d + k, jj * d + l) = s.mat(i + d * jj, k + d * l) / static_cast<double>(d);
  return {d, std::move(j)};
}

ComplexMatrix partial_trace_first(const ComplexMatrix& j, Index d) {
  if (j.rows() != d * d || j.cols() != d * d) {
    throw ShapeError("partial_trace_first: matrix must be d^2 x d^2");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k)
      for (Index l = 0; l < d; ++l) out(k, l) += j(i * d + k, i * d + l);
  return out;
}

CptpReport cptp_report(const Superoperator& s, double tol) {
  if (!(tol > 0.0)) throw DomainError("cptp_report: tol must be positive");
  const ChoiMatrix j = choi(s);
  CptpReport report;

  const ComplexMatrix jh = 0.5 * (j.mat + j.mat.adjoint());
  const double herm_dev = (j.mat - j.mat.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(jh, Eigen::EigenvaluesOnly);
  report.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  // A non-Hermitian Choi matrix cannot come from a completely positive map.
  report.completely_positive = report.min_choi_eigenvalue >= -tol && herm_dev <= tol;

  const ComplexMatrix reduced = partial_trace_first(j.mat, s.dim);
  const ComplexMatrix target =
      ComplexMatrix::Identity(s.dim, s.dim) / static_cast<double>(s.dim);
  report.trace_deviation = (reduced - target).cwiseAbs().maxCoeff();
  report.trace_preserving = report.trace_deviation <= tol;
  return report;
}

bool is_cptp(const Superoperator& s, double tol) {
  return cptp_report(s, tol).ok();
}

Superoperator compose_pow(const Superoperator& s, std::uint64_t n) {
  Superoperator result = Superoperator::identity(s.dim);
  ComplexMatrix base = s.mat;
  while (n > 0) {
    if (n & 1) result.mat = result.mat * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& rho) {
  if (rho.rows() != s.dim || rho.cols() != s.dim) {
    throw ShapeError("apply: operator is " + std::to_string(rho.rows()) + "x" +
                     std::to_string(rho.cols()) + " but the map acts on dimension " +
                     std::to_string(s.dim));
  }
  return unvec(ComplexVector(s.mat * vec(rho)), s.dim);
}

ComplexMatrix apply(const Superoperator& s, const DensityMatrix& rho) {
  return apply(s, rho.mat);
}

}  // namespace qdriftlab
