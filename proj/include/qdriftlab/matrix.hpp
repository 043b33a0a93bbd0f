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

#include <complex>

#include <Eigen/Dense>

#include "qdriftlab/errors.hpp"

namespace qdriftlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Largest admitted dense dimension per side. Defaults to 4096 (the six-spin
/// superoperator); QDRIFT_LAB_MAX_DIM overrides it. Larger requests raise
/// SizeError instead of silently swapping.
Index max_dense_dim();

inline constexpr Index kDefaultMaxDenseDim = 4096;

bool all_finite(const ComplexMatrix& a);

/// Kronecker product A (x) B. Rejects results whose entry count exceeds
/// max_dense_dim()^2 (2^24 entries at the default cap).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix exponential of a square matrix (scaling-and-squaring with Pade
/// approximants; order 13 at the largest scaled norms).
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// Sum of singular values. Hermitian inputs go through a direct eigenvalue
/// sum, everything else through an SVD.
double trace_norm(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);

/// Column-stacking vectorization: vec(X) stacks the columns of X top to
/// bottom, so vec(A X B) = (B^T (x) A) vec(X). This convention is fixed
/// project-wide; every superoperator formula assumes it.
ComplexVector vec(const ComplexMatrix& x);

/// Inverse of vec for a d*d-long vector.
ComplexMatrix unvec(const ComplexVector& v, Index d);

/// unvec with the side length inferred; the length must be a perfect square.
ComplexMatrix unvec(const ComplexVector& v);

}  // namespace qdriftlab
