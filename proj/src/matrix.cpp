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

#include "qdriftlab/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qdriftlab {

Index max_dense_dim() {
  static const Index cached = [] {
    if (const char* env = std::getenv("QDRIFT_LAB_MAX_DIM")) {
      char* end = nullptr;
      const long long v = std::strtoll(env, &end, 10);
      if (end != env && v > 0) return static_cast<Index>(v);
    }
    return kDefaultMaxDenseDim;
  }();
  return cached;
}

bool all_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index cap = max_dense_dim();
  const unsigned __int128 rows =
      static_cast<unsigned __int128>(a.rows()) * static_cast<unsigned __int128>(b.rows());
  const unsigned __int128 cols =
      static_cast<unsigned __int128>(a.cols()) * static_cast<unsigned __int128>(b.cols());
  const unsigned __int128 entries = rows * cols;
  const unsigned __int128 max_entries =
      static_cast<unsigned __int128>(cap) * static_cast<unsigned __int128>(cap);
  if (entries > max_entries) {
    throw SizeError("kron: result of " + std::to_string(a.rows() * a.cols()) + "x" +
                    std::to_string(b.rows() * b.cols()) +
                    " entries exceeds the dense cap (" + std::to_string(cap) + "^2 entries); "
                    "set QDRIFT_LAB_MAX_DIM to override");
  }
  return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("matrix_exp: matrix must be square, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (a.rows() > max_dense_dim()) {
    throw SizeError("matrix_exp: dimension " + std::to_string(a.rows()) +
                    " exceeds the dense cap " + std::to_string(max_dense_dim()));
  }
  return a.exp();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (a.rows() == a.cols() &&
      is_hermitian(a, 64.0 * std::numeric_limits<double>::epsilon() * scale)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (a.rows() == a.cols() &&
      is_hermitian(a, 64.0 * std::numeric_limits<double>::epsilon() * scale)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexVector vec(const ComplexMatrix& x) {
  // MatrixXcd is column-major, so the raw storage already is the
  // column-stacked order.
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index d) {
  if (v.size() != d * d) {
    throw ShapeError("unvec: vector of length " + std::to_string(v.size()) +
                     " does not reshape to " + std::to_string(d) + "x" + std::to_string(d));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix unvec(const ComplexVector& v) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw ShapeError("unvec: vector length " + std::to_string(v.size()) +
                     " is not a perfect square");
  }
  return unvec(v, d);
}

}  // namespace qdriftlab
