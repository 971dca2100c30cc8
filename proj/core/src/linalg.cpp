#include "skewcp/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

using Triplet = Eigen::Triplet<Complex>;

Matrix from_triplets(Index rows, Index cols, const std::vector<Triplet>& t) {
  Matrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

Matrix identity_matrix(Index n) {
  Matrix m(n, n);
  m.setIdentity();
  return m;
}

Matrix zero_matrix(Index n) { return Matrix(n, n); }

Matrix matrix_unit(Index n, Index row, Index col) {
  return from_triplets(n, n, {Triplet(row, col, Complex(1.0, 0.0))});
}

Matrix adjoint(const Matrix& m) { return Matrix(m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ka = 0; ka < a.outerSize(); ++ka) {
    for (Matrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Index kb = 0; kb < b.outerSize(); ++kb) {
        for (Matrix::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  return from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), t);
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() + b.nonZeros()));
  for (Index k = 0; k < a.outerSize(); ++k)
    for (Matrix::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (Index k = 0; k < b.outerSize(); ++k)
    for (Matrix::InnerIterator it(b, k); it; ++it)
      t.emplace_back(a.rows() + it.row(), a.cols() + it.col(), it.value());
  return from_triplets(a.rows() + b.rows(), a.cols() + b.cols(), t);
}

double max_abs(const Matrix& m) {
  double out = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (Matrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "comparing " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " with " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return max_abs(Matrix(a - b));
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

double operator_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  const DenseMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double operator_norm(const Matrix& m) { return operator_norm(DenseMatrix(m)); }

Matrix pruned(const Matrix& m, double tol) {
  Matrix out = m;
  out.prune([tol](Index, Index, const Complex& v) { return std::abs(v) > tol; });
  out.makeCompressed();
  return out;
}

Matrix linear_combination(const std::vector<Matrix>& terms, const std::vector<Complex>& weights) {
  if (terms.empty()) return Matrix();
  Matrix out(terms.front().rows(), terms.front().cols());
  for (std::size_t i = 0; i < terms.size(); ++i) out += weights[i] * terms[i];
  return out;
}

}  // namespace skewcp
