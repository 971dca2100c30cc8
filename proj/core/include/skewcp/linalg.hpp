#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace skewcp {

using Complex = std::complex<double>;

/// The universal currency for every represented operator. Column-major sparse
/// storage: almost every generator in this library is a partial permutation.
using Matrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

Matrix identity_matrix(Index n);
Matrix zero_matrix(Index n);
Matrix matrix_unit(Index n, Index row, Index col);

Matrix adjoint(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Entrywise max |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& m);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

/// Largest singular value.
double operator_norm(const Matrix& m);
double operator_norm(const DenseMatrix& m);

/// Drops explicit entries of magnitude <= tol.
Matrix pruned(const Matrix& m, double tol = 1e-14);

/// Sum with weights; all terms share a dimension.
Matrix linear_combination(const std::vector<Matrix>& terms, const std::vector<Complex>& weights);

}  // namespace skewcp
