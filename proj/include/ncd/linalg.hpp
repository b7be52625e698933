#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ncd {

using Complex = std::complex<double>;

// Blocks of a sparse Hermitian matrix at most this size go to the dense
// eigensolver; larger blocks use power iteration.
inline constexpr Eigen::Index kDenseBlockLimit = 512;

/// Largest eigenvalue of a Hermitian positive semidefinite sparse matrix.
/// The matrix is split into the connected components of its sparsity graph
/// and each block is solved independently.
template <class Scalar>
double largest_eigenvalue_psd(const Eigen::SparseMatrix<Scalar> &h);

/// Spectral norm, via the Gram matrix A* A.
template <class Scalar>
double operator_norm(const Eigen::SparseMatrix<Scalar> &a);

/// Largest eigenvalue of a dense Hermitian matrix.
double largest_eigenvalue_hermitian(const Eigen::MatrixXcd &h);

/// Numerical rank with singular values below rel_tol * sigma_max dropped.
Eigen::Index numerical_rank(const Eigen::MatrixXcd &a, double rel_tol);

} // namespace ncd
