#pragma once

// Dense exact matrices. A square matrix is an Eigen dynamic matrix over one
// of the exact scalar types; the helpers here are the exact replacements for
// Eigen's floating-point decompositions.

#include <Eigen/Core>
#include <span>
#include <vector>

#include "pmfiber/index_set.hpp"
#include "pmfiber/scalar.hpp"

namespace pmfiber {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Square by convention; `require_square` enforces it at API boundaries.
template <typename S>
using SquareMatrix = Matrix<S>;

template <typename S>
void require_square(const Matrix<S>& a, const char* what);

template <typename S>
S determinant(const Matrix<S>& a);

template <typename S>
int rank(const Matrix<S>& a);

template <typename S>
Matrix<S> submatrix(const Matrix<S>& a, IndexSet rows, IndexSet cols);

// Principal minor A_S; A_{} = 1.
template <typename S>
S principal_minor(const Matrix<S>& a, IndexSet s);

// Simultaneous row/column permutation: result(p, q) = a(order[p], order[q]).
template <typename S>
Matrix<S> permute_symmetric(const Matrix<S>& a, std::span<const int> order);

// Inverse of permute_symmetric for the same order.
template <typename S>
Matrix<S> unpermute_symmetric(const Matrix<S>& a, std::span<const int> order);

// D * a * D^{-1} with D = diag(d).
template <typename S>
Matrix<S> conjugate_by_diagonal(const Matrix<S>& a, std::span<const S> d);

template <typename S>
Matrix<S> conjugate_transpose(const Matrix<S>& a);

template <typename S>
bool is_symmetric(const Matrix<S>& a);

template <typename S>
bool is_hermitian(const Matrix<S>& a);

Matrix<Gaussian> to_gaussian(const Matrix<Rational>& a);

}  // namespace pmfiber
