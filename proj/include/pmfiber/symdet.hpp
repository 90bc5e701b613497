#pragma once

// Symbolic objects attached to a square matrix A:
//   * the principal minor vector (A_S) over all S subset of [n],
//   * the determinantal polynomial f_A = det(diag(x) + A),
//   * the adjugate table G = (diag(x) + A)^adj,
//   * the generalized Laplace expansion and the identities tying them together.

#include <string>
#include <vector>

#include "pmfiber/index_set.hpp"
#include "pmfiber/matrix.hpp"
#include "pmfiber/mpoly.hpp"

namespace pmfiber {

// Size limits; each is the largest n an operation accepts.
struct Limits {
  int principal_minors = 16;
  int adjugate = 12;
  int identities = 10;
  int classify = 12;
};

void check_size_limit(int n, int limit, const char* what);

// All 2^n principal minors, indexed by the bitmask of S.
template <typename S>
class PMVector {
 public:
  PMVector() = default;
  PMVector(int n, std::vector<S> values);

  int n() const { return n_; }
  const S& operator[](IndexSet s) const { return values_[s.bits()]; }
  const std::vector<S>& values() const { return values_; }

  friend bool operator==(const PMVector&, const PMVector&) = default;

 private:
  int n_ = 0;
  std::vector<S> values_;
};

template <typename S>
struct DeterminantalPencil {
  SquareMatrix<S> base;
  MPoly<S> fpoly;
};

// n x n matrix of polynomials in n variables. Holds adjugate tables and
// pencils diag(x) + A.
template <typename S>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(int n);

  int n() const { return n_; }
  MPoly<S>& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  const MPoly<S>& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }

  PolyMatrix transpose() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) { return multiply(a, b); }
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  static PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

  int n_ = 0;
  std::vector<MPoly<S>> entries_;
};

template <typename S>
using AdjugateTable = PolyMatrix<S>;

template <typename S>
PMVector<S> principal_minors(const SquareMatrix<S>& a, const Limits& limits = {});

template <typename S>
DeterminantalPencil<S> det_poly(const SquareMatrix<S>& a, const Limits& limits = {});

// diag(x_1..x_n) + A as a polynomial matrix.
template <typename S>
PolyMatrix<S> pencil_matrix(const SquareMatrix<S>& a);

// Entry (i, j) is the cofactor C_ji of diag(x) + A, expanded over subsets:
// the coefficient of prod_{k in S} x_k is the (j, i) cofactor of the
// principal submatrix of A on [n] \ S.
template <typename S>
AdjugateTable<S> adjugate_table(const SquareMatrix<S>& a, const Limits& limits = {});

// True when H * (diag(x) + B) == f * I exactly.
template <typename S>
bool satisfies_adjugate_identity(const AdjugateTable<S>& h, const SquareMatrix<S>& b, const MPoly<S>& f);

// Reads B off an adjugate table: B_ii is the coefficient of prod_{k != i} x_k
// in f, and B_ij (i != j) is minus the coefficient of prod_{k != i,j} x_k in
// H_ij. Throws VerificationError unless adjugate_table(B) == H and f_B == f.
template <typename S>
SquareMatrix<S> matrix_from_adjugate(const AdjugateTable<S>& h, const MPoly<S>& f);

// Sum over |T| = |S| of (-1)^{sum S + sum T} A[S,T] A[S^c,T^c].
template <typename S>
S laplace_expand(const SquareMatrix<S>& a, IndexSet s);

// Sign of the permutation sending sorted S to sorted T and sorted S^c to
// sorted T^c, as a subset of [n]. Computed by counting inversions and by the
// closed form (-1)^{sum S + sum T}; throws VerificationError if they differ.
int two_line_sign(int n, IndexSet s, IndexSet t);
int two_line_sign_by_inversions(int n, IndexSet s, IndexSet t);

enum class Identity { Dodgson, Resultant, Laplace, Adjugate };

const char* identity_name(Identity id);
Identity parse_identity(const std::string& name);

struct IdentityCheck {
  Identity identity;
  std::vector<int> indices;  // 0-based; for Laplace, the elements of S
  bool passed;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  std::size_t count(Identity id) const;
  std::size_t failures(Identity id) const;
  std::size_t failures() const;
  bool all_passed() const { return failures() == 0; }
};

// Checks Dodgson (Delta_ij(f) == G_ij G_ji for i != j), resultant
// (res_{x_k}(G_ij, f) == G_ik G_kj for distinct i, j, k), Laplace and the
// adjugate identity G * (diag(x) + A) == f * I.
//
// Laplace uses every S with 1 <= |S| <= n-1 when n <= 6, otherwise every S of
// size 1 or 2.
template <typename S>
IdentityReport verify_identities(const SquareMatrix<S>& a, const std::vector<Identity>& which,
                                 const Limits& limits = {});

}  // namespace pmfiber
