#pragma once

// Diagonal equivalence: B = D A D^{-1} or B = D A^T D^{-1} for an invertible
// diagonal D. Every solver here returns a certificate that has already been
// checked entrywise against the inputs.

#include <optional>
#include <string>
#include <vector>

#include "pmfiber/matrix.hpp"

namespace pmfiber {

template <typename S>
struct DiagonalCertificate {
  std::vector<S> d;
  bool transposed = false;

  // B == D A D^{-1} (or D A^T D^{-1} when transposed), exactly.
  bool verifies(const SquareMatrix<S>& a, const SquareMatrix<S>& b) const;
};

// Searches the plain case first, then the transposed one. Ratios d_i/d_j are
// fixed by nonzero entries and propagated breadth-first over the undirected
// support; each connected component is scaled independently.
template <typename S>
std::optional<DiagonalCertificate<S>> diagonal_equivalence(const SquareMatrix<S>& a, const SquareMatrix<S>& b);

enum class SymmetrizationVerdict {
  SymmetricEquivalentOverField,
  SymmetricEquivalentOverQuadraticExtension,
  NotSymmetrizable,
};

const char* verdict_name(SymmetrizationVerdict v);

template <typename S>
struct SymmetrizabilityResult {
  SymmetrizationVerdict verdict = SymmetrizationVerdict::NotSymmetrizable;
  // e_i with e_i a_ij = e_j a_ji (conj(a_ji) in the Hermitian case); the
  // first index of each connected component of the support is normalized to 1.
  std::optional<std::vector<S>> e;
  // d with d_i^2 = e_i, present exactly when the verdict is OverField.
  std::optional<DiagonalCertificate<S>> witness;
  // D A D^{-1}, symmetric (or Hermitian), alongside the witness.
  std::optional<SquareMatrix<S>> symmetrized;
  std::string detail;

  bool symmetrizable() const { return verdict != SymmetrizationVerdict::NotSymmetrizable; }
};

// Diagonal similarity to a symmetric matrix. OverField when every e_i is a
// square in the scalar field.
template <typename S>
SymmetrizabilityResult<S> symmetrizability(const SquareMatrix<S>& a);

// Diagonal similarity to a Hermitian matrix over Q(i), with real positive e_i
// standing for |d_i|^2. OverField when every e_i is a rational square, so that
// D can be taken real.
SymmetrizabilityResult<Gaussian> hermitian_equivalence(const SquareMatrix<Gaussian>& a);

// For symmetric irreducible A and B with the same principal minors: the
// adjugate tables satisfy H_1j = alpha_1j G_1j, and B = D A D^{-1} with
// D = diag(1, 1/alpha_12, ..., 1/alpha_1n).
template <typename S>
DiagonalCertificate<S> recover_diag_from_fiber(const SquareMatrix<S>& a, const SquareMatrix<S>& b);

}  // namespace pmfiber
