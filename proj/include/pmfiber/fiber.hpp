#pragma once

// Fibers of the principal minor map: cut detection, the single-point
// classifier, and explicit second fiber points for the multi-point cases.

#include <optional>
#include <string>
#include <vector>

#include "pmfiber/equiv.hpp"
#include "pmfiber/index_set.hpp"
#include "pmfiber/matrix.hpp"
#include "pmfiber/mpoly.hpp"
#include "pmfiber/structure.hpp"
#include "pmfiber/symdet.hpp"

namespace pmfiber {

// X with 2 <= |X| <= n-2 and rank A[X,X^c] <= 1, rank A[X^c,X] <= 1.
struct CutCertificate {
  IndexSet x;
  int rank_x_xc = 0;
  int rank_xc_x = 0;
};

// Each cut is reported once, by its smaller side (the side holding index 1
// when both halves have equal size). Sorted lexicographically.
template <typename S>
std::vector<CutCertificate> find_cuts(const SquareMatrix<S>& a, const Limits& limits = {});

// Factorization of the off-diagonal blocks of an adjugate table along a cut:
//   G_ij = (-1)^i a_i b_j   for i in X, j in X^c,
//   G_ij = (-1)^j c_i d_j   for i in X^c, j in X,
// with i, j read as 1-based labels. a and d are indexed by X, b and c by X^c;
// the vectors have n slots and the unused ones hold zero polynomials.
template <typename S>
struct FactorSplit {
  IndexSet x;
  std::vector<MPoly<S>> a, b, c, d;
  // Values substituted for the variables while reading off b and c.
  std::vector<S> point;
  int attempts = 0;
};

// Evaluation points tried in order: (1, 2, ..., n), then runs of consecutive
// primes starting at 2, 3, 5, ...; 8 attempts in total.
inline constexpr int kSplitAttempts = 8;
template <typename S>
std::vector<S> generic_point(int n, int attempt);

template <typename S>
FactorSplit<S> rank_one_split(const AdjugateTable<S>& g, IndexSet x);

// Whether a_i / d_i is constant for every i in X, and b_j / c_j for every j
// in X^c. Both holding means A is symmetrizable. Exactly one holding means
// the two swaps land in the classes of A and A^T, so neither gives a new
// fiber point.
struct SplitProportionality {
  bool a_d = false;
  bool b_c = false;
};

template <typename S>
SplitProportionality split_proportionality(const FactorSplit<S>& s);

template <typename S>
struct SwapWitness {
  SquareMatrix<S> matrix;
  IndexSet cut;
  // The swap moving a and d was needed because the first swap gave an
  // equivalent matrix.
  bool fallback = false;
  // The swapped adjugate table, in the original labels.
  AdjugateTable<S> table;
};

// Second fiber point for an irreducible, non-symmetrizable matrix with cut X
// (n >= 4). The result has the same principal minors as A and is not
// diagonally equivalent to it; both facts are checked before returning.
template <typename S>
SwapWitness<S> cut_swap_witness(const SquareMatrix<S>& a, IndexSet x);

// Second fiber point for a reducible matrix: the block above the first
// Frobenius block is replaced by its complementary 0/1 pattern.
template <typename S>
SquareMatrix<S> reducible_witness(const SquareMatrix<S>& a);

enum class FiberVerdict { SinglePoint, MultiPoint };
enum class FiberReason { Reducible, HasCutNotSymmetrizable, NoCut, Symmetrizable, SmallN };

const char* fiber_verdict_name(FiberVerdict v);
const char* fiber_reason_name(FiberReason r);

template <typename S>
struct FiberClassification {
  FiberVerdict verdict = FiberVerdict::SinglePoint;
  FiberReason reason = FiberReason::SmallN;
  std::optional<CutCertificate> cut;
  std::optional<SquareMatrix<S>> witness;
  bool fallback_swap = false;
  // Set when the reason is Symmetrizable.
  std::optional<SymmetrizationVerdict> symmetrization;
  std::string note;
};

template <typename S>
FiberClassification<S> classify_fiber(const SquareMatrix<S>& a, const Limits& limits = {});

template <typename S>
struct SymmetricFiberDescription {
  bool irreducible = false;
  // Block template; a single block without free positions when irreducible.
  FiberShape<S> shape;
  std::string summary;
};

template <typename S>
SymmetricFiberDescription<S> symmetric_fiber_describe(const SquareMatrix<S>& a, const Limits& limits = {});

struct BlockHermitianCertificate {
  IndexSet block;
  SquareMatrix<Gaussian> matrix;
  MPoly<Gaussian> fpoly;
  SymmetrizabilityResult<Gaussian> result;
};

struct StableCertificate {
  bool certified = false;
  std::vector<BlockHermitianCertificate> blocks;
  // Position in `blocks` of the first block without a Hermitian certificate.
  std::optional<int> failing_block;
  MPoly<Gaussian> fpoly;
  bool product_matches = false;
};

// Structural certificate that f_A is real stable: every Frobenius block is
// diagonally equivalent to a Hermitian matrix.
StableCertificate stable_certify(const SquareMatrix<Gaussian>& a, const Limits& limits = {});

}  // namespace pmfiber
