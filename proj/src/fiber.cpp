#include "pmfiber/fiber.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "pmfiber/error.hpp"

namespace pmfiber {
namespace {

constexpr std::array<long, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,  31,  37,  41,  43,  47,  53,
                                          59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

// (-1)^i for the 0-based index i read as the 1-based label i + 1.
int label_sign(int i) { return i % 2 == 0 ? -1 : 1; }

template <typename S>
MPoly<S> signed_poly(int sign, const MPoly<S>& p) {
  return sign > 0 ? p : -p;
}

template <typename S>
bool is_cut(const SquareMatrix<S>& a, IndexSet x, CutCertificate& cert) {
  const int n = static_cast<int>(a.rows());
  const IndexSet xc = x.complement(n);
  cert.x = x;
  cert.rank_x_xc = rank(submatrix(a, x, xc));
  if (cert.rank_x_xc > 1) return false;
  cert.rank_xc_x = rank(submatrix(a, xc, x));
  return cert.rank_xc_x <= 1;
}

// One attempt at the split; nullopt when the point is degenerate or a check
// fails.
template <typename S>
std::optional<FactorSplit<S>> split_at(const AdjugateTable<S>& g, IndexSet x, const std::vector<S>& point,
                                       std::string& reason) {
  const int n = g.n();
  const IndexSet xc = x.complement(n);
  const int i0 = x.min();
  const int j0 = xc.min();
  FactorSplit<S> split;
  split.x = x;
  split.point = point;
  split.a.assign(static_cast<std::size_t>(n), MPoly<S>(n));
  split.b = split.c = split.d = split.a;
  const std::span<const S> values(point);

  for (int j : xc.elements()) {
    split.b[static_cast<std::size_t>(j)] = g(i0, j).substitute(x, values);
    split.c[static_cast<std::size_t>(j)] = g(j, i0).substitute(x, values);
    if (split.b[static_cast<std::size_t>(j)].is_zero() || split.c[static_cast<std::size_t>(j)].is_zero()) {
      reason = "evaluation point annihilates a factor";
      return std::nullopt;
    }
  }
  try {
    for (int i : x.elements()) {
      split.a[static_cast<std::size_t>(i)] =
          signed_poly(label_sign(i), exact_divide(g(i, j0), split.b[static_cast<std::size_t>(j0)]));
      split.d[static_cast<std::size_t>(i)] =
          signed_poly(label_sign(i), exact_divide(g(j0, i), split.c[static_cast<std::size_t>(j0)]));
    }
  } catch (const InexactDivisionError&) {
    reason = "adjugate entry not divisible by the evaluated factor";
    return std::nullopt;
  }
  for (int i : x.elements()) {
    for (int j : xc.elements()) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (!(signed_poly(label_sign(i), split.a[ui] * split.b[uj]) == g(i, j)) ||
          !(signed_poly(label_sign(i), split.c[uj] * split.d[ui]) == g(j, i))) {
        reason = "factor products do not reproduce the adjugate table";
        return std::nullopt;
      }
    }
  }
  return split;
}

template <typename S>
SquareMatrix<S> recover_checked(const AdjugateTable<S>& h, const MPoly<S>& f) {
  SquareMatrix<S> b = matrix_from_adjugate(h, f);
  if (!satisfies_adjugate_identity(h, b, f)) throw VerificationError("cut_swap_witness: H (diag(x) + B) != f I");
  return b;
}

// Swapped table in the frame where X occupies the first k positions.
template <typename S>
AdjugateTable<S> swapped_table(const AdjugateTable<S>& g, const FactorSplit<S>& s, bool fallback) {
  const int n = g.n();
  AdjugateTable<S> h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const bool ix = s.x.contains(i);
      const bool jx = s.x.contains(j);
      if (ix && jx) {
        h(i, j) = fallback ? g(j, i) : g(i, j);
      } else if (!ix && !jx) {
        h(i, j) = fallback ? g(i, j) : g(j, i);
      } else if (ix) {
        h(i, j) = signed_poly(label_sign(i), fallback ? s.d[ui] * s.b[uj] : s.a[ui] * s.c[uj]);
      } else {
        h(i, j) = signed_poly(label_sign(j), fallback ? s.c[ui] * s.a[uj] : s.b[ui] * s.d[uj]);
      }
    }
  }
  return h;
}

template <typename S>
AdjugateTable<S> relabel_table(const AdjugateTable<S>& h, const std::vector<int>& order) {
  const int n = h.n();
  AdjugateTable<S> out(n);
  const std::span<const int> target(order);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      out(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(q)]) = h(p, q).rename(n, target);
    }
  }
  return out;
}

}  // namespace

const char* fiber_verdict_name(FiberVerdict v) { return v == FiberVerdict::SinglePoint ? "SinglePoint" : "MultiPoint"; }

const char* fiber_reason_name(FiberReason r) {
  switch (r) {
    case FiberReason::Reducible:
      return "Reducible";
    case FiberReason::HasCutNotSymmetrizable:
      return "HasCutNotSymmetrizable";
    case FiberReason::NoCut:
      return "NoCut";
    case FiberReason::Symmetrizable:
      return "Symmetrizable";
    case FiberReason::SmallN:
      return "SmallN";
  }
  return "?";
}

template <typename S>
std::vector<CutCertificate> find_cuts(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "find_cuts");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.principal_minors, "find_cuts");
  std::vector<CutCertificate> cuts;
  if (n < 4) return cuts;
  for_each_subset(IndexSet::all(n), [&](IndexSet x) {
    const int k = x.size();
    if (k < 2 || 2 * k > n) return;
    if (2 * k == n && !x.contains(0)) return;
    CutCertificate cert;
    if (is_cut(a, x, cert)) cuts.push_back(cert);
  });
  std::sort(cuts.begin(), cuts.end(), [](const CutCertificate& l, const CutCertificate& r) { return lex_less(l.x, r.x); });
  return cuts;
}

template <typename S>
std::vector<S> generic_point(int n, int attempt) {
  std::vector<S> p;
  for (int k = 0; k < n; ++k) {
    p.push_back(attempt == 0 ? S(k + 1) : S(kPrimes[static_cast<std::size_t>(attempt - 1 + k)]));
  }
  return p;
}

template <typename S>
FactorSplit<S> rank_one_split(const AdjugateTable<S>& g, IndexSet x) {
  const int n = g.n();
  if (x.empty() || !x.subset_of(IndexSet::all(n)) || x == IndexSet::all(n)) {
    throw PreconditionError("rank_one_split: X must be a proper nonempty subset of [n]");
  }
  std::string reason;
  for (int attempt = 0; attempt < kSplitAttempts; ++attempt) {
    auto split = split_at(g, x, generic_point<S>(n, attempt), reason);
    if (split) {
      split->attempts = attempt + 1;
      return *split;
    }
  }
  throw VerificationError("rank_one_split: no split along " + x.to_string() + " (" + reason + ")");
}

template <typename S>
SplitProportionality split_proportionality(const FactorSplit<S>& s) {
  const int n = static_cast<int>(s.a.size());
  SplitProportionality out{true, true};
  for (int i : s.x.elements()) {
    out.a_d = out.a_d && constant_ratio(s.a[static_cast<std::size_t>(i)], s.d[static_cast<std::size_t>(i)]).has_value();
  }
  for (int j : s.x.complement(n).elements()) {
    out.b_c = out.b_c && constant_ratio(s.b[static_cast<std::size_t>(j)], s.c[static_cast<std::size_t>(j)]).has_value();
  }
  return out;
}

template <typename S>
SwapWitness<S> cut_swap_witness(const SquareMatrix<S>& a, IndexSet x) {
  require_square(a, "cut_swap_witness");
  const int n = static_cast<int>(a.rows());
  if (n < 4) throw PreconditionError("cut_swap_witness: needs n >= 4");
  check_size_limit(n, Limits{}.classify, "cut_swap_witness");
  const int k = x.size();
  CutCertificate cert;
  if (!x.subset_of(IndexSet::all(n)) || k < 2 || k > n - 2 || !is_cut(a, x, cert)) {
    throw PreconditionError("cut_swap_witness: " + x.to_string() + " is not a cut");
  }
  if (!is_irreducible(a)) throw PreconditionError("cut_swap_witness: matrix is reducible");
  if (symmetrizability(a).symmetrizable()) throw PreconditionError("cut_swap_witness: matrix is symmetrizable");

  std::vector<int> order = x.elements();
  for (int j : x.complement(n).elements()) order.push_back(j);
  const SquareMatrix<S> ap = permute_symmetric(a, std::span<const int>(order));
  const AdjugateTable<S> g = adjugate_table(ap);
  const MPoly<S> f = det_poly(ap).fpoly;
  const FactorSplit<S> split = rank_one_split(g, IndexSet::all(k));
  const PMVector<S> minors = principal_minors(a);

  for (bool fallback : {false, true}) {
    const AdjugateTable<S> h = swapped_table(g, split, fallback);
    const SquareMatrix<S> b = unpermute_symmetric(recover_checked(h, f), std::span<const int>(order));
    if (!(principal_minors(b) == minors)) throw VerificationError("cut_swap_witness: principal minors changed");
    if (diagonal_equivalence(a, b)) continue;
    return {b, x, fallback, relabel_table(h, order)};
  }
  const SplitProportionality prop = split_proportionality(split);
  throw VerificationError(std::string("cut_swap_witness: both swaps are diagonally equivalent to the input (") +
                          (prop.a_d ? "a_i / d_i constant on X" : "a_i / d_i not constant on X") + ", " +
                          (prop.b_c ? "b_j / c_j constant on X^c" : "b_j / c_j not constant on X^c") + ")");
}

template <typename S>
SquareMatrix<S> reducible_witness(const SquareMatrix<S>& a) {
  require_square(a, "reducible_witness");
  const FrobeniusForm<S> form = frobenius_form(a);
  if (form.block_count() < 2) throw PreconditionError("reducible_witness: matrix is irreducible");
  const int n = static_cast<int>(a.rows());
  const IndexSet first = form.blocks.front();
  SquareMatrix<S> b = a;
  for (int i : first.elements()) {
    for (int j : first.complement(n).elements()) b(i, j) = is_zero(a(i, j)) ? S(1) : S(0);
  }
  if (!(principal_minors(b) == principal_minors(a))) throw VerificationError("reducible_witness: principal minors changed");
  if (diagonal_equivalence(a, b)) throw VerificationError("reducible_witness: witness is diagonally equivalent");
  return b;
}

template <typename S>
FiberClassification<S> classify_fiber(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "classify_fiber");
  const int n = static_cast<int>(a.rows());
  if (n < 1) throw PreconditionError("classify_fiber: empty matrix");
  check_size_limit(n, limits.classify, "classify_fiber");
  FiberClassification<S> out;
  if (!is_irreducible(a)) {
    out.verdict = FiberVerdict::MultiPoint;
    out.reason = FiberReason::Reducible;
    out.witness = reducible_witness(a);
    return out;
  }
  if (n <= 3) {
    out.verdict = FiberVerdict::SinglePoint;
    out.reason = FiberReason::SmallN;
    out.note = "n <= 3: no cut is possible and the fiber of an irreducible matrix is one class";
    return out;
  }
  const auto cuts = find_cuts(a, limits);
  if (!cuts.empty()) out.cut = cuts.front();
  const auto sym = symmetrizability(a);
  if (sym.symmetrizable()) {
    out.verdict = FiberVerdict::SinglePoint;
    out.reason = FiberReason::Symmetrizable;
    out.symmetrization = sym.verdict;
    if (sym.verdict == SymmetrizationVerdict::SymmetricEquivalentOverQuadraticExtension) {
      out.note = "the symmetrizing diagonal needs square roots outside the field";
    }
    return out;
  }
  if (cuts.empty()) {
    out.verdict = FiberVerdict::SinglePoint;
    out.reason = FiberReason::NoCut;
    return out;
  }
  out.verdict = FiberVerdict::MultiPoint;
  out.reason = FiberReason::HasCutNotSymmetrizable;
  // Cuts in order; the first one whose swap leaves the class of A wins.
  std::optional<VerificationError> first_error;
  for (const CutCertificate& cut : cuts) {
    try {
      const SwapWitness<S> w = cut_swap_witness(a, cut.x);
      out.cut = cut;
      out.witness = w.matrix;
      out.fallback_swap = w.fallback;
      return out;
    } catch (const VerificationError& e) {
      if (!first_error) first_error = e;
    }
  }
  throw *first_error;
}

template <typename S>
SymmetricFiberDescription<S> symmetric_fiber_describe(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "symmetric_fiber_describe");
  if (!is_symmetric(a)) throw PreconditionError("symmetric_fiber_describe: matrix is not symmetric");
  SymmetricFiberDescription<S> out;
  out.shape = fiber_shape(a, limits);
  out.irreducible = out.shape.blocks.size() == 1;
  if (out.irreducible) {
    out.summary = "every fiber member is D A D^-1 or D A^T D^-1 for an invertible diagonal D";
  } else {
    out.summary = "fiber members are block upper triangular over " + std::to_string(out.shape.blocks.size()) +
                  " blocks, diagonal blocks diagonally equivalent to those of A, upper blocks arbitrary";
  }
  return out;
}

StableCertificate stable_certify(const SquareMatrix<Gaussian>& a, const Limits& limits) {
  require_square(a, "stable_certify");
  check_size_limit(static_cast<int>(a.rows()), limits.classify, "stable_certify");
  const StructureReport<Gaussian> report = structure_check(a, limits);
  StableCertificate out;
  out.fpoly = report.fpoly;
  out.product_matches = report.product_matches;
  for (const BlockFactor<Gaussian>& factor : report.factors) {
    out.blocks.push_back({factor.support, factor.block, factor.fpoly, hermitian_equivalence(factor.block)});
    if (!out.failing_block && !out.blocks.back().result.symmetrizable()) {
      out.failing_block = static_cast<int>(out.blocks.size()) - 1;
    }
  }
  out.certified = !out.failing_block && out.product_matches;
  return out;
}

#define PMFIBER_INSTANTIATE(S)                                                                             \
  template std::vector<CutCertificate> find_cuts<S>(const SquareMatrix<S>&, const Limits&);               \
  template std::vector<S> generic_point<S>(int, int);                                                      \
  template FactorSplit<S> rank_one_split<S>(const AdjugateTable<S>&, IndexSet);                            \
  template SplitProportionality split_proportionality<S>(const FactorSplit<S>&);                           \
  template SwapWitness<S> cut_swap_witness<S>(const SquareMatrix<S>&, IndexSet);                           \
  template SquareMatrix<S> reducible_witness<S>(const SquareMatrix<S>&);                                   \
  template FiberClassification<S> classify_fiber<S>(const SquareMatrix<S>&, const Limits&);               \
  template SymmetricFiberDescription<S> symmetric_fiber_describe<S>(const SquareMatrix<S>&, const Limits&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
