#include "pmfiber/equiv.hpp"

#include <deque>
#include <functional>

#include "pmfiber/error.hpp"
#include "pmfiber/structure.hpp"
#include "pmfiber/symdet.hpp"

namespace pmfiber {
namespace {

template <typename S>
void require_same_shape(const SquareMatrix<S>& a, const SquareMatrix<S>& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) throw PreconditionError(std::string(what) + ": matrices differ in size");
}

// Solves w_i * lhs(i, j) = w_j * rhs(i, j) for all i != j, with w_i nonzero.
// Requires lhs(i, j) == 0 iff rhs(i, j) == 0. The first vertex of each
// connected component of the pattern gets w = 1. Returns nullopt when the
// pattern or some cycle constraint fails.
template <typename S>
std::optional<std::vector<S>> propagate_ratios(int n, const std::function<S(int, int)>& lhs,
                                               const std::function<S(int, int)>& rhs) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && is_zero(lhs(i, j)) != is_zero(rhs(i, j))) return std::nullopt;
    }
  }
  std::vector<std::optional<S>> w(static_cast<std::size_t>(n));
  for (int root = 0; root < n; ++root) {
    if (w[static_cast<std::size_t>(root)]) continue;
    w[static_cast<std::size_t>(root)] = S(1);
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < n; ++j) {
        if (j == i || w[static_cast<std::size_t>(j)]) continue;
        // An edge in either direction fixes the ratio; use whichever is nonzero.
        if (!is_zero(lhs(i, j))) {
          w[static_cast<std::size_t>(j)] = *w[static_cast<std::size_t>(i)] * lhs(i, j) / rhs(i, j);
        } else if (!is_zero(lhs(j, i))) {
          w[static_cast<std::size_t>(j)] = *w[static_cast<std::size_t>(i)] * rhs(j, i) / lhs(j, i);
        } else {
          continue;
        }
        queue.push_back(j);
      }
    }
  }
  std::vector<S> out;
  for (const auto& v : w) out.push_back(*v);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(out[static_cast<std::size_t>(i)] * lhs(i, j) == out[static_cast<std::size_t>(j)] * rhs(i, j))) {
        return std::nullopt;
      }
    }
  }
  return out;
}

template <typename S>
std::optional<DiagonalCertificate<S>> try_equivalence(const SquareMatrix<S>& a, const SquareMatrix<S>& b,
                                                      bool transposed) {
  const int n = static_cast<int>(a.rows());
  const SquareMatrix<S> src = transposed ? SquareMatrix<S>(a.transpose()) : a;
  for (int i = 0; i < n; ++i) {
    if (!(src(i, i) == b(i, i))) return std::nullopt;
  }
  // b_ij = d_i src_ij / d_j, i.e. (1/d_i) b_ij = (1/d_j) src_ij; solve for w = 1/d.
  const auto w = propagate_ratios<S>(
      n, [&](int i, int j) { return b(i, j); }, [&](int i, int j) { return src(i, j); });
  if (!w) return std::nullopt;
  DiagonalCertificate<S> cert;
  cert.transposed = transposed;
  for (const S& v : *w) cert.d.push_back(S(1) / v);
  if (!cert.verifies(a, b)) throw VerificationError("diagonal_equivalence: propagated certificate does not verify");
  return cert;
}

template <typename S>
SquareMatrix<S> diagonal_conjugate(const SquareMatrix<S>& a, const std::vector<S>& d) {
  return conjugate_by_diagonal(a, std::span<const S>(d));
}

template <typename S>
SymmetrizabilityResult<S> finish(const SquareMatrix<S>& a, std::vector<S> e,
                                 const std::function<std::optional<S>(const S&)>& root,
                                 const std::function<bool(const SquareMatrix<S>&)>& accept) {
  SymmetrizabilityResult<S> result;
  std::vector<S> d;
  for (const S& v : e) {
    const auto r = root(v);
    if (!r) break;
    d.push_back(*r);
  }
  result.e = std::move(e);
  if (d.size() != result.e->size()) {
    result.verdict = SymmetrizationVerdict::SymmetricEquivalentOverQuadraticExtension;
    result.detail = "some e_i is not a square in the field";
    return result;
  }
  SquareMatrix<S> sym = diagonal_conjugate(a, d);
  if (!accept(sym)) throw VerificationError("symmetrizing diagonal does not produce the target form");
  result.verdict = SymmetrizationVerdict::SymmetricEquivalentOverField;
  result.witness = DiagonalCertificate<S>{d, false};
  result.symmetrized = std::move(sym);
  return result;
}

template <typename S>
SymmetrizabilityResult<S> not_symmetrizable(std::string detail) {
  SymmetrizabilityResult<S> result;
  result.verdict = SymmetrizationVerdict::NotSymmetrizable;
  result.detail = std::move(detail);
  return result;
}

}  // namespace

const char* verdict_name(SymmetrizationVerdict v) {
  switch (v) {
    case SymmetrizationVerdict::SymmetricEquivalentOverField:
      return "SymmetricEquivalentOverField";
    case SymmetrizationVerdict::SymmetricEquivalentOverQuadraticExtension:
      return "SymmetricEquivalentOverQuadraticExtension";
    case SymmetrizationVerdict::NotSymmetrizable:
      return "NotSymmetrizable";
  }
  return "?";
}

template <typename S>
bool DiagonalCertificate<S>::verifies(const SquareMatrix<S>& a, const SquareMatrix<S>& b) const {
  if (a.rows() != b.rows() || static_cast<Eigen::Index>(d.size()) != a.rows()) return false;
  for (const S& v : d) {
    if (is_zero(v)) return false;
  }
  const SquareMatrix<S> src = transposed ? SquareMatrix<S>(a.transpose()) : a;
  return diagonal_conjugate(src, d) == b;
}

template <typename S>
std::optional<DiagonalCertificate<S>> diagonal_equivalence(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
  require_same_shape(a, b, "diagonal_equivalence");
  if (auto cert = try_equivalence(a, b, false)) return cert;
  return try_equivalence(a, b, true);
}

template <typename S>
SymmetrizabilityResult<S> symmetrizability(const SquareMatrix<S>& a) {
  require_square(a, "symmetrizability");
  const int n = static_cast<int>(a.rows());
  auto e = propagate_ratios<S>(
      n, [&](int i, int j) { return a(i, j); }, [&](int i, int j) { return a(j, i); });
  if (!e) return not_symmetrizable<S>("no e with e_i a_ij = e_j a_ji");
  return finish<S>(
      a, std::move(*e), [](const S& v) { return exact_sqrt(v); },
      [](const SquareMatrix<S>& m) { return is_symmetric(m); });
}

SymmetrizabilityResult<Gaussian> hermitian_equivalence(const SquareMatrix<Gaussian>& a) {
  require_square(a, "hermitian_equivalence");
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    if (!a(i, i).is_real()) return not_symmetrizable<Gaussian>("non-real diagonal entry " + std::to_string(i + 1));
  }
  auto e = propagate_ratios<Gaussian>(
      n, [&](int i, int j) { return a(i, j); }, [&](int i, int j) { return a(j, i).conj(); });
  if (!e) return not_symmetrizable<Gaussian>("no e with e_i a_ij = e_j conj(a_ji)");
  for (std::size_t i = 0; i < e->size(); ++i) {
    const Gaussian& v = (*e)[i];
    if (!v.is_real()) return not_symmetrizable<Gaussian>("e_" + std::to_string(i + 1) + " is not real");
    if (v.real().sign() <= 0) return not_symmetrizable<Gaussian>("e_" + std::to_string(i + 1) + " is not positive");
  }
  return finish<Gaussian>(
      a, std::move(*e),
      [](const Gaussian& v) -> std::optional<Gaussian> {
        const auto r = is_perfect_square(v.real());
        if (!r) return std::nullopt;
        return Gaussian(*r);
      },
      [](const SquareMatrix<Gaussian>& m) { return is_hermitian(m); });
}

template <typename S>
DiagonalCertificate<S> recover_diag_from_fiber(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
  require_same_shape(a, b, "recover_diag_from_fiber");
  if (!is_symmetric(a)) throw PreconditionError("recover_diag_from_fiber: A is not symmetric");
  if (!is_irreducible(a)) throw PreconditionError("recover_diag_from_fiber: A is reducible");
  const int n = static_cast<int>(a.rows());
  DiagonalCertificate<S> cert;
  cert.d.push_back(S(1));
  if (n > 1) {
    const AdjugateTable<S> g = adjugate_table(a);
    const AdjugateTable<S> h = adjugate_table(b);
    for (int j = 1; j < n; ++j) {
      const auto alpha = constant_ratio(h(0, j), g(0, j));
      if (!alpha) {
        throw VerificationError("recover_diag_from_fiber: H_1" + std::to_string(j + 1) + " / G_1" +
                                std::to_string(j + 1) + " is not constant");
      }
      cert.d.push_back(S(1) / *alpha);
    }
  }
  if (!cert.verifies(a, b)) throw VerificationError("recover_diag_from_fiber: B != D A D^{-1}");
  return cert;
}

#define PMFIBER_INSTANTIATE(S)                                                                                     \
  template struct DiagonalCertificate<S>;                                                                          \
  template std::optional<DiagonalCertificate<S>> diagonal_equivalence<S>(const SquareMatrix<S>&,                   \
                                                                         const SquareMatrix<S>&);                  \
  template SymmetrizabilityResult<S> symmetrizability<S>(const SquareMatrix<S>&);                                  \
  template DiagonalCertificate<S> recover_diag_from_fiber<S>(const SquareMatrix<S>&, const SquareMatrix<S>&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
