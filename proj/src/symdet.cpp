#include "pmfiber/symdet.hpp"

#include <algorithm>
#include <string>

#include "pmfiber/error.hpp"

namespace pmfiber {

void check_size_limit(int n, int limit, const char* what) {
  if (n > limit) {
    throw SizeLimitError(std::string(what) + ": n = " + std::to_string(n) + " exceeds the limit " +
                         std::to_string(limit));
  }
}

template <typename S>
PMVector<S>::PMVector(int n, std::vector<S> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << n)) throw PreconditionError("PMVector: expected 2^n values");
}

template <typename S>
PolyMatrix<S>::PolyMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n * n), MPoly<S>(n)) {}

template <typename S>
PolyMatrix<S> PolyMatrix<S>::transpose() const {
  PolyMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

template <typename S>
PolyMatrix<S> PolyMatrix<S>::multiply(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("PolyMatrix *: size mismatch");
  PolyMatrix out(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    for (int j = 0; j < a.n_; ++j) {
      MPoly<S> acc(a.n_);
      for (int k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

template <typename S>
PMVector<S> principal_minors(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "principal_minors");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.principal_minors, "principal_minors");
  std::vector<S> values(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < values.size(); ++mask) values[mask] = principal_minor(a, IndexSet(mask));
  return PMVector<S>(n, std::move(values));
}

template <typename S>
DeterminantalPencil<S> det_poly(const SquareMatrix<S>& a, const Limits& limits) {
  const PMVector<S> minors = principal_minors(a, limits);
  const int n = minors.n();
  MPoly<S> f(n);
  for_each_subset(IndexSet::all(n), [&](IndexSet s) { f.add_term(exponents_of(s), minors[s.complement(n)]); });
  return {a, std::move(f)};
}

template <typename S>
PolyMatrix<S> pencil_matrix(const SquareMatrix<S>& a) {
  require_square(a, "pencil_matrix");
  const int n = static_cast<int>(a.rows());
  PolyMatrix<S> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = MPoly<S>::constant(n, a(i, j));
    m(i, i) += MPoly<S>::variable(n, i);
  }
  return m;
}

template <typename S>
AdjugateTable<S> adjugate_table(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "adjugate_table");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.adjugate, "adjugate_table");
  const IndexSet everything = IndexSet::all(n);
  AdjugateTable<S> g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      MPoly<S> entry(n);
      const IndexSet free_vars = everything.without(i).without(j);
      for_each_subset(free_vars, [&](IndexSet s) {
        const IndexSet r = s.complement(n);
        S value;
        if (i == j) {
          value = principal_minor(a, r.without(i));
        } else {
          // Cofactor of entry (j, i) inside A[r, r].
          const auto elems = r.elements();
          const auto pos_i = std::find(elems.begin(), elems.end(), i) - elems.begin();
          const auto pos_j = std::find(elems.begin(), elems.end(), j) - elems.begin();
          value = determinant(submatrix(a, r.without(j), r.without(i)));
          if ((pos_i + pos_j) % 2 != 0) value = -value;
        }
        entry.add_term(exponents_of(s), value);
      });
      g(i, j) = std::move(entry);
    }
  }
  return g;
}

template <typename S>
bool satisfies_adjugate_identity(const AdjugateTable<S>& h, const SquareMatrix<S>& b, const MPoly<S>& f) {
  const int n = h.n();
  if (b.rows() != n || b.cols() != n || f.nvars() != n) return false;
  const PolyMatrix<S> product = h * pencil_matrix(b);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool ok = i == j ? product(i, j) == f : product(i, j).is_zero();
      if (!ok) return false;
    }
  }
  return true;
}

template <typename S>
SquareMatrix<S> matrix_from_adjugate(const AdjugateTable<S>& h, const MPoly<S>& f) {
  const int n = h.n();
  if (n < 1 || f.nvars() != n) throw PreconditionError("matrix_from_adjugate: size mismatch");
  const IndexSet everything = IndexSet::all(n);
  SquareMatrix<S> b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        b(i, i) = coefficient_of(f, everything.without(i));
      } else {
        b(i, j) = -coefficient_of(h(i, j), everything.without(i).without(j));
      }
    }
  }
  if (!(adjugate_table(b) == h) || !(det_poly(b).fpoly == f)) {
    throw VerificationError("matrix_from_adjugate: table is not the adjugate of a pencil with this determinant");
  }
  return b;
}

template <typename S>
S laplace_expand(const SquareMatrix<S>& a, IndexSet s) {
  require_square(a, "laplace_expand");
  const int n = static_cast<int>(a.rows());
  const int k = s.size();
  if (k < 1 || k > n - 1 || !s.subset_of(IndexSet::all(n))) {
    throw PreconditionError("laplace_expand: need 1 <= |S| <= n-1");
  }
  const IndexSet sc = s.complement(n);
  S total(0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const IndexSet t(mask);
    if (t.size() != k) continue;
    S term = determinant(submatrix(a, s, t)) * determinant(submatrix(a, sc, t.complement(n)));
    if ((s.label_sum() + t.label_sum()) % 2 != 0) term = -term;
    total += term;
  }
  return total;
}

int two_line_sign_by_inversions(int n, IndexSet s, IndexSet t) {
  std::vector<int> top = s.elements();
  std::vector<int> bottom = t.elements();
  for (int e : s.complement(n).elements()) top.push_back(e);
  for (int e : t.complement(n).elements()) bottom.push_back(e);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < top.size(); ++p) perm[static_cast<std::size_t>(top[p])] = bottom[p];
  int inversions = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (perm[static_cast<std::size_t>(x)] > perm[static_cast<std::size_t>(y)]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

int two_line_sign(int n, IndexSet s, IndexSet t) {
  if (s.size() != t.size()) throw PreconditionError("two_line_sign: |S| != |T|");
  if (!s.subset_of(IndexSet::all(n)) || !t.subset_of(IndexSet::all(n))) {
    throw PreconditionError("two_line_sign: subset outside [n]");
  }
  const int closed = (s.label_sum() + t.label_sum()) % 2 == 0 ? 1 : -1;
  const int counted = two_line_sign_by_inversions(n, s, t);
  if (closed != counted) throw VerificationError("two_line_sign: inversion count disagrees with closed form");
  return closed;
}

const char* identity_name(Identity id) {
  switch (id) {
    case Identity::Dodgson:
      return "dodgson";
    case Identity::Resultant:
      return "resultant";
    case Identity::Laplace:
      return "laplace";
    case Identity::Adjugate:
      return "adjugate";
  }
  return "?";
}

Identity parse_identity(const std::string& name) {
  for (Identity id : {Identity::Dodgson, Identity::Resultant, Identity::Laplace, Identity::Adjugate}) {
    if (name == identity_name(id)) return id;
  }
  throw ParseError("unknown identity '" + name + "'");
}

std::size_t IdentityReport::count(Identity id) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [id](const IdentityCheck& c) { return c.identity == id; }));
}

std::size_t IdentityReport::failures(Identity id) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [id](const IdentityCheck& c) { return c.identity == id && !c.passed; }));
}

std::size_t IdentityReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.passed; }));
}

template <typename S>
IdentityReport verify_identities(const SquareMatrix<S>& a, const std::vector<Identity>& which, const Limits& limits) {
  require_square(a, "verify_identities");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.identities, "verify_identities");
  const auto wants = [&](Identity id) { return std::find(which.begin(), which.end(), id) != which.end(); };

  IdentityReport report;
  const MPoly<S> f = det_poly(a, limits).fpoly;
  AdjugateTable<S> g;
  if (wants(Identity::Dodgson) || wants(Identity::Resultant) || wants(Identity::Adjugate)) {
    g = adjugate_table(a, limits);
  }

  if (wants(Identity::Dodgson)) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        report.checks.push_back({Identity::Dodgson, {i, j}, rayleigh_difference(f, i, j) == g(i, j) * g(j, i)});
      }
    }
  }
  if (wants(Identity::Resultant)) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          report.checks.push_back(
              {Identity::Resultant, {i, j, k}, affine_resultant(g(i, j), f, k) == g(i, k) * g(k, j)});
        }
      }
    }
  }
  if (wants(Identity::Laplace) && n >= 2) {
    const S det = determinant(a);
    for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
      const IndexSet s(mask);
      if (n > 6 && s.size() > 2) continue;
      report.checks.push_back({Identity::Laplace, s.elements(), laplace_expand(a, s) == det});
    }
  }
  if (wants(Identity::Adjugate)) {
    report.checks.push_back({Identity::Adjugate, {}, satisfies_adjugate_identity(g, a, f)});
  }
  return report;
}

#define PMFIBER_INSTANTIATE(S)                                                                                \
  template class PMVector<S>;                                                                                 \
  template class PolyMatrix<S>;                                                                               \
  template PMVector<S> principal_minors<S>(const SquareMatrix<S>&, const Limits&);                            \
  template DeterminantalPencil<S> det_poly<S>(const SquareMatrix<S>&, const Limits&);                         \
  template PolyMatrix<S> pencil_matrix<S>(const SquareMatrix<S>&);                                            \
  template AdjugateTable<S> adjugate_table<S>(const SquareMatrix<S>&, const Limits&);                         \
  template bool satisfies_adjugate_identity<S>(const AdjugateTable<S>&, const SquareMatrix<S>&,               \
                                               const MPoly<S>&);                                              \
  template SquareMatrix<S> matrix_from_adjugate<S>(const AdjugateTable<S>&, const MPoly<S>&);                 \
  template S laplace_expand<S>(const SquareMatrix<S>&, IndexSet);                                             \
  template IdentityReport verify_identities<S>(const SquareMatrix<S>&, const std::vector<Identity>&,          \
                                               const Limits&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
