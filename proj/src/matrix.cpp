#include "pmfiber/matrix.hpp"

#include <string>
#include <utility>

#include "pmfiber/error.hpp"

namespace pmfiber {

template <typename S>
void require_square(const Matrix<S>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw PreconditionError(std::string(what) + ": expected a nonempty square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

// Fraction-free (Bareiss) elimination with row pivoting.
template <typename S>
S determinant(const Matrix<S>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return S(1);
  Matrix<S> m = a;
  S previous(1);
  bool negate = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && is_zero(m(pivot, k))) ++pivot;
    if (pivot == n) return S(0);
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

template <typename S>
int rank(const Matrix<S>& a) {
  Matrix<S> m = a;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = r;
    while (pivot < rows && is_zero(m(pivot, c))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) m.row(r).swap(m.row(pivot));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (is_zero(m(i, c))) continue;
      const S factor = m(i, c) / m(r, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

template <typename S>
Matrix<S> submatrix(const Matrix<S>& a, IndexSet rows, IndexSet cols) {
  const auto r = rows.elements();
  const auto c = cols.elements();
  Matrix<S> out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t p = 0; p < r.size(); ++p) {
    for (std::size_t q = 0; q < c.size(); ++q) out(p, q) = a(r[p], c[q]);
  }
  return out;
}

template <typename S>
S principal_minor(const Matrix<S>& a, IndexSet s) {
  if (s.empty()) return S(1);
  return determinant(submatrix(a, s, s));
}

template <typename S>
Matrix<S> permute_symmetric(const Matrix<S>& a, std::span<const int> order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  Matrix<S> out(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) out(p, q) = a(order[p], order[q]);
  }
  return out;
}

template <typename S>
Matrix<S> unpermute_symmetric(const Matrix<S>& a, std::span<const int> order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  Matrix<S> out(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) out(order[p], order[q]) = a(p, q);
  }
  return out;
}

template <typename S>
Matrix<S> conjugate_by_diagonal(const Matrix<S>& a, std::span<const S> d) {
  Matrix<S> out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) out(i, j) = d[i] * a(i, j) / d[j];
    }
  }
  return out;
}

template <typename S>
Matrix<S> conjugate_transpose(const Matrix<S>& a) {
  Matrix<S> out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  }
  return out;
}

template <typename S>
bool is_symmetric(const Matrix<S>& a) {
  return a.rows() == a.cols() && a == Matrix<S>(a.transpose());
}

template <typename S>
bool is_hermitian(const Matrix<S>& a) {
  return a.rows() == a.cols() && a == conjugate_transpose(a);
}

Matrix<Gaussian> to_gaussian(const Matrix<Rational>& a) {
  Matrix<Gaussian> out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = Gaussian(a(i, j));
  }
  return out;
}

#define PMFIBER_INSTANTIATE(S)                                                            \
  template void require_square<S>(const Matrix<S>&, const char*);                         \
  template S determinant<S>(const Matrix<S>&);                                            \
  template int rank<S>(const Matrix<S>&);                                                 \
  template Matrix<S> submatrix<S>(const Matrix<S>&, IndexSet, IndexSet);                  \
  template S principal_minor<S>(const Matrix<S>&, IndexSet);                              \
  template Matrix<S> permute_symmetric<S>(const Matrix<S>&, std::span<const int>);        \
  template Matrix<S> unpermute_symmetric<S>(const Matrix<S>&, std::span<const int>);      \
  template Matrix<S> conjugate_by_diagonal<S>(const Matrix<S>&, std::span<const S>);      \
  template Matrix<S> conjugate_transpose<S>(const Matrix<S>&);                            \
  template bool is_symmetric<S>(const Matrix<S>&);                                        \
  template bool is_hermitian<S>(const Matrix<S>&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
