#pragma once

// Deterministic random generators for the property suites. Every generator
// takes a std::mt19937_64 so runs are reproducible from a seed.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "pmfiber/index_set.hpp"
#include "pmfiber/matrix.hpp"

namespace pmfiber::random {

using Engine = std::mt19937_64;
inline constexpr const char* kEngineName = "mt19937_64";

inline long uniform_int(Engine& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline long nonzero_int(Engine& rng, long lo, long hi) {
  long v = 0;
  while (v == 0) v = uniform_int(rng, lo, hi);
  return v;
}

// Integer in [lo, hi]; for Gaussian, real and imaginary parts independently.
template <typename S>
S entry(Engine& rng, long lo, long hi);

template <>
inline Rational entry<Rational>(Engine& rng, long lo, long hi) {
  return Rational(uniform_int(rng, lo, hi));
}

template <>
inline Gaussian entry<Gaussian>(Engine& rng, long lo, long hi) {
  const long re = uniform_int(rng, lo, hi);
  return {Rational(re), Rational(uniform_int(rng, lo, hi))};
}

template <typename S>
S nonzero_entry(Engine& rng, long lo, long hi) {
  S v = entry<S>(rng, lo, hi);
  while (is_zero(v)) v = entry<S>(rng, lo, hi);
  return v;
}

template <typename S>
Matrix<S> matrix(Engine& rng, int n, long lo = -5, long hi = 5) {
  Matrix<S> a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = entry<S>(rng, lo, hi);
  }
  return a;
}

// Every off-diagonal entry nonzero.
template <typename S>
Matrix<S> full_support_matrix(Engine& rng, int n, long lo = -5, long hi = 5) {
  Matrix<S> a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = i == j ? entry<S>(rng, lo, hi) : nonzero_entry<S>(rng, lo, hi);
  }
  return a;
}

// Symmetric with nonzero off-diagonal entries, hence irreducible.
template <typename S>
Matrix<S> symmetric_irreducible(Engine& rng, int n, long lo = -5, long hi = 5) {
  Matrix<S> a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = entry<S>(rng, lo, hi);
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = nonzero_entry<S>(rng, lo, hi);
  }
  return a;
}

// Hermitian with real diagonal; off-diagonal entries nonzero when dense.
inline Matrix<Gaussian> hermitian(Engine& rng, int n, bool dense = true, long lo = -4, long hi = 4) {
  Matrix<Gaussian> a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = Gaussian(Rational(uniform_int(rng, lo, hi)));
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = dense ? nonzero_entry<Gaussian>(rng, lo, hi) : entry<Gaussian>(rng, lo, hi);
      a(j, i) = a(i, j).conj();
    }
  }
  return a;
}

template <typename S>
std::vector<S> nonzero_diagonal(Engine& rng, int n, long lo = -4, long hi = 4) {
  std::vector<S> d;
  for (int i = 0; i < n; ++i) d.push_back(nonzero_entry<S>(rng, lo, hi));
  return d;
}

inline std::vector<int> permutation(Engine& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline IndexSet subset_of_size(Engine& rng, int n, int k) {
  const auto p = permutation(rng, n);
  IndexSet s;
  for (int t = 0; t < k; ++t) s = s.with(p[static_cast<std::size_t>(t)]);
  return s;
}

template <typename S>
struct PlantedBlocks {
  Matrix<S> matrix;
  int block_count = 0;
};

// Block upper triangular with dense (irreducible) diagonal blocks of the given
// sizes, random upper fill, then a random simultaneous permutation.
template <typename S>
PlantedBlocks<S> planted_block_triangular(Engine& rng, const std::vector<int>& sizes, long lo = -4, long hi = 4) {
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  Matrix<S> m = Matrix<S>::Zero(n, n);
  int start = 0;
  for (int size : sizes) {
    for (int i = start; i < start + size; ++i) {
      for (int j = start; j < start + size; ++j) m(i, j) = i == j ? entry<S>(rng, lo, hi) : nonzero_entry<S>(rng, lo, hi);
      for (int j = start + size; j < n; ++j) m(i, j) = entry<S>(rng, lo, hi);
    }
    start += size;
  }
  const auto order = permutation(rng, n);
  return {unpermute_symmetric(m, std::span<const int>(order)), static_cast<int>(sizes.size())};
}

template <typename S>
struct PlantedCut {
  Matrix<S> matrix;
  IndexSet cut;
};

// Irreducible matrix with a cut X of the given size: dense diagonal blocks on
// X and X^c, rank-one off-diagonal blocks u v^T and p q^T with nonzero
// factors, placed on a random subset X.
template <typename S>
PlantedCut<S> planted_cut(Engine& rng, int n, int cut_size, long lo = -4, long hi = 4) {
  const IndexSet x = subset_of_size(rng, n, cut_size);
  Matrix<S> a(n, n);
  std::vector<S> u(static_cast<std::size_t>(n));
  std::vector<S> v(static_cast<std::size_t>(n));
  std::vector<S> p(static_cast<std::size_t>(n));
  std::vector<S> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] = nonzero_entry<S>(rng, -3, 3);
    v[static_cast<std::size_t>(i)] = nonzero_entry<S>(rng, -3, 3);
    p[static_cast<std::size_t>(i)] = nonzero_entry<S>(rng, -3, 3);
    q[static_cast<std::size_t>(i)] = nonzero_entry<S>(rng, -3, 3);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (i == j) {
        a(i, j) = entry<S>(rng, lo, hi);
      } else if (x.contains(i) == x.contains(j)) {
        a(i, j) = nonzero_entry<S>(rng, lo, hi);
      } else if (x.contains(i)) {
        a(i, j) = u[ui] * v[uj];
      } else {
        a(i, j) = p[ui] * q[uj];
      }
    }
  }
  return {a, x};
}

}  // namespace pmfiber::random
