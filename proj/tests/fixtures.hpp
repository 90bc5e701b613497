#pragma once

// Worked examples and small builders shared by the unit and acceptance tests.

#include <initializer_list>
#include <vector>

#include "pmfiber/matrix.hpp"
#include "pmfiber/mpoly.hpp"

namespace fixtures {

using pmfiber::Gaussian;
using pmfiber::Matrix;
using pmfiber::Rational;
using Poly = pmfiber::MPoly<Rational>;

inline Matrix<Rational> int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix<Rational> m(n, static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

// 4x4 matrix with the cut {1,2}.
inline Matrix<Rational> cut4_a() {
  return int_matrix({{2, -1, 1, -2}, {1, 1, -3, 6}, {1, 2, 1, 1}, {-1, -2, 2, -1}});
}

// The second fiber point displayed next to cut4_a().
inline Matrix<Rational> cut4_b() {
  return int_matrix({{2, 1, 1, -2}, {-1, 1, 2, -4}, {1, -3, 1, 1}, {-1, 3, 2, -1}});
}

// 6x6 reducible matrix with three irreducible 2x2 diagonal blocks.
inline Matrix<Rational> block6() {
  return int_matrix({{1, -3, 3, -2, -1, 2},
                     {0, -3, 5, 1, 0, 2},
                     {0, 0, 4, 0, 0, -4},
                     {0, 1, 2, 1, 0, 5},
                     {1, 0, -1, 6, 2, 4},
                     {0, 0, 2, 0, 0, 3}});
}

// Polynomial builders in n variables; variable indices are 1-based.
struct Vars {
  int n;
  Poly x(int k) const { return Poly::variable(n, k - 1); }
  Poly c(long v) const { return Poly::constant(n, Rational(v)); }
};

// The displayed factorization of f for block6().
inline std::vector<Poly> block6_factors() {
  const Vars v{6};
  return {v.x(1) * v.x(5) + v.c(2) * v.x(1) + v.x(5) + v.c(3),
          v.x(2) * v.x(4) + v.x(2) - v.c(3) * v.x(4) - v.c(4),
          v.x(3) * v.x(6) + v.c(3) * v.x(3) + v.c(4) * v.x(6) + v.c(20)};
}

}  // namespace fixtures
