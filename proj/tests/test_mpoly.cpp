#include <doctest.h>

#include <random>

#include "pmfiber/error.hpp"
#include "pmfiber/mpoly.hpp"

using pmfiber::IndexSet;
using pmfiber::Rational;
using P = pmfiber::MPoly<Rational>;

namespace {

P x(int n, int k) { return P::variable(n, k - 1); }
P c(int n, long v) { return P::constant(n, Rational(v)); }

// Random multiaffine polynomial in the variables of `vars`.
P random_multiaffine(std::mt19937_64& rng, int n, IndexSet vars) {
  std::uniform_int_distribution<long> coeff(-4, 4);
  P p(n);
  pmfiber::for_each_subset(vars, [&](IndexSet s) { p.add_term(pmfiber::exponents_of(s), Rational(coeff(rng))); });
  return p;
}

}  // namespace

TEST_CASE("poly_arith examples") {
  CHECK((x(1, 1) + c(1, 1)) * (x(1, 1) - c(1, 1)) == x(1, 1) * x(1, 1) - c(1, 1));
  const P p = x(2, 1) * x(2, 2) + c(2, 5);
  CHECK(p + P(2) == p);
  CHECK((x(2, 1) + c(2, 2)) * (x(2, 2) + c(2, 3)) ==
        x(2, 1) * x(2, 2) + c(2, 3) * x(2, 1) + c(2, 2) * x(2, 2) + c(2, 6));
  CHECK_THROWS_AS(x(2, 1) + x(3, 1), pmfiber::PreconditionError);
  CHECK((p - p).is_zero());
  CHECK((p - p).term_count() == 0);
}

TEST_CASE("canonical text form") {
  const P p = (x(2, 1) + c(2, 2)) * (x(2, 2) + c(2, 3));
  CHECK(p.to_string() == "x1*x2 + 3*x1 + 2*x2 + 6");
  CHECK((x(3, 1) * x(3, 1) - c(3, 1)).to_string() == "x1^2 - 1");
  CHECK((-x(3, 3) + x(3, 2) * Rational(1, 2)).to_string() == "1/2*x2 - x3");
  CHECK(P(3).to_string() == "0");
  const auto g = pmfiber::MPoly<pmfiber::Gaussian>::variable(2, 0) * pmfiber::Gaussian(Rational(1), Rational(2)) -
                 pmfiber::MPoly<pmfiber::Gaussian>::constant(2, pmfiber::Gaussian::i());
  CHECK(g.to_string() == "(1+2i)*x1 - i");
}

TEST_CASE("rayleigh_difference") {
  // Split case: zero.
  CHECK(pmfiber::rayleigh_difference((x(2, 1) + c(2, 1)) * (x(2, 2) + c(2, 2)), 0, 1).is_zero());
  // det(diag(x1,x2) + [[a,b],[c,d]]) with a=3, b=5, c=-2, d=7: Delta_12 = b*c.
  const P f = (x(2, 1) + c(2, 3)) * (x(2, 2) + c(2, 7)) - c(2, 5) * c(2, -2);
  CHECK(pmfiber::rayleigh_difference(f, 0, 1) == c(2, -10));
  CHECK_THROWS_AS(pmfiber::rayleigh_difference(f, 1, 1), pmfiber::PreconditionError);
  CHECK_THROWS_AS(pmfiber::rayleigh_difference(x(2, 1) * x(2, 1), 0, 1), pmfiber::PreconditionError);
}

TEST_CASE("affine_resultant") {
  const int n = 3;
  // g = x_k, h = x_k + c  ->  -c
  CHECK(pmfiber::affine_resultant(x(n, 2), x(n, 2) + c(n, 5), 1) == c(n, -5));
  // g free of x_k  ->  g * d_k h
  const P g = x(n, 1) + c(n, 2);
  const P h = x(n, 2) * x(n, 3) + c(n, 4) * x(n, 2) + c(n, 1);
  CHECK(pmfiber::affine_resultant(g, h, 1) == g * (x(n, 3) + c(n, 4)));
  CHECK_THROWS_AS(pmfiber::affine_resultant(x(n, 2) * x(n, 2), h, 1), pmfiber::PreconditionError);
}

TEST_CASE("exact_divide") {
  CHECK(pmfiber::exact_divide(x(2, 1) * x(2, 2) + x(2, 1), x(2, 2) + c(2, 1)) == x(2, 1));
  CHECK(pmfiber::exact_divide(x(1, 1) * x(1, 1) - c(1, 1), x(1, 1) - c(1, 1)) == x(1, 1) + c(1, 1));
  CHECK_THROWS_AS(pmfiber::exact_divide(x(2, 1) + c(2, 1), x(2, 2)), pmfiber::InexactDivisionError);
  CHECK_THROWS_AS(pmfiber::exact_divide(x(2, 1), P(2)), pmfiber::PreconditionError);
}

TEST_CASE("coefficient_of") {
  const P p = x(2, 1) * x(2, 2) + c(2, 2) * x(2, 1) + c(2, 3);
  CHECK(pmfiber::coefficient_of(p, IndexSet::single(0)) == Rational(2));
  CHECK(pmfiber::coefficient_of(p, IndexSet()) == Rational(3));
  CHECK(pmfiber::coefficient_of(p, IndexSet::single(1)) == Rational(0));
  CHECK_THROWS_AS(pmfiber::coefficient_of(x(2, 1) * x(2, 1), IndexSet()), pmfiber::PreconditionError);
}

TEST_CASE("derivative, substitution, renaming") {
  const P p = x(3, 1) * x(3, 1) * x(3, 3) + c(3, 2) * x(3, 2);
  CHECK(p.derivative(0) == c(3, 2) * x(3, 1) * x(3, 3));
  CHECK(p.substitute(0, Rational(3)) == c(3, 9) * x(3, 3) + c(3, 2) * x(3, 2));
  const std::vector<int> target{3, 0, 1};
  CHECK(p.rename(4, target) == x(4, 4) * x(4, 4) * x(4, 2) + c(4, 2) * x(4, 1));
  CHECK(p.degree_in(0) == 2);
  CHECK_FALSE(p.is_multiaffine());
  CHECK(p.variables() == IndexSet(0b111));
}

TEST_CASE("property: products split across x_i, x_j have zero Rayleigh difference") {
  std::mt19937_64 rng(17);
  const int n = 5;
  for (int t = 0; t < 100; ++t) {
    // g free of x_1, h free of x_2.
    const P g = random_multiaffine(rng, n, IndexSet(0b11110));
    const P h = random_multiaffine(rng, n, IndexSet(0b11101));
    const P f = g * h;
    if (f.degree_in(0) > 1 || f.degree_in(1) > 1) continue;
    CHECK(pmfiber::rayleigh_difference(f, 0, 1).is_zero());
  }
}

TEST_CASE("property: Rayleigh difference of a multiaffine polynomial is free of x_i and x_j") {
  std::mt19937_64 rng(19);
  const int n = 5;
  for (int t = 0; t < 100; ++t) {
    const P f = random_multiaffine(rng, n, IndexSet::all(n));
    const P d = pmfiber::rayleigh_difference(f, 1, 3);
    CHECK_FALSE(d.depends_on(1));
    CHECK_FALSE(d.depends_on(3));
  }
}

TEST_CASE("property: exact_divide(p*q, q) == p") {
  std::mt19937_64 rng(23);
  const int n = 4;
  for (int t = 0; t < 100; ++t) {
    const P p = random_multiaffine(rng, n, IndexSet(0b0111));
    const P q = random_multiaffine(rng, n, IndexSet(0b1110));
    if (q.is_zero()) continue;
    CHECK(pmfiber::exact_divide(p * q, q) == p);
  }
}
