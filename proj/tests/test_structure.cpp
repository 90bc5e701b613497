#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmfiber/random.hpp"
#include "pmfiber/structure.hpp"

using fixtures::int_matrix;
using pmfiber::Gaussian;
using pmfiber::IndexSet;
using pmfiber::Matrix;
using pmfiber::Rational;
using P = pmfiber::MPoly<Rational>;
namespace rnd = pmfiber::random;

namespace {

template <typename S>
bool block_upper_triangular(const pmfiber::FrobeniusForm<S>& form) {
  const int n = static_cast<int>(form.order.size());
  std::vector<int> block_at(static_cast<std::size_t>(n));
  int pos = 0;
  for (int b = 0; b < form.block_count(); ++b) {
    for (int k = 0; k < form.blocks[static_cast<std::size_t>(b)].size(); ++k) block_at[static_cast<std::size_t>(pos++)] = b;
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (block_at[static_cast<std::size_t>(p)] > block_at[static_cast<std::size_t>(q)] && !pmfiber::is_zero(form.permuted(p, q))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("support_digraph") {
  const auto empty = pmfiber::support_digraph(Matrix<Rational>::Zero(3, 3).eval());
  CHECK(empty.edge_count() == 0);

  const auto complete = pmfiber::support_digraph(fixtures::cut4_a());
  CHECK(complete.edge_count() == 12);

  const auto a6 = fixtures::block6();
  const auto g6 = pmfiber::support_digraph(a6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) CHECK(g6.has_edge(i, j) == (i != j && !a6(i, j).is_zero()));
  }
  const auto sccs = pmfiber::strongly_connected_components(g6);
  std::vector<std::vector<int>> sorted(sccs.begin(), sccs.end());
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::vector<int>>{{0, 4}, {1, 3}, {2, 5}});
}

TEST_CASE("frobenius_form examples") {
  const auto irreducible = pmfiber::frobenius_form(fixtures::cut4_a());
  CHECK(irreducible.block_count() == 1);
  CHECK(irreducible.order == std::vector<int>{0, 1, 2, 3});

  const auto f6 = pmfiber::frobenius_form(fixtures::block6());
  REQUIRE(f6.block_count() == 3);
  CHECK(f6.blocks[0] == IndexSet::from_elements({0, 4}));
  CHECK(f6.blocks[1] == IndexSet::from_elements({1, 3}));
  CHECK(f6.blocks[2] == IndexSet::from_elements({2, 5}));
  CHECK(block_upper_triangular(f6));

  Matrix<Rational> upper = Matrix<Rational>::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) upper(i, j) = Rational(i + j + 1);
  }
  const auto fu = pmfiber::frobenius_form(upper);
  CHECK(fu.block_count() == 4);
  CHECK(fu.order == std::vector<int>{0, 1, 2, 3});
  CHECK(block_upper_triangular(fu));

  // Strictly lower triangular needs the reversed order.
  const auto fl = pmfiber::frobenius_form(Matrix<Rational>(upper.transpose()));
  CHECK(fl.order == std::vector<int>{3, 2, 1, 0});
  CHECK(block_upper_triangular(fl));
}

TEST_CASE("is_irreducible") {
  CHECK(pmfiber::is_irreducible(fixtures::cut4_a()));
  CHECK_FALSE(pmfiber::is_irreducible(fixtures::block6()));
  CHECK(pmfiber::is_irreducible(int_matrix({{0}})));
}

TEST_CASE("frobenius_form against reachability oracle") {
  rnd::Engine rng(21);
  std::bernoulli_distribution sparse(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    Matrix<Rational> a = Matrix<Rational>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (sparse(rng)) a(i, j) = Rational(rnd::nonzero_int(rng, -3, 3));
      }
    }
    const auto form = pmfiber::frobenius_form(a);
    CHECK(form.block_count() == oracles::scc_count(a));
    CHECK(pmfiber::is_irreducible(a) == oracles::strongly_connected(a));
    CHECK(block_upper_triangular(form));
    const auto reach = oracles::reachability(a);
    for (IndexSet block : form.blocks) {
      for (int i : block.elements()) {
        for (int j : block.elements()) CHECK(reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    }
    // Idempotent on its own output.
    const auto again = pmfiber::frobenius_form(form.permuted);
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(again.order == identity);
    CHECK(again.block_count() == form.block_count());
  }
}

TEST_CASE("structure_check") {
  const auto report = pmfiber::structure_check(fixtures::block6());
  CHECK(report.ok());
  REQUIRE(report.factors.size() == 3);
  const auto expected = fixtures::block6_factors();
  for (std::size_t b = 0; b < 3; ++b) CHECK(report.factors[b].fpoly == expected[b]);

  const auto diag = int_matrix({{2, 0, 0}, {0, -1, 0}, {0, 0, 5}});
  const auto dreport = pmfiber::structure_check(diag);
  CHECK(dreport.ok());
  REQUIRE(dreport.factors.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(dreport.factors[static_cast<std::size_t>(k)].fpoly == P::variable(3, k) + P::constant(3, diag(k, k)));
  }

  rnd::Engine rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> sizes;
    const int count = 1 + trial % 4;
    for (int b = 0; b < count; ++b) sizes.push_back(1 + static_cast<int>(rnd::uniform_int(rng, 0, 2)));
    const auto planted = rnd::planted_block_triangular<Rational>(rng, sizes);
    const auto r = pmfiber::structure_check(planted.matrix);
    CHECK(r.form.block_count() == planted.block_count);
    CHECK(r.ok());
  }
}

TEST_CASE("irreducibility matches nonzero adjugate entries and Rayleigh differences") {
  rnd::Engine rng(23);
  std::bernoulli_distribution sparse(0.35);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 4;
    Matrix<Rational> a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = i == j || sparse(rng) ? rnd::entry<Rational>(rng, -3, 3) : Rational(0);
    }
    const bool irreducible = pmfiber::is_irreducible(a);
    const auto g = pmfiber::adjugate_table(a);
    const P f = pmfiber::det_poly(a).fpoly;
    bool adj_nonzero = true;
    bool delta_nonzero = true;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        adj_nonzero = adj_nonzero && !g(i, j).is_zero();
        if (i != j) delta_nonzero = delta_nonzero && !pmfiber::rayleigh_difference(f, i, j).is_zero();
      }
    }
    CHECK(irreducible == adj_nonzero);
    CHECK(irreducible == delta_nonzero);
  }
}

TEST_CASE("fiber_shape and sampled members") {
  const auto shape = pmfiber::fiber_shape(fixtures::block6());
  CHECK(shape.blocks.size() == 3);
  CHECK(shape.free_blocks == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(shape.blocks[0].block == int_matrix({{1, -1}, {1, 2}}));

  const auto single = pmfiber::fiber_shape(fixtures::cut4_a());
  CHECK(single.blocks.size() == 1);
  CHECK(single.free_blocks.empty());

  rnd::Engine rng(24);
  const auto a6 = fixtures::block6();
  const auto pm = pmfiber::principal_minors(a6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = rnd::nonzero_diagonal<Rational>(rng, 6);
    const auto b = pmfiber::realize_fiber_member<Rational>(shape, std::span<const Rational>(d),
                                                           [&](int, int) { return rnd::entry<Rational>(rng, -9, 9); });
    CHECK(pmfiber::principal_minors(b) == pm);
  }

  const auto sym = int_matrix({{1, 2, 0, 0}, {2, 3, 0, 0}, {0, 0, -1, 4}, {0, 0, 4, 2}});
  const auto sshape = pmfiber::fiber_shape(sym);
  CHECK(sshape.free_blocks.size() == 1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = rnd::nonzero_diagonal<Rational>(rng, 4);
    const auto b = pmfiber::realize_fiber_member<Rational>(sshape, std::span<const Rational>(d),
                                                           [&](int, int) { return rnd::entry<Rational>(rng, -9, 9); });
    CHECK(oracles::same_principal_minors(b, sym));
  }
}

TEST_CASE("structure over Q(i)") {
  Matrix<Gaussian> a = Matrix<Gaussian>::Zero(3, 3);
  a(0, 0) = Gaussian::i();
  a(0, 1) = Gaussian(Rational(2));
  a(1, 0) = Gaussian(Rational(1), Rational(1));
  a(1, 2) = Gaussian(Rational(3));
  a(2, 2) = Gaussian(Rational(-1));
  const auto report = pmfiber::structure_check(a);
  CHECK(report.form.block_count() == 2);
  CHECK(report.ok());
}
