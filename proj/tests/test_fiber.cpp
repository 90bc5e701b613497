#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmfiber/error.hpp"
#include "pmfiber/fiber.hpp"
#include "pmfiber/random.hpp"

using fixtures::int_matrix;
using fixtures::Vars;
using pmfiber::FiberReason;
using pmfiber::FiberVerdict;
using pmfiber::Gaussian;
using pmfiber::IndexSet;
using pmfiber::Matrix;
using pmfiber::Rational;
using P = pmfiber::MPoly<Rational>;
namespace rnd = pmfiber::random;

namespace {

bool proportional(const P& p, const P& q) { return pmfiber::constant_ratio(p, q).has_value(); }

// Brute-force cut test on every admissible subset.
template <typename S>
std::vector<IndexSet> brute_force_cuts(const Matrix<S>& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<IndexSet> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const IndexSet x(mask);
    if (x.size() < 2 || x.size() > n - 2) continue;
    const IndexSet xc = x.complement(n);
    if (pmfiber::rank(pmfiber::submatrix(a, x, xc)) <= 1 && pmfiber::rank(pmfiber::submatrix(a, xc, x)) <= 1) {
      out.push_back(x);
    }
  }
  return out;
}

template <typename S>
void check_witness(const Matrix<S>& a, const Matrix<S>& w) {
  CHECK(oracles::same_principal_minors(a, w));
  CHECK_FALSE(pmfiber::diagonal_equivalence(a, w));
}

}  // namespace

TEST_CASE("find_cuts examples") {
  const auto cuts = pmfiber::find_cuts(fixtures::cut4_a());
  REQUIRE_FALSE(cuts.empty());
  CHECK(cuts.front().x == IndexSet::from_elements({0, 1}));
  CHECK(cuts.front().rank_x_xc <= 1);
  CHECK(cuts.front().rank_xc_x <= 1);

  rnd::Engine rng(41);
  CHECK(pmfiber::find_cuts(rnd::matrix<Rational>(rng, 3)).empty());

  const Matrix<Rational> ones = Matrix<Rational>::Constant(4, 4, Rational(1));
  const auto all = pmfiber::find_cuts(ones);
  REQUIRE(all.size() == 3);
  CHECK(all[0].x == IndexSet::from_elements({0, 1}));
  CHECK(all[1].x == IndexSet::from_elements({0, 2}));
  CHECK(all[2].x == IndexSet::from_elements({0, 3}));
}

TEST_CASE("find_cuts reports each complementary pair once") {
  rnd::Engine rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 3;
    const auto planted = rnd::planted_cut<Rational>(rng, n, 2);
    const auto cuts = pmfiber::find_cuts(planted.matrix);
    const auto brute = brute_force_cuts(planted.matrix);
    CHECK(2 * cuts.size() == brute.size());
    bool found = false;
    for (const auto& c : cuts) {
      const IndexSet xc = c.x.complement(n);
      const bool has_x = std::find(brute.begin(), brute.end(), c.x) != brute.end();
      const bool has_xc = std::find(brute.begin(), brute.end(), xc) != brute.end();
      CHECK(has_x);
      CHECK(has_xc);
      CHECK(c.x.size() <= xc.size());
      for (const auto& other : cuts) CHECK_FALSE(other.x == xc);
      found = found || c.x == planted.cut || xc == planted.cut;
    }
    CHECK(found);
  }
}

TEST_CASE("generic points") {
  CHECK(pmfiber::generic_point<Rational>(3, 0) == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  CHECK(pmfiber::generic_point<Rational>(3, 1) == std::vector<Rational>{Rational(2), Rational(3), Rational(5)});
  CHECK(pmfiber::generic_point<Rational>(3, 2) == std::vector<Rational>{Rational(3), Rational(5), Rational(7)});
}

TEST_CASE("rank_one_split on the 4x4 example") {
  const auto g = pmfiber::adjugate_table(fixtures::cut4_a());
  const auto s = pmfiber::rank_one_split(g, IndexSet::from_elements({0, 1}));
  const Vars v{4};
  CHECK(proportional(s.a[0], v.x(2) - v.c(2)));
  CHECK(proportional(s.a[1], v.c(3) * v.x(1) + v.c(7)));
  CHECK(proportional(s.b[2], v.x(4) + v.c(3)));
  CHECK(proportional(s.b[3], v.c(2) * v.x(3) + v.c(3)));
  CHECK(proportional(s.c[2], v.x(4)));
  CHECK(proportional(s.c[3], v.x(3) + v.c(3)));
  CHECK(proportional(s.d[0], v.x(2) - v.c(1)));
  CHECK(proportional(s.d[1], v.c(2) * v.x(1) + v.c(5)));
  // x2 = 2 kills a_1, so the first point is skipped.
  CHECK(s.attempts == 2);
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      const int sign = i % 2 == 0 ? -1 : 1;
      CHECK(g(i, j) == (sign > 0 ? s.a[i] * s.b[j] : -(s.a[i] * s.b[j])));
      CHECK(g(j, i) == (sign > 0 ? s.c[j] * s.d[i] : -(s.c[j] * s.d[i])));
      CHECK_FALSE(s.a[i].depends_on(i));
      CHECK_FALSE(s.a[i].depends_on(j));
      CHECK_FALSE(s.b[j].depends_on(i));
      CHECK_FALSE(s.b[j].depends_on(j));
    }
  }
  CHECK_THROWS_AS(pmfiber::rank_one_split(g, IndexSet::from_elements({0, 2})), pmfiber::VerificationError);
}

TEST_CASE("rank_one_split on planted cuts") {
  rnd::Engine rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    const auto planted = rnd::planted_cut<Rational>(rng, 4 + trial % 2, 2);
    if (!pmfiber::is_irreducible(planted.matrix)) continue;
    const auto g = pmfiber::adjugate_table(planted.matrix);
    const auto s = pmfiber::rank_one_split(g, planted.cut);
    CHECK(s.x == planted.cut);
  }
}

TEST_CASE("cut_swap_witness on the 4x4 example") {
  const auto a = fixtures::cut4_a();
  const auto w = pmfiber::cut_swap_witness(a, IndexSet::from_elements({0, 1}));
  check_witness(a, w.matrix);
  CHECK(pmfiber::is_irreducible(w.matrix));
  CHECK(pmfiber::diagonal_equivalence(w.matrix, fixtures::cut4_b()).has_value());
  CHECK(w.table == pmfiber::adjugate_table(w.matrix));
  CHECK(pmfiber::satisfies_adjugate_identity(w.table, w.matrix, pmfiber::det_poly(a).fpoly));

  rnd::Engine rng(44);
  const auto sym = rnd::symmetric_irreducible<Rational>(rng, 4);
  CHECK_THROWS_AS(pmfiber::cut_swap_witness(Matrix<Rational>::Constant(4, 4, Rational(1)).eval(),
                                            IndexSet::from_elements({0, 1})),
                  pmfiber::PreconditionError);
  CHECK_THROWS_AS(pmfiber::cut_swap_witness(a, IndexSet::from_elements({0, 2})), pmfiber::PreconditionError);
  CHECK_THROWS_AS(pmfiber::cut_swap_witness(sym, IndexSet::from_elements({0, 1})), pmfiber::PreconditionError);
}

TEST_CASE("cut_swap_witness on planted cuts") {
  rnd::Engine rng(45);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 12; ++trial) {
    const int n = 4 + trial % 3;
    const auto planted = rnd::planted_cut<Rational>(rng, n, 2 + trial % (n - 3));
    const auto& a = planted.matrix;
    if (!pmfiber::is_irreducible(a) || pmfiber::symmetrizability(a).symmetrizable()) continue;
    const auto prop = pmfiber::split_proportionality(pmfiber::rank_one_split(pmfiber::adjugate_table(a), planted.cut));
    CHECK_FALSE((prop.a_d && prop.b_c));
    if (prop.a_d || prop.b_c) {
      CHECK_THROWS_AS(pmfiber::cut_swap_witness(a, planted.cut), pmfiber::VerificationError);
      continue;
    }
    const auto w = pmfiber::cut_swap_witness(a, planted.cut);
    check_witness(a, w.matrix);
    CHECK(pmfiber::is_irreducible(w.matrix));
    ++checked;
  }
  CHECK(checked >= 10);

  // Over Q(i) as well.
  for (int trial = 0; trial < 4; ++trial) {
    const auto planted = rnd::planted_cut<Gaussian>(rng, 4, 2);
    const auto& a = planted.matrix;
    if (!pmfiber::is_irreducible(a) || pmfiber::symmetrizability(a).symmetrizable()) continue;
    const auto prop = pmfiber::split_proportionality(pmfiber::rank_one_split(pmfiber::adjugate_table(a), planted.cut));
    if (prop.a_d || prop.b_c) continue;
    check_witness(a, pmfiber::cut_swap_witness(a, planted.cut).matrix);
  }
}

TEST_CASE("swap construction with one proportional side") {
  // Irreducible, not symmetrizable, single cut {2,4}. a_i / d_i is constant
  // on X, so the two swaps reproduce A^T and A up to diagonal scaling. Solving
  // the minor equations directly shows the fiber holds only those two
  // classes.
  const auto a = int_matrix({{-4, -6, 4, -4}, {4, -3, 6, 2}, {3, -6, 0, -4}, {4, 3, 6, -4}});
  REQUIRE(pmfiber::is_irreducible(a));
  REQUIRE_FALSE(pmfiber::symmetrizability(a).symmetrizable());
  const auto cuts = pmfiber::find_cuts(a);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].x == IndexSet::from_elements({0, 2}));
  const IndexSet x = IndexSet::from_elements({1, 3});
  const auto prop = pmfiber::split_proportionality(pmfiber::rank_one_split(pmfiber::adjugate_table(a), x));
  CHECK(prop.a_d);
  CHECK_FALSE(prop.b_c);
  CHECK_THROWS_AS(pmfiber::cut_swap_witness(a, x), pmfiber::VerificationError);
  CHECK_THROWS_AS(pmfiber::classify_fiber(a), pmfiber::VerificationError);

  // Second solution of the normalized minor equations: D A^T D^-1.
  const auto at = int_matrix({{-4, 1, 1, 1}, {-24, -3, -8, 3}, {12, 9, 0, 9}, {-16, 2, -16, -4}});
  Matrix<Rational> b = at;
  b(2, 1) = Rational(9, 2);
  b(2, 3) = Rational(9, 2);
  b(3, 2) = Rational(-16, 3);
  CHECK(oracles::same_principal_minors(a, b));
  const auto cert = pmfiber::diagonal_equivalence(a, b);
  REQUIRE(cert);
  CHECK(cert->transposed);
}

TEST_CASE("reducible_witness") {
  const auto a = int_matrix({{1, 2, 0, 0}, {3, 4, 0, 0}, {0, 0, 5, 6}, {0, 0, 7, 8}});
  const auto w = pmfiber::reducible_witness(a);
  CHECK(w == int_matrix({{1, 2, 1, 1}, {3, 4, 1, 1}, {0, 0, 5, 6}, {0, 0, 7, 8}}));

  const auto a6 = fixtures::block6();
  const auto w6 = pmfiber::reducible_witness(a6);
  CHECK_FALSE(w6 == a6);
  check_witness(a6, w6);

  CHECK_THROWS_AS(pmfiber::reducible_witness(fixtures::cut4_a()), pmfiber::PreconditionError);
}

TEST_CASE("classify_fiber examples") {
  const auto c4 = pmfiber::classify_fiber(fixtures::cut4_a());
  CHECK(c4.verdict == FiberVerdict::MultiPoint);
  CHECK(c4.reason == FiberReason::HasCutNotSymmetrizable);
  REQUIRE(c4.cut);
  CHECK(c4.cut->x == IndexSet::from_elements({0, 1}));
  REQUIRE(c4.witness);
  check_witness(fixtures::cut4_a(), *c4.witness);

  rnd::Engine rng(46);
  const auto sym = rnd::symmetric_irreducible<Rational>(rng, 5);
  const auto cs = pmfiber::classify_fiber(sym);
  CHECK(cs.verdict == FiberVerdict::SinglePoint);
  CHECK(cs.reason == FiberReason::Symmetrizable);
  CHECK_FALSE(cs.witness);

  const auto dense = rnd::full_support_matrix<Rational>(rng, 5);
  REQUIRE(pmfiber::find_cuts(dense).empty());
  REQUIRE_FALSE(pmfiber::symmetrizability(dense).symmetrizable());
  const auto cd = pmfiber::classify_fiber(dense);
  CHECK(cd.verdict == FiberVerdict::SinglePoint);
  CHECK(cd.reason == FiberReason::NoCut);

  const auto c6 = pmfiber::classify_fiber(fixtures::block6());
  CHECK(c6.verdict == FiberVerdict::MultiPoint);
  CHECK(c6.reason == FiberReason::Reducible);
  REQUIRE(c6.witness);
  check_witness(fixtures::block6(), *c6.witness);

  const auto small = pmfiber::classify_fiber(rnd::full_support_matrix<Rational>(rng, 3));
  CHECK(small.verdict == FiberVerdict::SinglePoint);
  CHECK(small.reason == FiberReason::SmallN);
  const auto small_reducible = pmfiber::classify_fiber(int_matrix({{1, 1, 0}, {0, 2, 0}, {0, 0, 3}}));
  CHECK(small_reducible.verdict == FiberVerdict::MultiPoint);
  CHECK(small_reducible.reason == FiberReason::Reducible);
  CHECK(pmfiber::classify_fiber(int_matrix({{7}})).reason == FiberReason::SmallN);

  CHECK_THROWS_AS(pmfiber::classify_fiber(Matrix<Rational>::Identity(13, 13).eval()), pmfiber::SizeLimitError);
}

TEST_CASE("classify_fiber and recovery on conjugated symmetric matrices") {
  rnd::Engine rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 2;
    const auto s = rnd::symmetric_irreducible<Rational>(rng, n);
    const auto d = rnd::nonzero_diagonal<Rational>(rng, n);
    const auto a = pmfiber::conjugate_by_diagonal(s, std::span<const Rational>(d));
    CHECK(pmfiber::classify_fiber(a).verdict == FiberVerdict::SinglePoint);
    const auto cert = pmfiber::recover_diag_from_fiber(s, a);
    CHECK(cert.verifies(s, a));
  }
}

TEST_CASE("symmetric_fiber_describe") {
  rnd::Engine rng(48);
  const auto s = rnd::symmetric_irreducible<Rational>(rng, 4);
  const auto d1 = pmfiber::symmetric_fiber_describe(s);
  CHECK(d1.irreducible);
  CHECK(d1.shape.free_blocks.empty());

  const auto blocks = int_matrix({{1, 2, 0, 0}, {2, 3, 0, 0}, {0, 0, -1, 4}, {0, 0, 4, 2}});
  const auto d2 = pmfiber::symmetric_fiber_describe(blocks);
  CHECK_FALSE(d2.irreducible);
  REQUIRE(d2.shape.blocks.size() == 2);
  CHECK(d2.shape.free_blocks.size() == 1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = rnd::nonzero_diagonal<Rational>(rng, 4);
    const auto b = pmfiber::realize_fiber_member<Rational>(d2.shape, std::span<const Rational>(d),
                                                           [&](int, int) { return rnd::entry<Rational>(rng, -5, 5); });
    CHECK(oracles::same_principal_minors(b, blocks));
  }

  const auto d3 = pmfiber::symmetric_fiber_describe(int_matrix({{4}}));
  CHECK(d3.irreducible);
  CHECK_THROWS_AS(pmfiber::symmetric_fiber_describe(fixtures::cut4_a()), pmfiber::PreconditionError);
}

TEST_CASE("stable_certify") {
  rnd::Engine rng(49);
  const auto h = rnd::hermitian(rng, 4);
  const auto ch = pmfiber::stable_certify(h);
  CHECK(ch.certified);
  REQUIRE(ch.blocks.size() == 1);
  REQUIRE(ch.blocks[0].result.witness);
  for (const Gaussian& v : ch.blocks[0].result.witness->d) CHECK(v == Gaussian(Rational(1)));

  const auto c6 = pmfiber::stable_certify(pmfiber::to_gaussian(fixtures::block6()));
  CHECK_FALSE(c6.certified);
  REQUIRE(c6.blocks.size() == 3);
  REQUIRE(c6.failing_block);
  CHECK(*c6.failing_block == 0);
  CHECK(c6.blocks[0].block == IndexSet::from_elements({0, 4}));
  CHECK(c6.blocks[1].result.verdict == pmfiber::SymmetrizationVerdict::SymmetricEquivalentOverField);
  CHECK(c6.blocks[2].result.verdict == pmfiber::SymmetrizationVerdict::NotSymmetrizable);
  CHECK(c6.product_matches);

  Matrix<Gaussian> junk = Matrix<Gaussian>::Zero(4, 4);
  junk(0, 1) = junk(1, 0) = Gaussian(Rational(1));
  junk(2, 2) = Gaussian::i();
  junk(3, 3) = Gaussian(Rational(1));
  junk(0, 2) = Gaussian(Rational(5));
  junk(1, 3) = Gaussian(Rational(-2), Rational(1));
  const auto cj = pmfiber::stable_certify(junk);
  CHECK_FALSE(cj.certified);
  REQUIRE(cj.failing_block);
  CHECK(cj.blocks[static_cast<std::size_t>(*cj.failing_block)].block == IndexSet::single(2));
}
