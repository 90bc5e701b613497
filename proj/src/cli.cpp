#include "pmfiber/cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pmfiber/equiv.hpp"
#include "pmfiber/error.hpp"
#include "pmfiber/fiber.hpp"
#include "pmfiber/io.hpp"
#include "pmfiber/random.hpp"
#include "pmfiber/structure.hpp"
#include "pmfiber/symdet.hpp"

namespace pmfiber::cli {

namespace {

using io::AnyMatrix;
using io::Json;
namespace rnd = pmfiber::random;

struct Outcome {
  Json doc;
  int code = kExitOk;
};

template <typename M>
using ScalarOf = typename std::decay_t<M>::Scalar;

Matrix<Gaussian> as_gaussian(const AnyMatrix& m) {
  if (const auto* q = std::get_if<Matrix<Rational>>(&m)) return to_gaussian(*q);
  return std::get<Matrix<Gaussian>>(m);
}

int dim(const AnyMatrix& m) {
  return std::visit([](const auto& a) { return static_cast<int>(a.rows()); }, m);
}

IndexSet parse_cut(const std::string& text, int n) {
  IndexSet s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--cut expects comma separated 1-based indices, got '" + text + "'");
    }
    if (k < 1 || k > n) throw PreconditionError("--cut index " + std::to_string(k) + " is outside 1.." + std::to_string(n));
    s = s.with(k - 1);
  }
  return s;
}

std::vector<IndexSet> subsets_by_size(int n) {
  std::vector<IndexSet> out;
  for_each_subset(IndexSet::all(n), [&](IndexSet s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), [](IndexSet a, IndexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  });
  return out;
}

template <typename S>
Json poly_matrix(const PolyMatrix<S>& g, bool structured) {
  Json rows = Json::array();
  for (int i = 0; i < g.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(io::polynomial(g(i, j), structured));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
Json certificate_json(const std::optional<DiagonalCertificate<S>>& c) {
  if (!c) return nullptr;
  Json out;
  out["d"] = io::scalars(c->d);
  out["transposed"] = c->transposed;
  return out;
}

template <typename S>
Json witness_check(const Matrix<S>& a, const Matrix<S>& b) {
  Json out;
  out["equal_minors"] = principal_minors(a) == principal_minors(b);
  out["diagonally_equivalent"] = diagonal_equivalence(a, b).has_value();
  return out;
}

template <typename S>
Json fiber_shape_json(const FiberShape<S>& shape, bool structured) {
  Json blocks = Json::array();
  for (const auto& b : shape.blocks) {
    Json item;
    item["support"] = io::labels(b.support);
    item["block"] = io::matrix_file(b.block)["entries"];
    item["fpoly"] = io::polynomial(b.fpoly, structured);
    blocks.push_back(std::move(item));
  }
  Json free = Json::array();
  for (const auto& [p, q] : shape.free_blocks) {
    Json item;
    item["rows"] = io::labels(shape.blocks[static_cast<std::size_t>(p)].support);
    item["cols"] = io::labels(shape.blocks[static_cast<std::size_t>(q)].support);
    free.push_back(std::move(item));
  }
  Json out;
  out["n"] = shape.n;
  out["blocks"] = std::move(blocks);
  out["free_blocks"] = std::move(free);
  return out;
}

template <typename S>
Json symmetrization_json(const SymmetrizabilityResult<S>& r, Outcome& o) {
  Json result;
  result["verdict"] = verdict_name(r.verdict);
  result["e"] = r.e ? io::scalars(*r.e) : Json(nullptr);
  result["detail"] = r.detail;
  o.doc["result"] = std::move(result);
  o.doc["certificate"] = certificate_json(r.witness);
  o.doc["witness"] = r.symmetrized ? io::matrix_file(*r.symmetrized) : Json(nullptr);
  return o.doc;
}

// Commands.

Outcome cmd_minors(const AnyMatrix& m) {
  return std::visit(
      [](const auto& a) {
        using S = ScalarOf<decltype(a)>;
        const int n = static_cast<int>(a.rows());
        const PMVector<S> pm = principal_minors(a);
        Json minors = Json::array();
        for (IndexSet s : subsets_by_size(n)) {
          Json item;
          item["subset"] = io::labels(s);
          item["value"] = to_string(pm[s]);
          minors.push_back(std::move(item));
        }
        Outcome o;
        o.doc["result"]["n"] = n;
        o.doc["result"]["field"] = ScalarTraits<S>::name;
        o.doc["result"]["minors"] = std::move(minors);
        return o;
      },
      m);
}

Outcome cmd_detpoly(const AnyMatrix& m, bool structured) {
  return std::visit(
      [&](const auto& a) {
        using S = ScalarOf<decltype(a)>;
        const DeterminantalPencil<S> p = det_poly(a);
        Outcome o;
        o.doc["result"]["n"] = a.rows();
        o.doc["result"]["terms"] = p.fpoly.term_count();
        o.doc["polynomials"]["f"] = io::polynomial(p.fpoly, structured);
        return o;
      },
      m);
}

Outcome cmd_adjugate(const AnyMatrix& m, bool structured) {
  return std::visit(
      [&](const auto& a) {
        const auto g = adjugate_table(a);
        int nonzero = 0;
        for (int i = 0; i < g.n(); ++i) {
          for (int j = 0; j < g.n(); ++j) nonzero += g(i, j).is_zero() ? 0 : 1;
        }
        Outcome o;
        o.doc["result"]["n"] = a.rows();
        o.doc["result"]["nonzero_entries"] = nonzero;
        o.doc["polynomials"]["G"] = poly_matrix(g, structured);
        return o;
      },
      m);
}

Outcome cmd_cuts(const AnyMatrix& m) {
  return std::visit(
      [](const auto& a) {
        const int n = static_cast<int>(a.rows());
        Json cuts = Json::array();
        for (const CutCertificate& c : find_cuts(a)) {
          Json item;
          item["cut"] = io::labels(c.x);
          item["complement"] = io::labels(c.x.complement(n));
          item["rank_X_Xc"] = c.rank_x_xc;
          item["rank_Xc_X"] = c.rank_xc_x;
          cuts.push_back(std::move(item));
        }
        Outcome o;
        o.doc["result"]["n"] = n;
        o.doc["result"]["cuts"] = std::move(cuts);
        return o;
      },
      m);
}

Outcome cmd_classify(const AnyMatrix& m) {
  return std::visit(
      [](const auto& a) {
        const auto c = classify_fiber(a);
        Outcome o;
        Json& r = o.doc["result"];
        r["verdict"] = fiber_verdict_name(c.verdict);
        r["reason"] = fiber_reason_name(c.reason);
        r["cut"] = c.cut ? io::labels(c.cut->x) : Json(nullptr);
        r["fallback_swap"] = c.fallback_swap;
        r["symmetrization"] = c.symmetrization ? Json(verdict_name(*c.symmetrization)) : Json(nullptr);
        r["note"] = c.note;
        o.doc["witness"] = c.witness ? io::matrix_file(*c.witness) : Json(nullptr);
        o.doc["certificate"] = c.witness ? witness_check(a, *c.witness) : Json(nullptr);
        return o;
      },
      m);
}

Outcome cmd_witness(const AnyMatrix& m, const std::optional<std::string>& cut) {
  return std::visit(
      [&](const auto& a) {
        Outcome o;
        if (cut) {
          const IndexSet x = parse_cut(*cut, static_cast<int>(a.rows()));
          const auto w = cut_swap_witness(a, x);
          o.doc["result"]["cut"] = io::labels(w.cut);
          o.doc["result"]["fallback_swap"] = w.fallback;
          o.doc["witness"] = io::matrix_file(w.matrix);
          o.doc["certificate"] = witness_check(a, w.matrix);
          return o;
        }
        const auto c = classify_fiber(a);
        o.doc["result"]["verdict"] = fiber_verdict_name(c.verdict);
        o.doc["result"]["reason"] = fiber_reason_name(c.reason);
        o.doc["result"]["cut"] = c.cut && c.witness && c.reason == FiberReason::HasCutNotSymmetrizable
                                     ? io::labels(c.cut->x)
                                     : Json(nullptr);
        o.doc["result"]["fallback_swap"] = c.fallback_swap;
        o.doc["witness"] = c.witness ? io::matrix_file(*c.witness) : Json(nullptr);
        o.doc["certificate"] = c.witness ? witness_check(a, *c.witness) : Json(nullptr);
        return o;
      },
      m);
}

Outcome cmd_equiv(AnyMatrix a, AnyMatrix b) {
  if (dim(a) != dim(b)) throw PreconditionError("matrices have different sizes");
  if (a.index() != b.index()) {
    a = as_gaussian(a);
    b = as_gaussian(b);
  }
  return std::visit(
      [&](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        const auto c = diagonal_equivalence(x, std::get<M>(b));
        Outcome o;
        o.doc["result"]["equivalent"] = c.has_value();
        o.doc["result"]["transposed"] = c ? Json(c->transposed) : Json(nullptr);
        o.doc["certificate"] = certificate_json(c);
        return o;
      },
      a);
}

Outcome cmd_structure(const AnyMatrix& m, bool structured) {
  return std::visit(
      [&](const auto& a) {
        const auto rep = structure_check(a);
        Json blocks = Json::array();
        Json factors = Json::array();
        Json nonzero = Json::array();
        for (const auto& f : rep.factors) {
          blocks.push_back(io::labels(f.support));
          factors.push_back(io::polynomial(f.fpoly, structured));
          nonzero.push_back(f.adjugate_nonzero);
        }
        Json order = Json::array();
        for (int k : rep.form.order) order.push_back(k + 1);
        Outcome o;
        Json& r = o.doc["result"];
        r["blocks"] = std::move(blocks);
        r["order"] = std::move(order);
        r["factors"] = std::move(factors);
        r["adjugate_nonzero"] = std::move(nonzero);
        r["product_matches"] = rep.product_matches;
        r["ok"] = rep.ok();
        o.doc["polynomials"]["f"] = io::polynomial(rep.fpoly, structured);
        o.doc["witness"] = io::matrix_file(rep.form.permuted);
        return o;
      },
      m);
}

Outcome cmd_fibershape(const AnyMatrix& m, bool structured) {
  return std::visit(
      [&](const auto& a) {
        Outcome o;
        o.doc["result"] = fiber_shape_json(fiber_shape(a), structured);
        return o;
      },
      m);
}

Outcome cmd_symmetrize(const AnyMatrix& m) {
  return std::visit(
      [](const auto& a) {
        Outcome o;
        symmetrization_json(symmetrizability(a), o);
        return o;
      },
      m);
}

Outcome cmd_hermitize(const AnyMatrix& m) {
  Outcome o;
  symmetrization_json(hermitian_equivalence(as_gaussian(m)), o);
  return o;
}

Outcome cmd_symfiber(const AnyMatrix& m, bool structured) {
  return std::visit(
      [&](const auto& a) {
        const auto d = symmetric_fiber_describe(a);
        Outcome o;
        o.doc["result"]["irreducible"] = d.irreducible;
        o.doc["result"]["summary"] = d.summary;
        o.doc["result"]["shape"] = fiber_shape_json(d.shape, structured);
        return o;
      },
      m);
}

Outcome cmd_stablecert(const AnyMatrix& m, bool structured) {
  const StableCertificate c = stable_certify(as_gaussian(m));
  Json blocks = Json::array();
  Json factors = Json::array();
  for (const auto& b : c.blocks) {
    Json item;
    item["block"] = io::labels(b.block);
    item["verdict"] = verdict_name(b.result.verdict);
    item["e"] = b.result.e ? io::scalars(*b.result.e) : Json(nullptr);
    item["d"] = b.result.witness ? io::scalars(b.result.witness->d) : Json(nullptr);
    item["hermitian"] = b.result.symmetrized ? io::matrix_file(*b.result.symmetrized) : Json(nullptr);
    blocks.push_back(std::move(item));
    factors.push_back(io::polynomial(b.fpoly, structured));
  }
  Outcome o;
  o.doc["result"]["certified"] = c.certified;
  o.doc["result"]["failing_block"] =
      c.failing_block ? io::labels(c.blocks[static_cast<std::size_t>(*c.failing_block)].block) : Json(nullptr);
  o.doc["result"]["product_matches"] = c.product_matches;
  o.doc["certificate"]["blocks"] = std::move(blocks);
  o.doc["polynomials"]["f"] = io::polynomial(c.fpoly, structured);
  o.doc["polynomials"]["factors"] = std::move(factors);
  return o;
}

Outcome cmd_verify(const AnyMatrix& m, const std::vector<std::string>& names) {
  std::vector<Identity> which;
  for (const auto& name : names) which.push_back(parse_identity(name));
  if (which.empty()) which = {Identity::Dodgson, Identity::Resultant, Identity::Laplace, Identity::Adjugate};
  const IdentityReport rep = std::visit([&](const auto& a) { return verify_identities(a, which); }, m);
  Json ids = Json::array();
  for (Identity id : which) {
    Json item;
    item["identity"] = identity_name(id);
    item["checks"] = rep.count(id);
    item["failures"] = rep.failures(id);
    ids.push_back(std::move(item));
  }
  Outcome o;
  o.doc["result"] = rep.all_passed() ? "pass" : "fail";
  o.doc["report"]["identities"] = std::move(ids);
  o.doc["report"]["total_checks"] = rep.checks.size();
  o.doc["report"]["total_failures"] = rep.failures();
  o.code = rep.all_passed() ? kExitOk : kExitVerification;
  return o;
}

// selftest

struct Suite {
  std::string name;
  int trials = 0;
  int failures = 0;
  // Cut suite only: instances where both swaps fall into the classes of A and A^T.
  int degenerate = 0;
  int skipped = 0;
  std::vector<std::string> messages;

  void fail(int trial, const std::string& why) {
    ++failures;
    if (messages.size() < 5) messages.push_back("trial " + std::to_string(trial) + ": " + why);
  }
};

template <typename S>
Matrix<S> sparse_matrix(rnd::Engine& rng, int n) {
  Matrix<S> a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = i == j || rnd::uniform_int(rng, 0, 9) < 3 ? rnd::nonzero_entry<S>(rng, -5, 5) : S(0);
    }
  }
  return a;
}

std::vector<int> random_partition(rnd::Engine& rng, int n) {
  std::vector<int> sizes;
  int left = n;
  while (left > 0) {
    const int s = static_cast<int>(rnd::uniform_int(rng, 1, std::min(left, 3)));
    sizes.push_back(s);
    left -= s;
  }
  return sizes;
}

template <typename Fn>
void run_trials(Suite& suite, int trials, Fn&& body) {
  for (int t = 0; t < trials; ++t) {
    ++suite.trials;
    try {
      body(t);
    } catch (const Error& e) {
      suite.fail(t, e.what());
    }
  }
}

std::vector<Suite> selftest(int n, int trials, std::uint64_t seed) {
  std::vector<Suite> suites;
  std::uint64_t stream = 0;
  auto next = [&](const std::string& name) -> std::pair<Suite&, rnd::Engine> {
    suites.emplace_back();
    suites.back().name = name;
    std::seed_seq seq{seed, ++stream};
    return {suites.back(), rnd::Engine(seq)};
  };

  {
    auto [suite, rng] = next("identities");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto all = {Identity::Dodgson, Identity::Resultant, Identity::Laplace, Identity::Adjugate};
      const bool ok = t % 2 == 0 ? verify_identities(rnd::matrix<Rational>(rng, n), all).all_passed()
                                 : verify_identities(rnd::matrix<Gaussian>(rng, n), all).all_passed();
      if (!ok) suite.fail(t, "identity check failed");
    });
  }
  {
    auto [suite, rng] = next("equivalence");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto a = rnd::full_support_matrix<Rational>(rng, n);
      const auto d = rnd::nonzero_diagonal<Rational>(rng, n);
      Matrix<Rational> b = conjugate_by_diagonal(a, std::span<const Rational>(d));
      if (t % 2 == 1) b = conjugate_by_diagonal(Matrix<Rational>(a.transpose()), std::span<const Rational>(d));
      if (principal_minors(a) != principal_minors(b)) suite.fail(t, "minors differ");
      const auto c = diagonal_equivalence(a, b);
      if (!c || !c->verifies(a, b)) suite.fail(t, "no verified certificate");
    });
  }
  {
    auto [suite, rng] = next("irreducibility");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto a = sparse_matrix<Rational>(rng, n);
      const bool irreducible = is_irreducible(a);
      const auto g = adjugate_table(a);
      const auto f = det_poly(a).fpoly;
      bool adj_nonzero = true;
      bool delta_nonzero = true;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          adj_nonzero = adj_nonzero && !g(i, j).is_zero();
          if (i != j) delta_nonzero = delta_nonzero && !rayleigh_difference(f, i, j).is_zero();
        }
      }
      if (irreducible != adj_nonzero || irreducible != delta_nonzero) suite.fail(t, "irreducibility criteria disagree");
    });
  }
  {
    auto [suite, rng] = next("structure");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto planted = rnd::planted_block_triangular<Rational>(rng, random_partition(rng, n));
      const auto rep = structure_check(planted.matrix);
      if (!rep.ok() || rep.form.block_count() != planted.block_count) suite.fail(t, "block structure not recovered");
    });
  }
  {
    auto [suite, rng] = next("cut_witness");
    if (n < 4) {
      suite.skipped = trials;
    } else {
      run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
        const auto planted = rnd::planted_cut<Rational>(rng, n, static_cast<int>(rnd::uniform_int(rng, 2, n - 2)));
        if (symmetrizability(planted.matrix).symmetrizable()) {
          ++suite.skipped;
          return;
        }
        try {
          const auto w = cut_swap_witness(planted.matrix, planted.cut);
          if (principal_minors(w.matrix) != principal_minors(planted.matrix)) suite.fail(t, "witness minors differ");
          if (diagonal_equivalence(planted.matrix, w.matrix)) suite.fail(t, "witness is equivalent");
        } catch (const VerificationError& e) {
          const auto split = rank_one_split(adjugate_table(planted.matrix), planted.cut);
          const auto prop = split_proportionality(split);
          if (prop.a_d != prop.b_c) {
            ++suite.degenerate;
          } else {
            suite.fail(t, e.what());
          }
        }
      });
    }
  }
  {
    auto [suite, rng] = next("symmetric_fiber");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto s = rnd::symmetric_irreducible<Rational>(rng, n);
      const auto d = rnd::nonzero_diagonal<Rational>(rng, n);
      const auto b = conjugate_by_diagonal(s, std::span<const Rational>(d));
      if (classify_fiber(b).verdict != FiberVerdict::SinglePoint) suite.fail(t, "conjugate not single point");
      if (!recover_diag_from_fiber(s, b).verifies(s, b)) suite.fail(t, "recovered D does not verify");
    });
  }
  {
    auto [suite, rng] = next("stable_certificate");
    run_trials(suite, trials, [&, &suite = suite, &rng = rng](int t) {
      const auto h = rnd::hermitian(rng, n);
      const auto d = rnd::nonzero_diagonal<Gaussian>(rng, n);
      if (!stable_certify(conjugate_by_diagonal(h, std::span<const Gaussian>(d))).certified) {
        suite.fail(t, "conjugated Hermitian matrix not certified");
      }
    });
  }
  return suites;
}

Outcome cmd_selftest(int n, int trials, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("--n must be at least 2");
  if (trials < 1) throw PreconditionError("--trials must be positive");
  check_size_limit(n, Limits{}.identities, "selftest");
  const auto suites = selftest(n, trials, seed);
  Json list = Json::array();
  bool ok = true;
  for (const Suite& s : suites) {
    Json item;
    item["suite"] = s.name;
    item["trials"] = s.trials;
    item["failures"] = s.failures;
    item["skipped"] = s.skipped;
    if (s.name == "cut_witness") item["degenerate"] = s.degenerate;
    item["messages"] = s.messages;
    list.push_back(std::move(item));
    ok = ok && s.failures == 0;
  }
  Outcome o;
  o.doc["result"] = ok ? "pass" : "fail";
  o.doc["report"]["generator"] = rnd::kEngineName;
  o.doc["report"]["seed"] = seed;
  o.doc["report"]["n"] = n;
  o.doc["report"]["suites"] = std::move(list);
  o.code = ok ? kExitOk : kExitVerification;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal minor fibers, diagonal equivalence and symbolic determinants over Q and Q(i)", "pmfiber"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_poly = false;
  app.add_flag("--json-poly", json_poly, "Print polynomials as subset/coefficient arrays");

  std::string file;
  std::string file2;
  std::optional<std::string> cut;
  std::vector<std::string> identities;
  int n = 5;
  int trials = 20;
  std::uint64_t seed = 1;

  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> commands;
  auto single = [&](const char* name, const char* help, std::function<Outcome(const AnyMatrix&)> fn) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->add_option("matrix", file, "MatrixFile JSON")->required();
    commands.emplace_back(sc, [&, fn] { return fn(io::read_matrix_file(file)); });
    return sc;
  };

  single("minors", "All principal minors", cmd_minors);
  single("detpoly", "f_A = det(diag(x) + A)", [&](const AnyMatrix& m) { return cmd_detpoly(m, json_poly); });
  single("adjugate", "Adjugate table of diag(x) + A", [&](const AnyMatrix& m) { return cmd_adjugate(m, json_poly); });
  single("cuts", "All cuts, each reported once", cmd_cuts);
  single("classify", "Single-point or multi-point fiber, with a witness", cmd_classify);
  CLI::App* witness = single("witness", "Second fiber point", [&](const AnyMatrix& m) { return cmd_witness(m, cut); });
  witness->add_option("--cut", cut, "Cut as 1-based indices, e.g. 1,2");
  single("structure", "Frobenius normal form and block factorization",
         [&](const AnyMatrix& m) { return cmd_structure(m, json_poly); });
  single("fibershape", "Block template of the fiber", [&](const AnyMatrix& m) { return cmd_fibershape(m, json_poly); });
  single("symmetrize", "Diagonal similarity to a symmetric matrix", cmd_symmetrize);
  single("hermitize", "Diagonal similarity to a Hermitian matrix", cmd_hermitize);
  single("symfiber", "Fiber of a symmetric matrix", [&](const AnyMatrix& m) { return cmd_symfiber(m, json_poly); });
  single("stablecert", "Real stability certificate from Hermitian blocks",
         [&](const AnyMatrix& m) { return cmd_stablecert(m, json_poly); });
  CLI::App* verify = single("verify", "Check the determinantal identities",
                            [&](const AnyMatrix& m) { return cmd_verify(m, identities); });
  verify->add_option("--identity", identities, "dodgson, resultant, laplace or adjugate (repeatable)");

  CLI::App* equiv = app.add_subcommand("equiv", "Diagonal equivalence of two matrices");
  equiv->add_option("a", file, "MatrixFile JSON")->required();
  equiv->add_option("b", file2, "MatrixFile JSON")->required();
  commands.emplace_back(equiv, [&] { return cmd_equiv(io::read_matrix_file(file), io::read_matrix_file(file2)); });

  CLI::App* self = app.add_subcommand("selftest", "Randomized property suites");
  self->add_option("--n", n, "Matrix size")->capture_default_str();
  self->add_option("--trials", trials, "Trials per suite")->capture_default_str();
  self->add_option("--seed", seed, "Seed for mt19937_64")->capture_default_str();
  commands.emplace_back(self, [&] { return cmd_selftest(n, trials, seed); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (auto& [sc, fn] : commands) {
      if (!sc->parsed()) continue;
      const Outcome o = fn();
      out << o.doc.dump(2) << '\n';
      return o.code;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitInput;
}

}  // namespace pmfiber::cli
