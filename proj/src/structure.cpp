#include "pmfiber/structure.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "pmfiber/error.hpp"

namespace pmfiber {

bool SupportDigraph::has_edge(int i, int j) const {
  const auto& row = out[static_cast<std::size_t>(i)];
  return std::find(row.begin(), row.end(), j) != row.end();
}

std::size_t SupportDigraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : out) total += row.size();
  return total;
}

template <typename S>
SupportDigraph support_digraph(const SquareMatrix<S>& a) {
  require_square(a, "support_digraph");
  SupportDigraph g;
  g.n = static_cast<int>(a.rows());
  g.out.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (i != j && !is_zero(a(i, j))) g.out[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  return g;
}

std::vector<std::vector<int>> strongly_connected_components(const SupportDigraph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    const auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (int w : g.out[vi]) {
      const auto wi = static_cast<std::size_t>(w);
      if (index[wi] < 0) {
        visit(w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      std::vector<int> component;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
  };

  for (int v = 0; v < g.n; ++v) {
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);
  }
  return components;
}

template <typename S>
FrobeniusForm<S> frobenius_form(const SquareMatrix<S>& a) {
  const SupportDigraph g = support_digraph(a);
  const auto components = strongly_connected_components(g);
  const std::size_t s = components.size();

  std::vector<std::size_t> component_of(static_cast<std::size_t>(g.n));
  for (std::size_t c = 0; c < s; ++c) {
    for (int v : components[c]) component_of[static_cast<std::size_t>(v)] = c;
  }
  std::vector<std::set<std::size_t>> successors(s);
  std::vector<int> indegree(s, 0);
  for (int i = 0; i < g.n; ++i) {
    for (int j : g.out[static_cast<std::size_t>(i)]) {
      const std::size_t ci = component_of[static_cast<std::size_t>(i)];
      const std::size_t cj = component_of[static_cast<std::size_t>(j)];
      if (ci != cj && successors[ci].insert(cj).second) ++indegree[cj];
    }
  }

  // Kahn's algorithm keyed on each component's smallest member.
  using Entry = std::pair<int, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < s; ++c) {
    if (indegree[c] == 0) ready.emplace(components[c].front(), c);
  }
  FrobeniusForm<S> form;
  while (!ready.empty()) {
    const std::size_t c = ready.top().second;
    ready.pop();
    form.blocks.push_back(IndexSet::from_elements(components[c]));
    form.order.insert(form.order.end(), components[c].begin(), components[c].end());
    for (std::size_t d : successors[c]) {
      if (--indegree[d] == 0) ready.emplace(components[d].front(), d);
    }
  }
  form.permuted = permute_symmetric(a, std::span<const int>(form.order));
  return form;
}

template <typename S>
bool is_irreducible(const SquareMatrix<S>& a) {
  return strongly_connected_components(support_digraph(a)).size() == 1;
}

namespace {

template <typename S>
BlockFactor<S> make_block_factor(const SquareMatrix<S>& a, IndexSet support, const Limits& limits) {
  const int n = static_cast<int>(a.rows());
  BlockFactor<S> factor;
  factor.support = support;
  factor.block = submatrix(a, support, support);
  const auto members = support.elements();
  factor.fpoly = det_poly(factor.block, limits).fpoly.rename(n, std::span<const int>(members));
  const AdjugateTable<S> adj = adjugate_table(factor.block, limits);
  factor.adjugate_nonzero = true;
  for (int i = 0; i < adj.n(); ++i) {
    for (int j = 0; j < adj.n(); ++j) factor.adjugate_nonzero = factor.adjugate_nonzero && !adj(i, j).is_zero();
  }
  return factor;
}

}  // namespace

template <typename S>
bool StructureReport<S>::ok() const {
  return product_matches && std::all_of(factors.begin(), factors.end(),
                                        [](const BlockFactor<S>& f) { return f.adjugate_nonzero; });
}

template <typename S>
StructureReport<S> structure_check(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "structure_check");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.adjugate, "structure_check");
  StructureReport<S> report;
  report.form = frobenius_form(a);
  report.fpoly = det_poly(a, limits).fpoly;
  MPoly<S> product = MPoly<S>::constant(n, S(1));
  for (IndexSet block : report.form.blocks) {
    report.factors.push_back(make_block_factor(a, block, limits));
    product = product * report.factors.back().fpoly;
  }
  report.product_matches = product == report.fpoly;
  return report;
}

template <typename S>
FiberShape<S> fiber_shape(const SquareMatrix<S>& a, const Limits& limits) {
  require_square(a, "fiber_shape");
  const int n = static_cast<int>(a.rows());
  check_size_limit(n, limits.adjugate, "fiber_shape");
  const FrobeniusForm<S> form = frobenius_form(a);
  FiberShape<S> shape;
  shape.n = n;
  for (IndexSet block : form.blocks) shape.blocks.push_back(make_block_factor(a, block, limits));
  for (int p = 0; p < form.block_count(); ++p) {
    for (int q = p + 1; q < form.block_count(); ++q) shape.free_blocks.emplace_back(p, q);
  }
  return shape;
}

template <typename S>
SquareMatrix<S> realize_fiber_member(const FiberShape<S>& shape, std::span<const S> scaling,
                                     const std::function<S(int, int)>& fill) {
  const int n = shape.n;
  SquareMatrix<S> b = SquareMatrix<S>::Zero(n, n);
  for (const BlockFactor<S>& block : shape.blocks) {
    const auto members = block.support.elements();
    for (std::size_t p = 0; p < members.size(); ++p) {
      for (std::size_t q = 0; q < members.size(); ++q) {
        const int i = members[p];
        const int j = members[q];
        const S& entry = block.block(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        b(i, j) = i == j ? entry : scaling[static_cast<std::size_t>(i)] * entry / scaling[static_cast<std::size_t>(j)];
      }
    }
  }
  for (const auto& [p, q] : shape.free_blocks) {
    for (int i : shape.blocks[static_cast<std::size_t>(p)].support.elements()) {
      for (int j : shape.blocks[static_cast<std::size_t>(q)].support.elements()) b(i, j) = fill(i, j);
    }
  }
  return b;
}

#define PMFIBER_INSTANTIATE(S)                                                                       \
  template SupportDigraph support_digraph<S>(const SquareMatrix<S>&);                                \
  template FrobeniusForm<S> frobenius_form<S>(const SquareMatrix<S>&);                               \
  template bool is_irreducible<S>(const SquareMatrix<S>&);                                           \
  template struct StructureReport<S>;                                                                \
  template StructureReport<S> structure_check<S>(const SquareMatrix<S>&, const Limits&);             \
  template FiberShape<S> fiber_shape<S>(const SquareMatrix<S>&, const Limits&);                      \
  template SquareMatrix<S> realize_fiber_member<S>(const FiberShape<S>&, std::span<const S>,         \
                                                   const std::function<S(int, int)>&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
