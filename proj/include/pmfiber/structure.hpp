#pragma once

// Combinatorial structure of a matrix: its support digraph, strongly
// connected components, and the Frobenius normal form (block upper
// triangular, irreducible diagonal blocks). The determinantal polynomial
// factors along the diagonal blocks.

#include <functional>
#include <utility>
#include <vector>

#include "pmfiber/index_set.hpp"
#include "pmfiber/matrix.hpp"
#include "pmfiber/mpoly.hpp"
#include "pmfiber/symdet.hpp"

namespace pmfiber {

// Edge (i, j) iff i != j and A_ij != 0.
struct SupportDigraph {
  int n = 0;
  std::vector<std::vector<int>> out;

  bool has_edge(int i, int j) const;
  std::size_t edge_count() const;
};

template <typename S>
SupportDigraph support_digraph(const SquareMatrix<S>& a);

// Tarjan's algorithm. Components come back with sorted members, in the
// reverse topological order Tarjan produces.
std::vector<std::vector<int>> strongly_connected_components(const SupportDigraph& g);

template <typename S>
struct FrobeniusForm {
  // order[p] is the original index placed at position p.
  std::vector<int> order;
  std::vector<IndexSet> blocks;
  SquareMatrix<S> permuted;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// Components in a topological order of the condensation so that the permuted
// matrix is block upper triangular. Among ready components the one with the
// smallest original index goes first; members keep increasing order.
template <typename S>
FrobeniusForm<S> frobenius_form(const SquareMatrix<S>& a);

template <typename S>
bool is_irreducible(const SquareMatrix<S>& a);

template <typename S>
struct BlockFactor {
  IndexSet support;
  SquareMatrix<S> block;
  // det(block + diag(x_k : k in support)), written in all n variables.
  MPoly<S> fpoly;
  // Every entry of the block's adjugate table is nonzero.
  bool adjugate_nonzero = false;
};

template <typename S>
struct StructureReport {
  FrobeniusForm<S> form;
  std::vector<BlockFactor<S>> factors;
  MPoly<S> fpoly;
  bool product_matches = false;

  bool ok() const;
};

template <typename S>
StructureReport<S> structure_check(const SquareMatrix<S>& a, const Limits& limits = {});

// Template for the fiber: any matrix that is block upper triangular over the
// same blocks, whose diagonal blocks have the listed determinantal
// polynomials, with the strictly upper blocks unconstrained.
template <typename S>
struct FiberShape {
  int n = 0;
  std::vector<BlockFactor<S>> blocks;
  // (p, q) with p < q: rows of block p, columns of block q are free.
  std::vector<std::pair<int, int>> free_blocks;
};

template <typename S>
FiberShape<S> fiber_shape(const SquareMatrix<S>& a, const Limits& limits = {});

// A member of the template: diagonal blocks conjugated by diag(scaling),
// free positions filled by fill(i, j), everything below the blocks zero.
template <typename S>
SquareMatrix<S> realize_fiber_member(const FiberShape<S>& shape, std::span<const S> scaling,
                                     const std::function<S(int, int)>& fill);

}  // namespace pmfiber
