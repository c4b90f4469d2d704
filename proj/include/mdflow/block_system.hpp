#pragma once

#include <string>
#include <vector>

#include "mdflow/core.hpp"
#include "mdflow/sparse.hpp"

namespace mdflow {

/// One contiguous run of degrees of freedom owned by a graph node (grid).
struct DofBlock {
  int node = -1;   // grid index in the bucket
  int dim = -1;    // topological dimension of that grid
  int offset = 0;  // first global dof
  int size = 0;
};

/// Global dof layout: blocks ordered by descending dimension, then node
/// insertion order, so all dofs of one dimension are contiguous.
struct DofMap {
  Scheme scheme = Scheme::Tpfa;
  int total = 0;
  std::vector<DofBlock> blocks;

  const DofBlock& block_of_node(int node) const {
    for (const DofBlock& b : blocks)
      if (b.node == node) return b;
    throw UnknownBlock("no dof block for node " + std::to_string(node));
  }

  /// [offset, offset+size) covering every block of dimension d.
  std::pair<int, int> dim_range(int d) const {
    int lo = -1, hi = -1;
    for (const DofBlock& b : blocks) {
      if (b.dim != d) continue;
      if (lo < 0) lo = b.offset;
      hi = b.offset + b.size;
    }
    if (lo < 0) throw UnknownBlock("no dof block of dimension " + std::to_string(d));
    return {lo, hi};
  }

  bool has_dim(int d) const {
    for (const DofBlock& b : blocks)
      if (b.dim == d) return true;
    return false;
  }
};

struct BlockSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  DofMap dofs;
  std::vector<std::string> warnings;
};

/// Submatrix coupling all dofs of dimension row_dim to those of col_dim,
/// re-indexed to block-local numbering.
inline SparseMatrix extract_block(const BlockSystem& system, int row_dim, int col_dim) {
  const auto [r0, r1] = system.dofs.dim_range(row_dim);
  const auto [c0, c1] = system.dofs.dim_range(col_dim);
  std::vector<Triplet> entries;
  const SparseMatrix& a = system.matrix;
  for (int r = r0; r < r1; ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      const int c = a.col_idx()[k];
      if (c >= c0 && c < c1) entries.push_back({r - r0, c - c0, a.values()[k]});
    }
  return from_triplets(r1 - r0, c1 - c0, std::move(entries));
}

}  // namespace mdflow
