#pragma once

#include <string>
#include <vector>

#include "mdflow/block_system.hpp"
#include "mdflow/core.hpp"
#include "mdflow/grid.hpp"

namespace mdflow {

enum class BcKind : signed char { None = 0, Dirichlet = 1, Neumann = 2 };

/// Per-grid physical data. Permeability is scalar per cell unless the
/// optional tensor array is filled (then it wins). Aperture is 1 on the
/// top-dimensional grid; a cell of dimension d has cross-sectional measure
/// aperture^(N-d).
struct FlowData {
  std::vector<double> permeability;
  std::vector<std::array<double, 6>> permeability_tensor;  // xx,yy,zz,xy,xz,yz; empty = scalar
  std::vector<double> aperture;
  std::vector<double> source;
  std::vector<BcKind> bc_kind;
  std::vector<double> bc_value;

  void resize_default(const Grid& g) {
    permeability.assign(g.num_cells, 1.0);
    aperture.assign(g.num_cells, 1.0);
    source.assign(g.num_cells, 0.0);
    bc_kind.assign(g.num_faces, BcKind::None);
    bc_value.assign(g.num_faces, 0.0);
  }
};

/// Interface between a grid of dimension d (high) and one of dimension d-1
/// (low). Each entry maps one high face onto the low cell it coincides
/// with; side records which side of the internal boundary the face's cell
/// sits on. kappa is the effective normal permeability per low cell.
struct InterfaceEdge {
  int high = -1;
  int low = -1;
  struct Entry {
    int face = -1;
    int cell = -1;
    signed char side = 0;
  };
  std::vector<Entry> entries;
  std::vector<double> kappa;           // per low cell; empty until assigned
  std::vector<double> trans_cache;     // per entry; filled by the flow discretization
};

/// Graph of grids: nodes are mono-dimensional grids (with attached data),
/// edges are inter-dimensional interfaces. Mutable while being built, then
/// treated as frozen.
struct GridBucket {
  int ambient_dim = 3;
  Vec3 box_min{0, 0, 0};
  Vec3 box_max{1, 1, 1};

  std::vector<Grid> grids;
  std::vector<FlowData> data;
  std::vector<int> fracture_index;             // per grid: index into the source network, -1 otherwise
  std::vector<std::vector<int>> parent_grids;  // per grid: the higher-dim grids it was born from
  std::vector<InterfaceEdge> edges;

  int add_grid(Grid g, int frac_idx = -1, std::vector<int> parents = {}) {
    FlowData d;
    d.resize_default(g);
    grids.push_back(std::move(g));
    data.push_back(std::move(d));
    fracture_index.push_back(frac_idx);
    parent_grids.push_back(std::move(parents));
    return static_cast<int>(grids.size()) - 1;
  }

  int top_grid() const {
    for (std::size_t i = 0; i < grids.size(); ++i)
      if (grids[i].dim == ambient_dim) return static_cast<int>(i);
    throw FormatError("bucket has no grid of the ambient dimension");
  }

  /// Grids of dimension d in insertion order; empty when none (including
  /// out-of-range queries).
  std::vector<int> nodes_of_dim(int d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < grids.size(); ++i)
      if (grids[i].dim == d) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Edge indices between dimensions d and d_minus = d-1, insertion order.
  std::vector<int> edges_between(int d, int d_minus) const {
    if (d_minus != d - 1)
      throw NonConsecutiveDims("edges requested between dimensions " + std::to_string(d) +
                               " and " + std::to_string(d_minus));
    std::vector<int> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (grids[edges[e].high].dim == d && grids[edges[e].low].dim == d - 1)
        out.push_back(static_cast<int>(e));
    return out;
  }

  int total_cells() const {
    int n = 0;
    for (const Grid& g : grids) n += g.num_cells;
    return n;
  }
};

/// Global dof layout: one block per grid, ordered by descending dimension
/// then insertion order. TPFA: one dof per cell. VEM: per grid of dim>0 the
/// face dofs come first, then the cell dofs; 0D grids carry one pressure dof.
inline DofMap assign_dofs(const GridBucket& bucket, Scheme scheme) {
  DofMap map;
  map.scheme = scheme;
  int offset = 0;
  for (int d = bucket.ambient_dim; d >= 0; --d)
    for (int node : bucket.nodes_of_dim(d)) {
      const Grid& g = bucket.grids[node];
      const int size = scheme == Scheme::Tpfa || g.dim == 0 ? g.num_cells : g.num_faces + g.num_cells;
      map.blocks.push_back({node, d, offset, size});
      offset += size;
    }
  map.total = offset;
  return map;
}

/// Structural invariants: exactly one top-dimensional grid, bipartite
/// consecutive-dimension edges, well-formed interface maps, and (when
/// geometry is present) coincident centroids across every interface.
inline void validate_bucket(const GridBucket& bucket, double tol = 1e-12) {
  if (bucket.ambient_dim != 2 && bucket.ambient_dim != 3)
    throw FormatError("ambient dimension must be 2 or 3");
  if (bucket.nodes_of_dim(bucket.ambient_dim).size() != 1)
    throw NonConformingMesh("bucket must contain exactly one grid of the ambient dimension");
  for (const Grid& g : bucket.grids)
    if (g.dim < 0 || g.dim > bucket.ambient_dim)
      throw NonConformingMesh("grid dimension outside [0, ambient]");
  for (const InterfaceEdge& e : bucket.edges) {
    const Grid& high = bucket.grids[e.high];
    const Grid& low = bucket.grids[e.low];
    if (high.dim != low.dim + 1)
      throw NonConformingMesh("interface edge between non-consecutive dimensions");
    std::vector<signed char> seen_plus(low.num_cells, 0), seen_minus(low.num_cells, 0);
    for (const InterfaceEdge::Entry& en : e.entries) {
      if (en.face < 0 || en.face >= high.num_faces || en.cell < 0 || en.cell >= low.num_cells)
        throw NonConformingMesh("interface map entry out of range");
      auto& seen = en.side > 0 ? seen_plus : seen_minus;
      if (seen[en.cell]++)
        throw NonConformingMesh("low cell mapped twice on the same side");
      if (high.geometry_ready && low.geometry_ready) {
        const double gap = norm(high.face_centroid[en.face] - low.cell_centroid[en.cell]);
        const double scale = std::max(1.0, norm(bucket.box_max - bucket.box_min));
        if (gap > tol * scale)
          throw NonConformingMesh("interface face/cell centroids differ by " + std::to_string(gap));
      }
    }
  }
}

}  // namespace mdflow
