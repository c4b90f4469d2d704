#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mdflow/core.hpp"

namespace mdflow {

/// One mono-dimensional mesh of cells, faces and nodes embedded in ambient
/// space. Faces of 1D grids are points ("area" 1), faces of 2D grids are
/// edges, 0D grids are a single cell with no faces. The oriented incidence
/// sign sigma(cell, face) is +1 when the stored face normal points out of
/// the cell.
struct Grid {
  int dim = 0;
  int ambient_dim = 3;
  int num_cells = 0;
  int num_faces = 0;
  int num_nodes = 0;

  std::vector<Vec3> node_coords;

  std::vector<int> cell_face_ptr{0};
  std::vector<int> cell_face_idx;
  std::vector<signed char> cell_face_sign;

  std::vector<int> face_node_ptr{0};
  std::vector<int> face_node_idx;

  // [cell with sigma=+1, cell with sigma=-1]; -1 where absent
  std::vector<std::array<int, 2>> face_cells;

  std::vector<double> face_area;
  std::vector<Vec3> face_normal;
  std::vector<Vec3> face_centroid;
  std::vector<double> cell_volume;
  std::vector<Vec3> cell_centroid;
  bool geometry_ready = false;

  // 0 = ordinary face; +1/-1 = side of an internal (fracture) boundary
  std::vector<signed char> face_frac_side;
  // -1 = not on the domain box; else 2*axis + (1 if max side)
  std::vector<int> face_boundary_side;

  int add_node(const Vec3& p) {
    node_coords.push_back(p);
    return num_nodes++;
  }

  int add_face(const std::vector<int>& nodes) {
    face_node_idx.insert(face_node_idx.end(), nodes.begin(), nodes.end());
    face_node_ptr.push_back(static_cast<int>(face_node_idx.size()));
    return num_faces++;
  }

  int add_cell(const std::vector<int>& faces, const std::vector<signed char>& signs) {
    cell_face_idx.insert(cell_face_idx.end(), faces.begin(), faces.end());
    cell_face_sign.insert(cell_face_sign.end(), signs.begin(), signs.end());
    cell_face_ptr.push_back(static_cast<int>(cell_face_idx.size()));
    return num_cells++;
  }

  int cell_face_count(int c) const { return cell_face_ptr[c + 1] - cell_face_ptr[c]; }

  std::vector<int> face_nodes(int f) const {
    return {face_node_idx.begin() + face_node_ptr[f], face_node_idx.begin() + face_node_ptr[f + 1]};
  }
};

namespace detail {

inline void build_face_cells(Grid& g) {
  g.face_cells.assign(g.num_faces, {-1, -1});
  for (int c = 0; c < g.num_cells; ++c)
    for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
      const int f = g.cell_face_idx[k];
      const int slot = g.cell_face_sign[k] > 0 ? 0 : 1;
      if (g.face_cells[f][slot] != -1)
        throw FormatError("face " + std::to_string(f) +
                          " has two incident cells with equal orientation sign");
      g.face_cells[f][slot] = c;
    }
  for (int f = 0; f < g.num_faces; ++f)
    if (g.face_cells[f][0] == -1 && g.face_cells[f][1] == -1)
      throw FormatError("face " + std::to_string(f) + " has no incident cell");
}

/// Walk the unordered edge set of a 2D cell into an ordered node loop.
inline std::vector<int> cell_node_loop(const Grid& g, int c) {
  const int nf = g.cell_face_count(c);
  if (nf < 3) throw DegenerateCell("2D cell " + std::to_string(c) + " with fewer than 3 edges");
  std::vector<std::array<int, 2>> edges;
  edges.reserve(nf);
  for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
    const int f = g.cell_face_idx[k];
    if (g.face_node_ptr[f + 1] - g.face_node_ptr[f] != 2)
      throw FormatError("2D grid face without exactly 2 nodes");
    edges.push_back({g.face_node_idx[g.face_node_ptr[f]], g.face_node_idx[g.face_node_ptr[f] + 1]});
  }
  std::vector<int> loop;
  loop.reserve(nf);
  std::vector<bool> used(edges.size(), false);
  loop.push_back(edges[0][0]);
  loop.push_back(edges[0][1]);
  used[0] = true;
  for (int step = 2; step < nf; ++step) {
    const int tail = loop.back();
    bool found = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (used[e]) continue;
      if (edges[e][0] == tail || edges[e][1] == tail) {
        loop.push_back(edges[e][0] == tail ? edges[e][1] : edges[e][0]);
        used[e] = true;
        found = true;
        break;
      }
    }
    if (!found) throw FormatError("2D cell " + std::to_string(c) + " edges do not close a loop");
  }
  if (loop.front() == loop.back()) loop.pop_back();
  if (static_cast<int>(loop.size()) != nf)
    throw FormatError("2D cell " + std::to_string(c) + " edges do not form a single loop");
  return loop;
}

struct PolyGeom {
  double area = 0.0;
  Vec3 centroid{0, 0, 0};
  Vec3 normal{0, 0, 0};
};

/// Area, centroid and unit normal of a planar polygon given as an ordered
/// vertex loop (fan decomposition about the first vertex).
inline PolyGeom polygon_geometry(const std::vector<Vec3>& pts) {
  PolyGeom out;
  Vec3 avec{0, 0, 0};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    avec += 0.5 * cross(pts[i] - pts[0], pts[i + 1] - pts[0]);
  out.area = norm(avec);
  if (out.area <= 0.0) return out;
  out.normal = (1.0 / out.area) * avec;
  Vec3 csum{0, 0, 0};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double ai = dot(0.5 * cross(pts[i] - pts[0], pts[i + 1] - pts[0]), out.normal);
    csum += ai * (1.0 / 3.0) * (pts[0] + pts[i] + pts[i + 1]);
  }
  out.centroid = (1.0 / out.area) * csum;
  return out;
}

}  // namespace detail

/// Fill face areas/normals/centroids and cell volumes/centroids from the
/// stored topology and node coordinates. Stored signs are respected: after
/// the call sigma(E,f) * n_f points out of E for every incidence.
inline void compute_geometry(Grid& g) {
  detail::build_face_cells(g);
  if (g.face_frac_side.empty()) g.face_frac_side.assign(g.num_faces, 0);
  if (g.face_boundary_side.empty()) g.face_boundary_side.assign(g.num_faces, -1);
  g.face_area.assign(g.num_faces, 0.0);
  g.face_normal.assign(g.num_faces, Vec3{0, 0, 0});
  g.face_centroid.assign(g.num_faces, Vec3{0, 0, 0});
  g.cell_volume.assign(g.num_cells, 0.0);
  g.cell_centroid.assign(g.num_cells, Vec3{0, 0, 0});

  // anchor cell of a face and its incidence sign, preferring the +1 side
  auto anchor = [&](int f) -> std::pair<int, double> {
    if (g.face_cells[f][0] >= 0) return {g.face_cells[f][0], 1.0};
    return {g.face_cells[f][1], -1.0};
  };

  switch (g.dim) {
    case 0: {
      if (g.num_cells != 1 || g.num_faces != 0)
        throw FormatError("0D grid must have exactly one cell and no faces");
      g.cell_volume[0] = 1.0;
      g.cell_centroid[0] = g.num_nodes > 0 ? g.node_coords[0] : Vec3{0, 0, 0};
      break;
    }
    case 1: {
      for (int c = 0; c < g.num_cells; ++c) {
        if (g.cell_face_count(c) != 2) throw FormatError("1D cell without exactly 2 faces");
        const int fa = g.cell_face_idx[g.cell_face_ptr[c]];
        const int fb = g.cell_face_idx[g.cell_face_ptr[c] + 1];
        const Vec3 pa = g.node_coords[g.face_node_idx[g.face_node_ptr[fa]]];
        const Vec3 pb = g.node_coords[g.face_node_idx[g.face_node_ptr[fb]]];
        g.cell_volume[c] = norm(pb - pa);
        if (g.cell_volume[c] <= 0.0) throw DegenerateCell("1D cell " + std::to_string(c));
        g.cell_centroid[c] = 0.5 * (pa + pb);
      }
      for (int f = 0; f < g.num_faces; ++f) {
        g.face_area[f] = 1.0;
        g.face_centroid[f] = g.node_coords[g.face_node_idx[g.face_node_ptr[f]]];
        const auto [c, s] = anchor(f);
        g.face_normal[f] = s * normalized(g.face_centroid[f] - g.cell_centroid[c]);
      }
      break;
    }
    case 2: {
      std::vector<Vec3> plane_normal(g.num_cells);
      for (int c = 0; c < g.num_cells; ++c) {
        std::vector<int> loop = detail::cell_node_loop(g, c);
        std::vector<Vec3> pts;
        pts.reserve(loop.size());
        for (int n : loop) pts.push_back(g.node_coords[n]);
        detail::PolyGeom pg = detail::polygon_geometry(pts);
        if (pg.area <= 0.0) throw DegenerateCell("2D cell " + std::to_string(c));
        g.cell_volume[c] = pg.area;
        g.cell_centroid[c] = pg.centroid;
        plane_normal[c] = pg.normal;
      }
      for (int f = 0; f < g.num_faces; ++f) {
        const Vec3 pa = g.node_coords[g.face_node_idx[g.face_node_ptr[f]]];
        const Vec3 pb = g.node_coords[g.face_node_idx[g.face_node_ptr[f] + 1]];
        g.face_area[f] = norm(pb - pa);
        if (g.face_area[f] <= 0.0) throw DegenerateCell("zero-length 2D face " + std::to_string(f));
        g.face_centroid[f] = 0.5 * (pa + pb);
        const auto [c, s] = anchor(f);
        Vec3 n = normalized(cross((1.0 / g.face_area[f]) * (pb - pa), plane_normal[c]));
        if (s * dot(n, g.face_centroid[f] - g.cell_centroid[c]) < 0.0) n = -1.0 * n;
        g.face_normal[f] = n;
      }
      break;
    }
    case 3: {
      for (int f = 0; f < g.num_faces; ++f) {
        std::vector<Vec3> pts;
        for (int k = g.face_node_ptr[f]; k < g.face_node_ptr[f + 1]; ++k)
          pts.push_back(g.node_coords[g.face_node_idx[k]]);
        detail::PolyGeom pg = detail::polygon_geometry(pts);
        if (pg.area <= 0.0) throw DegenerateCell("degenerate 3D face " + std::to_string(f));
        g.face_area[f] = pg.area;
        g.face_centroid[f] = pg.centroid;
        g.face_normal[f] = pg.normal;
      }
      // reference points first: normals need an inside point per cell
      std::vector<Vec3> ref(g.num_cells, Vec3{0, 0, 0});
      for (int c = 0; c < g.num_cells; ++c) {
        for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k)
          ref[c] += g.face_centroid[g.cell_face_idx[k]];
        ref[c] = (1.0 / g.cell_face_count(c)) * ref[c];
      }
      for (int f = 0; f < g.num_faces; ++f) {
        const auto [c, s] = anchor(f);
        if (s * dot(g.face_normal[f], g.face_centroid[f] - ref[c]) < 0.0)
          g.face_normal[f] = -1.0 * g.face_normal[f];
      }
      for (int c = 0; c < g.num_cells; ++c) {
        double vol = 0.0;
        Vec3 cen{0, 0, 0};
        for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
          const int f = g.cell_face_idx[k];
          const double s = g.cell_face_sign[k];
          const double flux = s * g.face_area[f] * dot(g.face_normal[f], g.face_centroid[f] - ref[c]);
          vol += flux / 3.0;
          cen += flux * (g.face_centroid[f] - ref[c]);
        }
        if (vol <= 0.0) throw DegenerateCell("3D cell " + std::to_string(c));
        g.cell_volume[c] = vol;
        g.cell_centroid[c] = ref[c] + (1.0 / (4.0 * vol)) * cen;
      }
      break;
    }
    default:
      throw FormatError("unsupported grid dimension " + std::to_string(g.dim));
  }
  g.geometry_ready = true;
}

/// Orthonormal basis of the span of a cell's face normals; its size equals
/// the grid dimension for any non-degenerate cell. Pivoted Gram-Schmidt,
/// largest residual first; triangulated faces contribute many nearly
/// parallel normals.
inline std::vector<Vec3> cell_tangent_basis(const Grid& g, int c) {
  std::vector<Vec3> basis;
  while (static_cast<int>(basis.size()) < g.dim) {
    Vec3 best{0, 0, 0};
    double best_norm = 0.0;
    for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
      Vec3 v = g.face_normal[g.cell_face_idx[k]];
      for (const Vec3& b : basis) v = v - dot(v, b) * b;
      const double n = norm(v);
      if (n > best_norm) {
        best_norm = n;
        best = v;
      }
    }
    if (best_norm <= 1e-8) break;
    basis.push_back(normalized(best));
  }
  if (static_cast<int>(basis.size()) != g.dim)
    throw DegenerateCell("face normals of cell " + std::to_string(c) + " span dimension " +
                         std::to_string(basis.size()) + " of a " + std::to_string(g.dim) + "D grid");
  return basis;
}

/// Max relative deviation of sum_f sigma |f| (x_f - x_E) n_f^T from
/// |E| * (projector onto the cell tangent space). Zero for exact polytope
/// geometry; the foundation of first-order consistency.
inline double cell_identity_gap(const Grid& g, int c) {
  double t[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
    const int f = g.cell_face_idx[k];
    const double s = g.cell_face_sign[k];
    const Vec3 r = g.face_centroid[f] - g.cell_centroid[c];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i][j] += s * g.face_area[f] * r[i] * g.face_normal[f][j];
  }
  double p[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  if (g.dim > 0)
    for (const Vec3& b : cell_tangent_basis(g, c))
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i][j] += b[i] * b[j];
  double gap = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      gap = std::max(gap, std::abs(t[i][j] - g.cell_volume[c] * p[i][j]));
  return gap / g.cell_volume[c];
}

}  // namespace mdflow
