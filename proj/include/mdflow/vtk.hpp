#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/grid.hpp"

namespace mdflow {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Legacy ASCII VTK (UNSTRUCTURED_GRID) file holding every grid of one
/// dimension, with CELL_DATA scalar fields (per grid, per cell) and an
/// optional cell vector field. 3D cells are written as polyhedra, 2D cells
/// as polygons, 1D as lines, 0D as vertices.
inline void write_vtk(const GridBucket& bucket, int dim, const std::string& path,
                      const std::map<std::string, std::vector<std::vector<double>>>& cell_fields,
                      const std::map<std::string, std::vector<std::vector<Vec3>>>& cell_vectors = {}) {
  const std::vector<int> nodes = bucket.nodes_of_dim(dim);
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");

  out << "# vtk DataFile Version 2.0\n";
  out << "mdflow dimension " << dim << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";

  int total_points = 0, total_cells = 0;
  std::vector<int> offset;
  for (int n : nodes) {
    offset.push_back(total_points);
    total_points += bucket.grids[n].num_nodes;
    total_cells += bucket.grids[n].num_cells;
  }

  out << "POINTS " << total_points << " double\n";
  for (int n : nodes)
    for (const Vec3& p : bucket.grids[n].node_coords)
      out << detail::fmt(p[0]) << " " << detail::fmt(p[1]) << " " << detail::fmt(p[2]) << "\n";

  std::vector<std::vector<int>> streams;
  std::vector<int> types;
  for (std::size_t gi = 0; gi < nodes.size(); ++gi) {
    const Grid& g = bucket.grids[nodes[gi]];
    const int off = offset[gi];
    for (int c = 0; c < g.num_cells; ++c) {
      std::vector<int> stream;
      switch (g.dim) {
        case 0:
          stream = {off + 0};
          types.push_back(1);  // VTK_VERTEX
          break;
        case 1: {
          const int fa = g.cell_face_idx[g.cell_face_ptr[c]];
          const int fb = g.cell_face_idx[g.cell_face_ptr[c] + 1];
          stream = {off + g.face_node_idx[g.face_node_ptr[fa]],
                    off + g.face_node_idx[g.face_node_ptr[fb]]};
          types.push_back(3);  // VTK_LINE
          break;
        }
        case 2: {
          for (int v : detail::cell_node_loop(g, c)) stream.push_back(off + v);
          types.push_back(7);  // VTK_POLYGON
          break;
        }
        default: {
          // polyhedron face stream: nFaces, then (nPts, pts...) per face
          stream.push_back(g.cell_face_count(c));
          for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
            const int f = g.cell_face_idx[k];
            stream.push_back(g.face_node_ptr[f + 1] - g.face_node_ptr[f]);
            for (int q = g.face_node_ptr[f]; q < g.face_node_ptr[f + 1]; ++q)
              stream.push_back(off + g.face_node_idx[q]);
          }
          types.push_back(42);  // VTK_POLYHEDRON
          break;
        }
      }
      streams.push_back(std::move(stream));
    }
  }

  int stream_size = 0;
  for (const auto& s : streams) stream_size += static_cast<int>(s.size()) + 1;
  out << "CELLS " << total_cells << " " << stream_size << "\n";
  for (const auto& s : streams) {
    out << s.size();
    for (int v : s) out << " " << v;
    out << "\n";
  }
  out << "CELL_TYPES " << total_cells << "\n";
  for (int t : types) out << t << "\n";

  if (cell_fields.empty() && cell_vectors.empty()) return;
  out << "CELL_DATA " << total_cells << "\n";
  for (const auto& [name, per_grid] : cell_fields) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t gi = 0; gi < nodes.size(); ++gi)
      for (double v : per_grid[nodes[gi]]) out << detail::fmt(v) << "\n";
  }
  for (const auto& [name, per_grid] : cell_vectors) {
    out << "VECTORS " << name << " double\n";
    for (std::size_t gi = 0; gi < nodes.size(); ++gi)
      for (const Vec3& v : per_grid[nodes[gi]])
        out << detail::fmt(v[0]) << " " << detail::fmt(v[1]) << " " << detail::fmt(v[2]) << "\n";
  }
}

}  // namespace mdflow
