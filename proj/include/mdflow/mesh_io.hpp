#pragma once

#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/geometry.hpp"
#include "mdflow/grid.hpp"

// Mixed-dimensional mesh file: a JSON document with explicit arrays.
//
//   {
//     "format": "mdflow-mesh", "version": 1, "ambient_dim": 3,
//     "box_min": [x,y,z], "box_max": [x,y,z],          (optional)
//     "grids": [ { "dim": d,
//                  "nodes": [[x,y,z], ...],
//                  "faces": [[node, ...], ...],         (3D: ordered polygon loops)
//                  "cells": [[[face, sign], ...], ...] }, ... ],
//     "edges": [ { "high": g, "low": g,
//                  "map": [[face, cell, side], ...] }, ... ]
//   }
//
// Faces referenced by an edge map are fracture-side faces; their side tag is
// taken from the map entry. Geometry is recomputed and all structural and
// conformity invariants are verified on load.

namespace mdflow {

inline void export_mesh(const GridBucket& bucket, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = "mdflow-mesh";
  doc["version"] = 1;
  doc["ambient_dim"] = bucket.ambient_dim;
  doc["box_min"] = {bucket.box_min[0], bucket.box_min[1], bucket.box_min[2]};
  doc["box_max"] = {bucket.box_max[0], bucket.box_max[1], bucket.box_max[2]};
  doc["grids"] = nlohmann::json::array();
  for (const Grid& g : bucket.grids) {
    nlohmann::json jg;
    jg["dim"] = g.dim;
    auto& nodes = jg["nodes"] = nlohmann::json::array();
    for (const Vec3& p : g.node_coords) nodes.push_back({p[0], p[1], p[2]});
    auto& faces = jg["faces"] = nlohmann::json::array();
    for (int f = 0; f < g.num_faces; ++f) faces.push_back(g.face_nodes(f));
    auto& cells = jg["cells"] = nlohmann::json::array();
    for (int c = 0; c < g.num_cells; ++c) {
      nlohmann::json jc = nlohmann::json::array();
      for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k)
        jc.push_back({g.cell_face_idx[k], static_cast<int>(g.cell_face_sign[k])});
      cells.push_back(jc);
    }
    doc["grids"].push_back(jg);
  }
  doc["edges"] = nlohmann::json::array();
  for (const InterfaceEdge& e : bucket.edges) {
    nlohmann::json je;
    je["high"] = e.high;
    je["low"] = e.low;
    auto& map = je["map"] = nlohmann::json::array();
    for (const auto& en : e.entries) map.push_back({en.face, en.cell, static_cast<int>(en.side)});
    doc["edges"].push_back(je);
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out << doc.dump(1) << "\n";
}

inline GridBucket import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open mesh file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("mesh file '" + path + "': " + e.what());
  }

  GridBucket bucket;
  try {
    if (doc.value("format", "") != "mdflow-mesh")
      throw FormatError("not an mdflow-mesh file (missing format marker)");
    if (doc.value("version", 0) != 1) throw FormatError("unsupported mesh format version");
    bucket.ambient_dim = doc.at("ambient_dim").get<int>();

    for (const auto& jg : doc.at("grids")) {
      Grid g;
      g.dim = jg.at("dim").get<int>();
      g.ambient_dim = bucket.ambient_dim;
      for (const auto& jn : jg.at("nodes")) {
        if (jn.size() != 3) throw FormatError("node coordinates must have 3 components");
        g.add_node({jn[0].get<double>(), jn[1].get<double>(), jn[2].get<double>()});
      }
      for (const auto& jf : jg.at("faces")) {
        std::vector<int> nodes;
        for (const auto& jn : jf) {
          const int n = jn.get<int>();
          if (n < 0 || n >= g.num_nodes) throw FormatError("face references missing node");
          nodes.push_back(n);
        }
        g.add_face(nodes);
      }
      for (const auto& jc : jg.at("cells")) {
        std::vector<int> faces;
        std::vector<signed char> signs;
        for (const auto& jf : jc) {
          if (jf.size() != 2) throw FormatError("cell entries must be [face, sign]");
          const int f = jf[0].get<int>();
          const int s = jf[1].get<int>();
          if (f < 0 || f >= g.num_faces) throw FormatError("cell references missing face");
          if (s != 1 && s != -1) throw FormatError("cell-face sign must be +1 or -1");
          faces.push_back(f);
          signs.push_back(static_cast<signed char>(s));
        }
        g.add_cell(faces, signs);
      }
      bucket.add_grid(std::move(g));
    }

    for (const auto& je : doc.at("edges")) {
      InterfaceEdge e;
      e.high = je.at("high").get<int>();
      e.low = je.at("low").get<int>();
      if (e.high < 0 || e.low < 0 || e.high >= static_cast<int>(bucket.grids.size()) ||
          e.low >= static_cast<int>(bucket.grids.size()))
        throw FormatError("edge references missing grid");
      for (const auto& jm : je.at("map")) {
        if (jm.size() != 3) throw FormatError("edge map entries must be [face, cell, side]");
        InterfaceEdge::Entry en;
        en.face = jm[0].get<int>();
        en.cell = jm[1].get<int>();
        en.side = static_cast<signed char>(jm[2].get<int>());
        if (en.side != 1 && en.side != -1) throw FormatError("edge map side must be +1 or -1");
        e.entries.push_back(en);
      }
      bucket.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("mesh file '" + path + "': " + e.what());
  }

  // fracture-side tags follow from the interface maps
  for (std::size_t n = 0; n < bucket.grids.size(); ++n)
    bucket.grids[n].face_frac_side.assign(bucket.grids[n].num_faces, 0);
  for (const InterfaceEdge& e : bucket.edges)
    for (const auto& en : e.entries) {
      if (en.face < 0 || en.face >= bucket.grids[e.high].num_faces)
        throw FormatError("edge map references missing face");
      bucket.grids[e.high].face_frac_side[en.face] = en.side;
    }

  for (Grid& g : bucket.grids) compute_geometry(g);

  // domain box: stored, or the top grid's bounding box
  if (doc.contains("box_min") && doc.contains("box_max")) {
    for (int a = 0; a < 3; ++a) {
      bucket.box_min[a] = doc["box_min"][a].get<double>();
      bucket.box_max[a] = doc["box_max"][a].get<double>();
    }
  } else {
    const Grid& top = bucket.grids[bucket.top_grid()];
    bucket.box_min = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                      std::numeric_limits<double>::max()};
    bucket.box_max = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
                      std::numeric_limits<double>::lowest()};
    for (const Vec3& p : top.node_coords)
      for (int a = 0; a < 3; ++a) {
        bucket.box_min[a] = std::min(bucket.box_min[a], p[a]);
        bucket.box_max[a] = std::max(bucket.box_max[a], p[a]);
      }
    if (bucket.ambient_dim == 2) bucket.box_min[2] = bucket.box_max[2] = 0.0;
  }
  const double tol = 1e-9 * std::max({bucket.box_max[0] - bucket.box_min[0],
                                      bucket.box_max[1] - bucket.box_min[1],
                                      bucket.box_max[2] - bucket.box_min[2], 1e-30});
  for (Grid& g : bucket.grids) detail::tag_boundary_faces(g, bucket.box_min, bucket.box_max, tol);

  validate_bucket(bucket);
  for (const Grid& g : bucket.grids)
    for (int c = 0; c < g.num_cells; ++c)
      if (cell_identity_gap(g, c) > 1e-12)
        throw NonConformingMesh("cell " + std::to_string(c) +
                                " violates the first-order geometric identity (non-planar faces?)");
  return bucket;
}

}  // namespace mdflow
