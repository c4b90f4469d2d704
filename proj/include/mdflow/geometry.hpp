#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/grid.hpp"

namespace mdflow {

/// Axis-aligned planar rectangle (3D) or segment (2D) given by the two
/// corners of its bounding box; exactly one axis is degenerate (the normal
/// axis).
struct Fracture {
  int id = 0;
  Vec3 lo{0, 0, 0};
  Vec3 hi{0, 0, 0};
};

struct FractureNetwork {
  int ambient_dim = 3;
  Vec3 box_min{0, 0, 0};
  Vec3 box_max{1, 1, 1};
  std::vector<Fracture> fractures;
};

/// Pairwise fracture intersections. In 3D, `lines` carries the co-dim-1
/// intersections tagged with the two parent fracture ids and `points` the
/// line-line crossings tagged with parent indices into `lines`. In 2D,
/// fractures intersect directly in points tagged with parent fracture ids.
struct IntersectionSet {
  struct Line {
    Vec3 lo, hi;
    std::array<int, 2> parents;  // fracture ids
  };
  struct Point {
    Vec3 p;
    std::vector<int> parents;  // 3D: indices into lines; 2D: fracture ids
  };
  std::vector<Line> lines;
  std::vector<Point> points;
};

namespace detail {

inline double network_tol(const FractureNetwork& net) {
  return 1e-9 * std::max({net.box_max[0] - net.box_min[0], net.box_max[1] - net.box_min[1],
                          net.ambient_dim == 3 ? net.box_max[2] - net.box_min[2] : 0.0});
}

inline int fracture_normal_axis(const FractureNetwork& net, const Fracture& f, double tol) {
  int normal = -1;
  for (int a = 0; a < net.ambient_dim; ++a) {
    const double ext = f.hi[a] - f.lo[a];
    if (ext < -tol)
      throw ValidationError("fracture " + std::to_string(f.id) + " has inverted extent on axis " +
                            std::to_string(a));
    if (ext <= tol) {
      if (normal != -1)
        throw ValidationError("fracture " + std::to_string(f.id) + " has zero measure");
      normal = a;
    }
  }
  if (normal == -1)
    throw NonAxisAligned("fracture " + std::to_string(f.id) +
                         " is not a plane/segment normal to a coordinate axis");
  return normal;
}

inline void validate_network(const FractureNetwork& net) {
  if (net.ambient_dim != 2 && net.ambient_dim != 3)
    throw ValidationError("ambient dimension must be 2 or 3");
  const double tol = network_tol(net);
  for (int a = 0; a < net.ambient_dim; ++a)
    if (net.box_max[a] - net.box_min[a] <= tol) throw ValidationError("degenerate domain box");
  std::vector<int> ids;
  for (const Fracture& f : net.fractures) {
    fracture_normal_axis(net, f, tol);
    for (int a = 0; a < net.ambient_dim; ++a)
      if (f.lo[a] < net.box_min[a] - tol || f.hi[a] > net.box_max[a] + tol)
        throw ValidationError("fracture " + std::to_string(f.id) + " extends outside the domain box");
    ids.push_back(f.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ValidationError("fracture identifiers are not unique");
}

}  // namespace detail

/// All pairwise co-dim-1 fracture intersections plus, in 3D, the points
/// where intersection lines cross. Coplanar fractures overlapping with
/// positive measure are rejected; zero-measure contacts are ignored.
inline IntersectionSet intersect_fractures(const FractureNetwork& net) {
  detail::validate_network(net);
  const double tol = detail::network_tol(net);
  const int nf = static_cast<int>(net.fractures.size());
  IntersectionSet out;

  auto clip = [&](const Vec3& alo, const Vec3& ahi, const Vec3& blo, const Vec3& bhi, Vec3& lo,
                  Vec3& hi) {
    for (int a = 0; a < net.ambient_dim; ++a) {
      lo[a] = std::max(alo[a], blo[a]);
      hi[a] = std::min(ahi[a], bhi[a]);
      if (lo[a] > hi[a] + tol) return false;
    }
    return true;
  };

  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j) {
      const Fracture& fi = net.fractures[i];
      const Fracture& fj = net.fractures[j];
      const int ni = detail::fracture_normal_axis(net, fi, tol);
      const int nj = detail::fracture_normal_axis(net, fj, tol);
      Vec3 lo{0, 0, 0}, hi{0, 0, 0};
      if (!clip(fi.lo, fi.hi, fj.lo, fj.hi, lo, hi)) continue;
      if (ni == nj) {
        // coplanar: any positive-measure overlap is an error, contacts are fine
        int positive = 0;
        for (int a = 0; a < net.ambient_dim; ++a)
          if (a != ni && hi[a] - lo[a] > tol) ++positive;
        if (positive == net.ambient_dim - 1)
          throw OverlappingFractures("fractures " + std::to_string(fi.id) + " and " +
                                     std::to_string(fj.id) + " overlap in a common plane");
        continue;
      }
      if (net.ambient_dim == 2) {
        out.points.push_back({lo, {fi.id, fj.id}});
      } else {
        const int run = 3 - ni - nj;
        if (hi[run] - lo[run] > tol)
          out.lines.push_back({lo, hi, {fi.id, fj.id}});
        // zero-length contact between non-coplanar fractures: ignored
      }
    }

  if (net.ambient_dim == 3) {
    const int nl = static_cast<int>(out.lines.size());
    for (int i = 0; i < nl; ++i)
      for (int j = i + 1; j < nl; ++j) {
        const auto& li = out.lines[i];
        const auto& lj = out.lines[j];
        Vec3 lo{0, 0, 0}, hi{0, 0, 0};
        if (!clip(li.lo, li.hi, lj.lo, lj.hi, lo, hi)) continue;
        bool is_point = true;
        for (int a = 0; a < 3; ++a)
          if (hi[a] - lo[a] > tol) is_point = false;
        if (is_point) out.points.push_back({lo, {i, j}});
      }
  }

  // merge coincident points
  IntersectionSet merged;
  merged.lines = std::move(out.lines);
  for (const auto& p : out.points) {
    bool found = false;
    for (auto& q : merged.points)
      if (norm(p.p - q.p) <= tol) {
        q.parents.insert(q.parents.end(), p.parents.begin(), p.parents.end());
        found = true;
        break;
      }
    if (!found) merged.points.push_back(p);
  }
  for (auto& q : merged.points) {
    std::sort(q.parents.begin(), q.parents.end());
    q.parents.erase(std::unique(q.parents.begin(), q.parents.end()), q.parents.end());
  }
  return merged;
}

namespace detail {

/// Integer lattice box; a degenerate axis (lo==hi) is a fixed plane index.
struct IBox {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
};

struct Lattice {
  int N = 3;
  Vec3 origin{0, 0, 0};
  Vec3 h{1, 1, 1};
  std::array<int, 3> cells{1, 1, 1};

  Vec3 point(const std::array<int, 3>& idx) const {
    Vec3 p = origin;
    for (int a = 0; a < N; ++a) p[a] += idx[a] * h[a];
    return p;
  }

  int snap(double x, int axis, const std::string& what) const {
    const double rel = (x - origin[axis]) / h[axis];
    const int idx = static_cast<int>(std::lround(rel));
    if (std::abs(rel - idx) > 1e-9 * cells[axis] || idx < 0 || idx > cells[axis])
      throw NonConformingFracture(what + ": coordinate " + std::to_string(x) +
                                  " does not lie on the lattice of axis " + std::to_string(axis));
    return idx;
  }
};

/// A Cartesian grid over a lattice sub-box together with the index maps
/// needed to locate its cells/faces from global lattice indices.
struct SubGrid {
  Grid grid;
  const Lattice* lat = nullptr;
  IBox box;
  std::vector<int> axes;  // running lattice axes, ascending

  std::array<int, 3> len() const {
    std::array<int, 3> l{0, 0, 0};
    for (int a : axes) l[a] = box.hi[a] - box.lo[a];
    return l;
  }

  int cell_id(const std::array<int, 3>& ci) const {
    const auto l = len();
    int id = 0, stride = 1;
    for (int a : axes) {
      id += (ci[a] - box.lo[a]) * stride;
      stride *= l[a];
    }
    return id;
  }

  int node_id(const std::array<int, 3>& ni) const {
    const auto l = len();
    int id = 0, stride = 1;
    for (int a : axes) {
      id += (ni[a] - box.lo[a]) * stride;
      stride *= l[a] + 1;
    }
    return id;
  }

  /// Face with normal axis q at global plane index `plane`; `ci` supplies
  /// the transverse cell indices. Layout matches construction order: one
  /// block per running axis, planes outermost, transverse indices fastest.
  int face_id(int q, int plane, const std::array<int, 3>& ci) const {
    const auto l = len();
    int offset = 0;
    for (int a : axes) {
      if (a == q) break;
      int block = l[a] + 1;
      for (int b : axes)
        if (b != a) block *= l[b];
      offset += block;
    }
    int id = 0, stride = 1;
    for (int a : axes) {
      if (a == q) continue;
      id += (ci[a] - box.lo[a]) * stride;
      stride *= l[a];
    }
    id += (plane - box.lo[q]) * stride;
    return offset + id;
  }
};

/// Multi-index iteration over the cell (or node) ranges of a sub-box.
template <typename F>
void for_each_index(const IBox& box, const std::vector<int>& axes, int extra, F&& fn) {
  std::array<int, 3> idx = box.lo;
  if (axes.empty()) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    std::size_t q = 0;
    while (q < axes.size()) {
      const int a = axes[q];
      if (++idx[a] < box.hi[a] + extra) break;
      idx[a] = box.lo[a];
      ++q;
    }
    if (q == axes.size()) break;
  }
}

inline SubGrid build_sub_cartesian(const Lattice& lat, const IBox& box, std::vector<int> axes) {
  SubGrid sub;
  sub.lat = &lat;
  sub.box = box;
  sub.axes = std::move(axes);
  Grid& g = sub.grid;
  g.dim = static_cast<int>(sub.axes.size());
  g.ambient_dim = lat.N;

  for_each_index(box, sub.axes, 1, [&](const std::array<int, 3>& ni) { g.add_node(lat.point(ni)); });

  if (g.dim == 0) {
    g.add_cell({}, {});
    return sub;
  }

  // faces, one block per running axis
  for (int q : sub.axes) {
    std::vector<int> others;
    for (int a : sub.axes)
      if (a != q) others.push_back(a);
    for (int p = box.lo[q]; p <= box.hi[q]; ++p)
      for_each_index(box, others, 0, [&](std::array<int, 3> ci) {
        ci[q] = p;
        std::vector<int> nodes;
        if (g.dim == 1) {
          nodes = {sub.node_id(ci)};
        } else if (g.dim == 2) {
          const int t = others[0];
          auto b = ci;
          b[t] += 1;
          nodes = {sub.node_id(ci), sub.node_id(b)};
        } else {
          // corner loop in (u,v) steps, ordered so the polygon normal is +q
          static const int loops[3][4][2] = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}},   // q=x, (u,v)=(y,z)
                                             {{0, 0}, {0, 1}, {1, 1}, {1, 0}},   // q=y, (u,v)=(x,z)
                                             {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};  // q=z, (u,v)=(x,y)
          const int u = q == 0 ? 1 : 0;
          const int v = q == 2 ? 1 : 2;
          for (const auto& d : loops[q]) {
            auto ni = ci;
            ni[u] += d[0];
            ni[v] += d[1];
            nodes.push_back(sub.node_id(ni));
          }
        }
        g.add_face(nodes);
      });
  }

  for_each_index(box, sub.axes, 0, [&](const std::array<int, 3>& ci) {
    std::vector<int> faces;
    std::vector<signed char> signs;
    for (int q : sub.axes) {
      faces.push_back(sub.face_id(q, ci[q], ci));
      signs.push_back(-1);
      faces.push_back(sub.face_id(q, ci[q] + 1, ci));
      signs.push_back(+1);
    }
    g.add_cell(faces, signs);
  });
  return sub;
}

inline void replace_cell_face(Grid& g, int cell, int old_face, int new_face, signed char new_sign) {
  for (int k = g.cell_face_ptr[cell]; k < g.cell_face_ptr[cell + 1]; ++k)
    if (g.cell_face_idx[k] == old_face) {
      g.cell_face_idx[k] = new_face;
      g.cell_face_sign[k] = new_sign;
      return;
    }
  throw FormatError("internal: face to split not found in cell");
}

struct SplitRecord {
  int low_cell = -1;
  int minus_face = -1;
  int plus_face = -1;
};

/// Duplicate the faces of `high` lying on the lower-dimensional object
/// covered by `low`, detaching the two sides. The minus face stays with the
/// cell below the object (outward normal +axis), the plus face goes to the
/// cell above (outward normal -axis).
inline std::vector<SplitRecord> split_on_object(SubGrid& high, const SubGrid& low) {
  int split_axis = -1;
  for (int a : high.axes)
    if (std::find(low.axes.begin(), low.axes.end(), a) == low.axes.end()) split_axis = a;
  if (split_axis < 0) throw FormatError("internal: no split axis");
  const int plane = low.box.lo[split_axis];

  std::vector<SplitRecord> records;
  for_each_index(low.box, low.axes, 0, [&](std::array<int, 3> ci) {
    SplitRecord rec;
    rec.low_cell = low.cell_id(ci);
    ci[split_axis] = plane;
    const int f = high.face_id(split_axis, plane, ci);
    const bool has_lower = plane > high.box.lo[split_axis];
    const bool has_upper = plane < high.box.hi[split_axis];
    auto cell_at = [&](int p) {
      auto cc = ci;
      cc[split_axis] = p;
      return high.cell_id(cc);
    };
    if (has_lower && has_upper) {
      const int nf = high.grid.add_face(high.grid.face_nodes(f));
      replace_cell_face(high.grid, cell_at(plane), f, nf, +1);
      rec.minus_face = f;
      rec.plus_face = nf;
    } else if (has_upper) {
      replace_cell_face(high.grid, cell_at(plane), f, f, +1);
      rec.plus_face = f;
    } else {
      rec.minus_face = f;
    }
    records.push_back(rec);
  });
  return records;
}

inline void tag_boundary_faces(Grid& g, const Vec3& box_min, const Vec3& box_max, double tol) {
  g.face_boundary_side.assign(g.num_faces, -1);
  for (int f = 0; f < g.num_faces; ++f) {
    const bool boundary = g.face_cells[f][0] == -1 || g.face_cells[f][1] == -1;
    if (!boundary || g.face_frac_side[f] != 0) continue;
    for (int a = 0; a < g.ambient_dim; ++a) {
      if (std::abs(g.face_centroid[f][a] - box_min[a]) <= tol) g.face_boundary_side[f] = 2 * a;
      if (std::abs(g.face_centroid[f][a] - box_max[a]) <= tol) g.face_boundary_side[f] = 2 * a + 1;
    }
  }
}

}  // namespace detail

/// Conforming Cartesian mixed-dimensional mesh of an axis-aligned fracture
/// network. Every fracture (and fracture intersection) must lie on lattice
/// planes/lines. Faces on fractures are duplicated into +/- side pairs so
/// fractures act as internal boundaries; interface edges map each low cell
/// onto the coinciding split faces.
inline GridBucket mesh_cartesian(const FractureNetwork& net, const std::array<int, 3>& cells_per_axis) {
  using namespace detail;
  validate_network(net);
  const int N = net.ambient_dim;
  for (int a = 0; a < N; ++a)
    if (cells_per_axis[a] < 1) throw ValidationError("cells_per_axis must be >= 1");

  Lattice lat;
  lat.N = N;
  lat.origin = net.box_min;
  for (int a = 0; a < N; ++a) {
    lat.cells[a] = cells_per_axis[a];
    lat.h[a] = (net.box_max[a] - net.box_min[a]) / cells_per_axis[a];
  }

  // snap fractures and their intersections onto the lattice
  auto snap_box = [&](const Vec3& lo, const Vec3& hi, const std::string& what) {
    IBox b;
    for (int a = 0; a < N; ++a) {
      b.lo[a] = lat.snap(lo[a], a, what);
      b.hi[a] = lat.snap(hi[a], a, what);
    }
    return b;
  };

  std::vector<IBox> frac_box;
  std::map<int, int> id_to_index;
  for (std::size_t i = 0; i < net.fractures.size(); ++i) {
    frac_box.push_back(snap_box(net.fractures[i].lo, net.fractures[i].hi,
                                "fracture " + std::to_string(net.fractures[i].id)));
    id_to_index[net.fractures[i].id] = static_cast<int>(i);
  }

  const IntersectionSet isect = intersect_fractures(net);
  std::vector<IBox> line_box;
  std::vector<std::array<int, 2>> line_parents;  // fracture indices
  for (const auto& l : isect.lines) {
    line_box.push_back(snap_box(l.lo, l.hi, "intersection line"));
    line_parents.push_back({id_to_index.at(l.parents[0]), id_to_index.at(l.parents[1])});
  }
  std::vector<IBox> point_box;
  std::vector<std::vector<int>> point_parents;  // 3D: line indices, 2D: fracture indices
  for (const auto& p : isect.points) {
    point_box.push_back(snap_box(p.p, p.p, "intersection point"));
    if (N == 3) {
      point_parents.push_back(p.parents);
    } else {
      std::vector<int> idx;
      for (int id : p.parents) idx.push_back(id_to_index.at(id));
      point_parents.push_back(idx);
    }
  }

  auto run_axes = [&](const IBox& b) {
    std::vector<int> axes;
    for (int a = 0; a < N; ++a)
      if (b.hi[a] > b.lo[a]) axes.push_back(a);
    return axes;
  };

  // reject intersections lying on a parent fracture's boundary
  // (T-configurations: a fracture tip touching another fracture's interior)
  auto on_rect_boundary = [&](const IBox& child, const IBox& parent) {
    for (int a = 0; a < N; ++a) {
      if (child.lo[a] != child.hi[a]) continue;    // fixed in child
      if (parent.lo[a] == parent.hi[a]) continue;  // fixed in parent too
      if (child.lo[a] == parent.lo[a] || child.lo[a] == parent.hi[a]) return true;
    }
    return false;
  };
  auto reject_t = [&](const IBox& child, const std::vector<int>& parent_fracs) {
    for (int pf : parent_fracs)
      if (on_rect_boundary(child, frac_box[pf]))
        throw UnsupportedIntersection("intersection lies on the boundary of fracture " +
                                      std::to_string(net.fractures[pf].id) + " (T-intersection)");
  };
  if (N == 3) {
    for (std::size_t l = 0; l < line_box.size(); ++l)
      reject_t(line_box[l], {line_parents[l][0], line_parents[l][1]});
  } else {
    for (std::size_t p = 0; p < point_box.size(); ++p) reject_t(point_box[p], point_parents[p]);
  }

  // reject collinear overlapping/touching intersection lines
  for (std::size_t i = 0; i < line_box.size(); ++i)
    for (std::size_t j = i + 1; j < line_box.size(); ++j) {
      const auto ra = run_axes(line_box[i]);
      const auto rb = run_axes(line_box[j]);
      if (ra != rb) continue;
      bool same_fixed = true;
      for (int a = 0; a < N; ++a)
        if (a != ra[0] && line_box[i].lo[a] != line_box[j].lo[a]) same_fixed = false;
      if (!same_fixed) continue;
      if (line_box[i].hi[ra[0]] >= line_box[j].lo[ra[0]] &&
          line_box[j].hi[ra[0]] >= line_box[i].lo[ra[0]])
        throw UnsupportedIntersection("collinear intersection lines overlap or touch");
    }

  // --- build grids ---
  GridBucket bucket;
  bucket.ambient_dim = N;
  bucket.box_min = net.box_min;
  bucket.box_max = net.box_max;

  IBox domain;
  for (int a = 0; a < N; ++a) domain.hi[a] = lat.cells[a];
  std::vector<int> all_axes;
  for (int a = 0; a < N; ++a) all_axes.push_back(a);
  SubGrid top = build_sub_cartesian(lat, domain, all_axes);

  std::vector<SubGrid> frac_sub;
  for (const IBox& b : frac_box) frac_sub.push_back(build_sub_cartesian(lat, b, run_axes(b)));
  std::vector<SubGrid> line_sub;
  for (const IBox& b : line_box) line_sub.push_back(build_sub_cartesian(lat, b, run_axes(b)));
  std::vector<SubGrid> point_sub;
  for (const IBox& b : point_box) point_sub.push_back(build_sub_cartesian(lat, b, {}));

  // --- face splitting, recording interface maps ---
  struct PendingEdge {
    bool high_is_top;
    int high_obj;  // index into frac_sub (or -1 for top)
    int low_tier;  // 1 fractures, 2 lines, 3 points
    int low_obj;
    std::vector<SplitRecord> records;
  };
  std::vector<PendingEdge> pending;

  for (std::size_t i = 0; i < frac_sub.size(); ++i)
    pending.push_back({true, -1, 1, static_cast<int>(i), split_on_object(top, frac_sub[i])});

  if (N == 3) {
    for (std::size_t l = 0; l < line_sub.size(); ++l)
      for (int pf : line_parents[l])
        pending.push_back(
            {false, pf, 2, static_cast<int>(l), split_on_object(frac_sub[pf], line_sub[l])});
    for (std::size_t p = 0; p < point_sub.size(); ++p)
      for (int pl : point_parents[p])
        pending.push_back(
            {false, pl, 3, static_cast<int>(p), split_on_object(line_sub[pl], point_sub[p])});
  } else {
    for (std::size_t p = 0; p < point_sub.size(); ++p)
      for (int pf : point_parents[p])
        pending.push_back(
            {false, pf, 2, static_cast<int>(p), split_on_object(frac_sub[pf], point_sub[p])});
  }

  // fracture-side tags from the split records
  auto high_grid_of = [&](const PendingEdge& pe) -> Grid& {
    if (pe.high_is_top) return top.grid;
    return pe.low_tier == 3 ? line_sub[pe.high_obj].grid : frac_sub[pe.high_obj].grid;
  };
  for (auto& pe : pending) {
    Grid& hg = high_grid_of(pe);
    if (hg.face_frac_side.size() != static_cast<std::size_t>(hg.num_faces))
      hg.face_frac_side.resize(hg.num_faces, 0);
    for (const SplitRecord& r : pe.records) {
      if (r.minus_face >= 0) hg.face_frac_side[r.minus_face] = -1;
      if (r.plus_face >= 0) hg.face_frac_side[r.plus_face] = +1;
    }
  }

  // --- assemble the bucket (descending dimension, object order) ---
  const int top_idx = bucket.add_grid(std::move(top.grid));
  std::vector<int> frac_grid_idx, line_grid_idx, point_grid_idx;
  for (std::size_t i = 0; i < frac_sub.size(); ++i)
    frac_grid_idx.push_back(
        bucket.add_grid(std::move(frac_sub[i].grid), static_cast<int>(i), {top_idx}));
  for (std::size_t l = 0; l < line_sub.size(); ++l) {
    std::vector<int> par;
    if (N == 3)
      for (int pf : line_parents[l]) par.push_back(frac_grid_idx[pf]);
    line_grid_idx.push_back(bucket.add_grid(std::move(line_sub[l].grid), -1, par));
  }
  for (std::size_t p = 0; p < point_sub.size(); ++p) {
    std::vector<int> par;
    for (int q : point_parents[p])
      par.push_back(N == 3 ? line_grid_idx[q] : frac_grid_idx[q]);
    point_grid_idx.push_back(bucket.add_grid(std::move(point_sub[p].grid), -1, par));
  }

  for (const auto& pe : pending) {
    InterfaceEdge edge;
    edge.high = pe.high_is_top ? top_idx
                : pe.low_tier == 3 ? line_grid_idx[pe.high_obj]
                                   : frac_grid_idx[pe.high_obj];
    edge.low = pe.low_tier == 1 ? frac_grid_idx[pe.low_obj]
               : pe.low_tier == 2 && N == 3 ? line_grid_idx[pe.low_obj]
                                            : point_grid_idx[pe.low_obj];
    for (const SplitRecord& r : pe.records) {
      if (r.plus_face >= 0) edge.entries.push_back({r.plus_face, r.low_cell, +1});
      if (r.minus_face >= 0) edge.entries.push_back({r.minus_face, r.low_cell, -1});
    }
    bucket.edges.push_back(std::move(edge));
  }

  const double tol = detail::network_tol(net);
  for (Grid& g : bucket.grids) {
    if (g.face_frac_side.size() != static_cast<std::size_t>(g.num_faces))
      g.face_frac_side.resize(g.num_faces, 0);
    compute_geometry(g);
    detail::tag_boundary_faces(g, net.box_min, net.box_max, tol);
  }
  validate_bucket(bucket);
  return bucket;
}

}  // namespace mdflow
