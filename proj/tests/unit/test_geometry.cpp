#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "mdflow/geometry.hpp"

using namespace mdflow;
using testutil::empty_network;
using testutil::three_plane_network;

TEST_CASE("unit square cell geometry") {
  GridBucket b = mesh_cartesian(empty_network(2, {0, 0, 0}, {1, 1, 0}), {1, 1, 1});
  const Grid& g = b.grids[0];
  REQUIRE(g.num_cells == 1);
  REQUIRE(g.num_faces == 4);
  CHECK(g.cell_volume[0] == Approx(1.0));
  CHECK(norm(g.cell_centroid[0] - Vec3{0.5, 0.5, 0}) < 1e-14);
  for (int f = 0; f < 4; ++f) {
    CHECK(g.face_area[f] == Approx(1.0));
    // centroid at an edge midpoint, outward sigma*n along a coordinate axis
    const Vec3 c = g.face_centroid[f];
    CHECK((c[0] == Approx(0.5) || c[1] == Approx(0.5)));
    const double s = g.face_cells[f][0] >= 0 ? 1.0 : -1.0;
    const Vec3 out = s * g.face_normal[f];
    CHECK(dot(out, c - g.cell_centroid[0]) > 0.0);
    CHECK(std::abs(std::abs(out[0]) + std::abs(out[1]) - 1.0) < 1e-14);
  }
}

TEST_CASE("1D segment cell geometry") {
  Grid g;
  g.dim = 1;
  g.ambient_dim = 2;
  g.add_node({0, 0, 0});
  g.add_node({0.5, 0, 0});
  const int fa = g.add_face({0});
  const int fb = g.add_face({1});
  g.add_cell({fa, fb}, {-1, +1});
  compute_geometry(g);
  CHECK(g.cell_volume[0] == Approx(0.5));
  CHECK(g.face_area[fa] == 1.0);
  CHECK(g.face_area[fb] == 1.0);
  // sigma*n points out of the cell at both ends
  CHECK(dot(-1.0 * g.face_normal[fa], g.face_centroid[fa] - g.cell_centroid[0]) > 0.0);
  CHECK(dot(g.face_normal[fb], g.face_centroid[fb] - g.cell_centroid[0]) > 0.0);
}

TEST_CASE("closedness: signed oriented face areas sum to zero per cell") {
  GridBucket b = mesh_cartesian(empty_network(3, {0, 0, 0}, {2, 1, 1}), {4, 2, 2});
  const Grid& g = b.grids[0];
  for (int c = 0; c < g.num_cells; ++c) {
    Vec3 sum{0, 0, 0};
    for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
      const int f = g.cell_face_idx[k];
      sum += (g.cell_face_sign[k] * g.face_area[f]) * g.face_normal[f];
    }
    CHECK(norm(sum) < 1e-13);
  }
}

TEST_CASE("first-order geometric identity holds on every generated cell") {
  for (const GridBucket& b :
       {mesh_cartesian(three_plane_network(), {2, 2, 2}),
        mesh_cartesian(empty_network(2, {0, 0, 0}, {1, 2, 0}), {3, 4, 1})}) {
    for (const Grid& g : b.grids)
      for (int c = 0; c < g.num_cells; ++c) CHECK(cell_identity_gap(g, c) < 1e-12);
  }
}

TEST_CASE("three orthogonal planes intersect in three axis lines and the origin") {
  IntersectionSet s = intersect_fractures(three_plane_network());
  REQUIRE(s.lines.size() == 3);
  for (const auto& l : s.lines) {
    int positive = 0;
    for (int a = 0; a < 3; ++a)
      if (l.hi[a] - l.lo[a] > 1e-12) ++positive;
    CHECK(positive == 1);  // a coordinate-axis segment
    CHECK(l.parents[0] != l.parents[1]);
  }
  REQUIRE(s.points.size() == 1);
  CHECK(norm(s.points[0].p) < 1e-12);
  CHECK(s.points[0].parents == std::vector<int>{0, 1, 2});  // all three lines
}

TEST_CASE("single fracture yields no intersections") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{7, {0, 0, 0.5}, {1, 1, 0.5}}};
  IntersectionSet s = intersect_fractures(net);
  CHECK(s.lines.empty());
  CHECK(s.points.empty());
}

TEST_CASE("parallel non-coplanar fractures do not intersect") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0, 0, 0.25}, {1, 1, 0.25}}, {1, {0, 0, 0.75}, {1, 1, 0.75}}};
  IntersectionSet s = intersect_fractures(net);
  CHECK(s.lines.empty());
  CHECK(s.points.empty());
}

TEST_CASE("coplanar overlapping fractures are rejected") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0, 0, 0.5}, {0.75, 1, 0.5}}, {1, {0.25, 0, 0.5}, {1, 1, 0.5}}};
  CHECK_THROWS_AS(intersect_fractures(net), OverlappingFractures);
}

TEST_CASE("coplanar edge-touching fractures are allowed") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0, 0, 0.5}, {0.5, 1, 0.5}}, {1, {0.5, 0, 0.5}, {1, 1, 0.5}}};
  IntersectionSet s = intersect_fractures(net);
  CHECK(s.lines.empty());
}

TEST_CASE("a box-shaped 'fracture' is not axis-aligned planar") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0.25, 0.25, 0.25}, {0.75, 0.75, 0.75}}};
  CHECK_THROWS_AS(intersect_fractures(net), NonAxisAligned);
}

TEST_CASE("fracture outside the domain box is invalid") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0, 0, 0.5}, {2, 1, 0.5}}};
  CHECK_THROWS_AS(intersect_fractures(net), ValidationError);
}

TEST_CASE("duplicate fracture ids are invalid") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{3, {0, 0, 0.25}, {1, 1, 0.25}}, {3, {0, 0, 0.75}, {1, 1, 0.75}}};
  CHECK_THROWS_AS(intersect_fractures(net), ValidationError);
}

TEST_CASE("2D segments intersect in points tagged with fracture ids") {
  FractureNetwork net = empty_network(2, {0, 0, 0}, {1, 1, 0});
  net.fractures = {{10, {0.25, 0.5, 0}, {1, 0.5, 0}}, {20, {0.5, 0.25, 0}, {0.5, 1, 0}}};
  IntersectionSet s = intersect_fractures(net);
  REQUIRE(s.points.size() == 1);
  CHECK(norm(s.points[0].p - Vec3{0.5, 0.5, 0}) < 1e-12);
  CHECK(s.points[0].parents == std::vector<int>{10, 20});
}
