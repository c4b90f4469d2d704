#include <catch2/catch.hpp>

#include <random>

#include "helpers.hpp"
#include "mdflow/geometry.hpp"

using namespace mdflow;
using testutil::empty_network;
using testutil::three_plane_network;

TEST_CASE("three-plane network on 2x2x2 cells: full hierarchy counts") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});

  REQUIRE(b.nodes_of_dim(3).size() == 1);
  REQUIRE(b.nodes_of_dim(2).size() == 3);
  REQUIRE(b.nodes_of_dim(1).size() == 3);
  REQUIRE(b.nodes_of_dim(0).size() == 1);

  const Grid& top = b.grids[b.top_grid()];
  CHECK(top.num_cells == 8);
  // 36 lattice faces; the 12 interior ones all lie on fracture planes and
  // get duplicated: 36 + 12 = 48
  CHECK(top.num_faces == 48);

  for (int n : b.nodes_of_dim(2)) {
    CHECK(b.grids[n].num_cells == 4);
    CHECK(b.grids[n].num_faces == 16);  // 12 lattice edges + 4 split copies
  }
  for (int n : b.nodes_of_dim(1)) {
    CHECK(b.grids[n].num_cells == 2);
    CHECK(b.grids[n].num_faces == 4);  // 3 points + 1 split copy
  }
  for (int n : b.nodes_of_dim(0)) {
    CHECK(b.grids[n].num_cells == 1);
    CHECK(b.grids[n].num_faces == 0);
    CHECK(b.grids[n].cell_volume[0] == 1.0);
  }

  CHECK(b.edges_between(3, 2).size() == 3);
  CHECK(b.edges_between(2, 1).size() == 6);
  CHECK(b.edges_between(1, 0).size() == 3);
}

TEST_CASE("empty network meshes to a single grid without edges") {
  GridBucket b = mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {1, 1, 1});
  REQUIRE(b.grids.size() == 1);
  CHECK(b.grids[0].num_cells == 1);
  CHECK(b.grids[0].num_faces == 6);
  CHECK(b.edges.empty());
}

TEST_CASE("fracture off the lattice is rejected") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0.3, 0, 0}, {0.3, 1, 1}}};
  CHECK_THROWS_AS(mesh_cartesian(net, {2, 2, 2}), NonConformingFracture);
}

TEST_CASE("at least one cell per axis is required") {
  CHECK_THROWS_AS(mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {0, 2, 2}),
                  ValidationError);
}

TEST_CASE("split faces come in pairs: same area and centroid, opposite normals") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  int pairs = 0;
  for (const InterfaceEdge& e : b.edges) {
    const Grid& high = b.grids[e.high];
    const Grid& low = b.grids[e.low];
    std::vector<int> plus(low.num_cells, -1), minus(low.num_cells, -1);
    for (const auto& en : e.entries)
      (en.side > 0 ? plus : minus)[en.cell] = en.face;
    for (int c = 0; c < low.num_cells; ++c) {
      REQUIRE(plus[c] >= 0);
      REQUIRE(minus[c] >= 0);
      CHECK(high.face_area[plus[c]] == Approx(high.face_area[minus[c]]));
      CHECK(norm(high.face_centroid[plus[c]] - high.face_centroid[minus[c]]) < 1e-14);
      CHECK(norm(high.face_normal[plus[c]] + high.face_normal[minus[c]]) < 1e-14);
      // conforming: the mapped face coincides with the low cell
      CHECK(norm(high.face_centroid[plus[c]] - low.cell_centroid[c]) < 1e-14);
      ++pairs;
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("fracture-side faces are tagged and carry exactly one cell") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  const Grid& top = b.grids[b.top_grid()];
  int split = 0;
  for (int f = 0; f < top.num_faces; ++f) {
    if (top.face_frac_side[f] == 0) continue;
    ++split;
    CHECK((top.face_cells[f][0] == -1) != (top.face_cells[f][1] == -1));
    CHECK(top.face_boundary_side[f] == -1);
  }
  CHECK(split == 24);  // 12 interior faces duplicated
}

TEST_CASE("T-intersection (fracture tip on another fracture) is rejected") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  // vertical fracture ends exactly on the horizontal one
  net.fractures = {{0, {0, 0, 0.5}, {1, 1, 0.5}}, {1, {0.5, 0, 0.5}, {0.5, 1, 1}}};
  CHECK_THROWS_AS(mesh_cartesian(net, {2, 2, 2}), UnsupportedIntersection);
}

TEST_CASE("2D T-junction (segment tip on another segment) is rejected") {
  FractureNetwork net = empty_network(2, {0, 0, 0}, {1, 1, 0});
  net.fractures = {{0, {0, 0.5, 0}, {1, 0.5, 0}},     // horizontal through-fracture
                   {1, {0.5, 0.5, 0}, {0.5, 1, 0}}};  // vertical segment ending on it
  CHECK_THROWS_AS(mesh_cartesian(net, {4, 4, 1}), UnsupportedIntersection);
}

TEST_CASE("2D domain with a through-going horizontal fracture") {
  FractureNetwork net = empty_network(2, {0, 0, 0}, {1, 1, 0});
  net.fractures = {{0, {0, 0.5, 0}, {1, 0.5, 0}}};
  GridBucket b = mesh_cartesian(net, {4, 4, 1});

  REQUIRE(b.grids.size() == 2);
  const Grid& top = b.grids[0];
  const Grid& frac = b.grids[1];
  CHECK(top.num_cells == 16);
  CHECK(top.num_faces == 20 + 20 + 4);  // lattice x-edges + y-edges + 4 split copies
  CHECK(frac.dim == 1);
  CHECK(frac.num_cells == 4);

  REQUIRE(b.edges.size() == 1);
  CHECK(b.edges[0].entries.size() == 8);  // 4 cells, two sides each

  for (const Grid& g : b.grids)
    for (int c = 0; c < g.num_cells; ++c) CHECK(cell_identity_gap(g, c) < 1e-12);
}

TEST_CASE("2D crossing fractures produce a 0D grid") {
  FractureNetwork net = empty_network(2, {0, 0, 0}, {1, 1, 0});
  net.fractures = {{0, {0, 0.5, 0}, {1, 0.5, 0}}, {1, {0.5, 0, 0}, {0.5, 1, 0}}};
  GridBucket b = mesh_cartesian(net, {4, 4, 1});
  CHECK(b.nodes_of_dim(2).size() == 1);
  CHECK(b.nodes_of_dim(1).size() == 2);
  CHECK(b.nodes_of_dim(0).size() == 1);
  CHECK(b.edges_between(2, 1).size() == 2);
  CHECK(b.edges_between(1, 0).size() == 2);
  // each 1D grid split at the crossing: 5 lattice points + 1 duplicate
  for (int n : b.nodes_of_dim(1)) CHECK(b.grids[n].num_faces == 6);
}

TEST_CASE("fracture on the domain boundary maps single-sided") {
  FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
  net.fractures = {{0, {0, 0, 0}, {1, 1, 0}}};  // z = 0 boundary plane
  GridBucket b = mesh_cartesian(net, {2, 2, 2});
  REQUIRE(b.edges.size() == 1);
  CHECK(b.edges[0].entries.size() == 4);  // one side only
  for (const auto& en : b.edges[0].entries) CHECK(en.side == +1);
}

TEST_CASE("random lattice networks: every generated bucket satisfies the invariants") {
  std::mt19937 rng(7771);
  const std::array<int, 3> cells{6, 6, 6};
  int meshed = 0, rejected = 0;
  for (int trial = 0; trial < 40; ++trial) {
    FractureNetwork net = empty_network(3, {0, 0, 0}, {1, 1, 1});
    std::uniform_int_distribution<int> axis_d(0, 2), plane_d(1, 5), lo_d(0, 3);
    const int count = 1 + trial % 4;
    for (int i = 0; i < count; ++i) {
      Fracture f;
      f.id = i;
      const int axis = axis_d(rng);
      f.lo[axis] = f.hi[axis] = plane_d(rng) / 6.0;
      for (int a = 0; a < 3; ++a) {
        if (a == axis) continue;
        const int lo = lo_d(rng);
        std::uniform_int_distribution<int> hi_d(lo + 2, 6);
        f.lo[a] = lo / 6.0;
        f.hi[a] = hi_d(rng) / 6.0;
      }
      net.fractures.push_back(f);
    }
    GridBucket b;
    try {
      b = mesh_cartesian(net, cells);
    } catch (const OverlappingFractures&) {
      ++rejected;
      continue;
    } catch (const UnsupportedIntersection&) {
      ++rejected;
      continue;
    }
    ++meshed;
    validate_bucket(b);
    for (const Grid& g : b.grids)
      for (int c = 0; c < g.num_cells; ++c) CHECK(cell_identity_gap(g, c) < 1e-12);
    // split pairs: same area/centroid, opposite normals, conforming
    for (const InterfaceEdge& e : b.edges) {
      const Grid& high = b.grids[e.high];
      const Grid& low = b.grids[e.low];
      for (const auto& en : e.entries) {
        CHECK(norm(high.face_centroid[en.face] - low.cell_centroid[en.cell]) < 1e-13);
        CHECK(high.face_frac_side[en.face] == en.side);
      }
    }
    // graph traversal completeness
    std::size_t nodes = 0, edges = 0;
    for (int d = 3; d >= 0; --d) {
      nodes += b.nodes_of_dim(d).size();
      if (d > 0) edges += b.edges_between(d, d - 1).size();
    }
    CHECK(nodes == b.grids.size());
    CHECK(edges == b.edges.size());
  }
  CHECK(meshed >= 20);  // the generator must mostly produce valid configurations
  INFO("meshed " << meshed << ", rejected " << rejected);
}

TEST_CASE("boundary faces are tagged with their box side") {
  GridBucket b = mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {2, 2, 2});
  const Grid& g = b.grids[0];
  std::array<int, 6> count{};
  for (int f = 0; f < g.num_faces; ++f)
    if (g.face_boundary_side[f] >= 0) ++count[g.face_boundary_side[f]];
  for (int s = 0; s < 6; ++s) CHECK(count[s] == 4);
}
