#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "mdflow/bucket.hpp"
#include "mdflow/geometry.hpp"

using namespace mdflow;
using testutil::empty_network;
using testutil::three_plane_network;

TEST_CASE("nodes_of_dim returns grids per dimension in insertion order") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  CHECK(b.nodes_of_dim(3) == std::vector<int>{0});
  CHECK(b.nodes_of_dim(2).size() == 3);
  CHECK(b.nodes_of_dim(1).size() == 3);
  CHECK(b.nodes_of_dim(0).size() == 1);
  CHECK(b.nodes_of_dim(5).empty());  // out-of-range query: empty, no throw

  GridBucket plain = mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {2, 2, 2});
  CHECK(plain.nodes_of_dim(3).size() == 1);
  CHECK(plain.nodes_of_dim(2).empty());
}

TEST_CASE("edges_between requires consecutive dimensions") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  CHECK_THROWS_AS(b.edges_between(3, 1), NonConsecutiveDims);
  GridBucket plain = mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {2, 2, 2});
  CHECK(plain.edges_between(3, 2).empty());
}

TEST_CASE("graph traversal visits every grid and interface exactly once") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  std::size_t nodes = 0, edges = 0;
  for (int d = b.ambient_dim; d >= 0; --d) {
    nodes += b.nodes_of_dim(d).size();
    if (d > 0) edges += b.edges_between(d, d - 1).size();
  }
  CHECK(nodes == b.grids.size());
  CHECK(edges == b.edges.size());
}

TEST_CASE("every edge connects consecutive dimensions") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  for (const InterfaceEdge& e : b.edges)
    CHECK(b.grids[e.high].dim == b.grids[e.low].dim + 1);
}

TEST_CASE("tpfa dof count on the three-plane 2x2x2 bucket") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  DofMap map = assign_dofs(b, Scheme::Tpfa);
  // 8 matrix cells + 3*4 fracture cells + 3*2 line cells + 1 point
  CHECK(map.total == 27);
}

TEST_CASE("tpfa dof count on a single-cell grid") {
  GridBucket b = mesh_cartesian(empty_network(3, {0, 0, 0}, {1, 1, 1}), {1, 1, 1});
  CHECK(assign_dofs(b, Scheme::Tpfa).total == 1);
}

TEST_CASE("vem dof count on a single unit-square cell") {
  GridBucket b = mesh_cartesian(empty_network(2, {0, 0, 0}, {1, 1, 0}), {1, 1, 1});
  CHECK(assign_dofs(b, Scheme::Vem).total == 5);  // 4 face + 1 cell
}

TEST_CASE("dof blocks are ordered by descending dimension and partition the range") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  for (Scheme s : {Scheme::Tpfa, Scheme::Vem}) {
    DofMap map = assign_dofs(b, s);
    int expected_offset = 0;
    int last_dim = b.ambient_dim;
    for (const DofBlock& blk : map.blocks) {
      CHECK(blk.offset == expected_offset);
      CHECK(blk.size > 0);
      CHECK(blk.dim <= last_dim);
      last_dim = blk.dim;
      expected_offset += blk.size;
    }
    CHECK(expected_offset == map.total);
  }
}

TEST_CASE("vem dofs on a 0D grid reduce to one pressure dof") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  DofMap map = assign_dofs(b, Scheme::Vem);
  for (int n : b.nodes_of_dim(0)) CHECK(map.block_of_node(n).size == 1);
}

TEST_CASE("validate_bucket flags broken interface maps") {
  GridBucket b = mesh_cartesian(three_plane_network(), {2, 2, 2});
  validate_bucket(b);
  GridBucket broken = b;
  broken.edges[0].entries[0].cell = broken.grids[broken.edges[0].low].num_cells;
  CHECK_THROWS_AS(validate_bucket(broken), NonConformingMesh);
}
