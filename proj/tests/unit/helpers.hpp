#pragma once

#include "mdflow/geometry.hpp"

namespace testutil {

// Three orthogonal full-span fractures through the origin of [-1,1]^3,
// meeting in three axis lines and one point.
inline mdflow::FractureNetwork three_plane_network() {
  mdflow::FractureNetwork net;
  net.ambient_dim = 3;
  net.box_min = {-1, -1, -1};
  net.box_max = {1, 1, 1};
  net.fractures = {
      {0, {-1, -1, 0}, {1, 1, 0}},  // z = 0 plane
      {1, {-1, 0, -1}, {1, 0, 1}},  // y = 0 plane
      {2, {0, -1, -1}, {0, 1, 1}},  // x = 0 plane
  };
  return net;
}

inline mdflow::FractureNetwork empty_network(int dim, mdflow::Vec3 lo, mdflow::Vec3 hi) {
  mdflow::FractureNetwork net;
  net.ambient_dim = dim;
  net.box_min = lo;
  net.box_max = hi;
  return net;
}

}  // namespace testutil
