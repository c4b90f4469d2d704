#pragma once

// Umbrella header: a simulator for single-phase incompressible flow and
// passive tracer transport in fractured porous media, with the fracture
// hierarchy represented as a graph of mono-dimensional grids.

#include "mdflow/bucket.hpp"
#include "mdflow/config.hpp"
#include "mdflow/core.hpp"
#include "mdflow/flow.hpp"
#include "mdflow/geometry.hpp"
#include "mdflow/grid.hpp"
#include "mdflow/mesh_io.hpp"
#include "mdflow/runner.hpp"
#include "mdflow/solver.hpp"
#include "mdflow/sparse.hpp"
#include "mdflow/toml.hpp"
#include "mdflow/transport.hpp"
#include "mdflow/vtk.hpp"
