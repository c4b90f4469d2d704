#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/flow.hpp"
#include "mdflow/geometry.hpp"
#include "mdflow/mesh_io.hpp"
#include "mdflow/toml.hpp"

namespace mdflow {

struct FractureSpec {
  std::string name;
  int normal_axis = 0;
  double position = 0.0;
  std::array<std::array<double, 2>, 2> extent{};  // per tangent axis (ascending), [lo, hi]
  double permeability = 1.0;
  double aperture = 1.0;
  double source = 0.0;
  std::optional<double> kappa;
};

struct BoundarySpec {
  BcKind kind = BcKind::Neumann;
  double value = 0.0;
};

/// Data override addressing one grid of the bucket by index; the way
/// imported meshes receive heterogeneous per-object properties.
struct GridDataSpec {
  int grid = -1;
  std::optional<double> permeability;
  std::optional<double> aperture;
  std::optional<double> source;
  std::optional<double> kappa;  // applied to edges whose low grid this is
};

struct ScenarioConfig {
  int dim = 3;
  Vec3 box_min{0, 0, 0};
  Vec3 box_max{1, 1, 1};
  std::array<int, 3> cells{1, 1, 1};

  std::string mesh_path;  // exclusive with the fracture list
  std::vector<FractureSpec> fractures;
  std::vector<GridDataSpec> grid_data;

  Scheme scheme = Scheme::Tpfa;
  std::vector<double> matrix_permeability{1.0};  // 1 value (scalar) or 3 (diagonal tensor)
  double matrix_source = 0.0;

  std::optional<double> intersection_permeability;  // default: max over parents
  std::optional<double> intersection_aperture;      // default: min over parents
  std::optional<double> intersection_kappa;

  std::array<std::optional<BoundarySpec>, 6> boundary;  // xmin,xmax,ymin,ymax,zmin,zmax

  bool transport_enabled = false;
  double dt = 0.01;
  double t_end = 1.0;
  double inflow_concentration = 1.0;
  double porosity = 1.0;
  std::optional<int> inflow_side;  // restrict injection to one box side

  std::string output_dir = "out";
  int output_cadence = 0;  // write every k-th transport step; 0 = final state only
  std::string reference_pressure;

  std::vector<std::string> warnings;
};

namespace detail {

inline int side_index(const std::string& name) {
  static const char* names[6] = {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"};
  for (int i = 0; i < 6; ++i)
    if (name == names[i]) return i;
  throw ValidationError("unknown boundary side '" + name + "'");
}

}  // namespace detail

inline ScenarioConfig parse_config(const std::string& path) {
  const toml::Value doc = toml::parse_file(path);
  ScenarioConfig cfg;

  if (const toml::Value* dom = doc.find("domain")) {
    if (const toml::Value* v = dom->find("dim")) cfg.dim = static_cast<int>(v->as_number("dim"));
    if (cfg.dim != 2 && cfg.dim != 3) throw ValidationError("domain.dim must be 2 or 3");
    auto read_vec = [&](const char* key, Vec3& out) {
      if (const toml::Value* v = dom->find(key)) {
        const auto nums = v->as_numbers(key);
        if (static_cast<int>(nums.size()) != cfg.dim)
          throw ValidationError(std::string("domain.") + key + " needs " +
                                std::to_string(cfg.dim) + " components");
        for (int a = 0; a < cfg.dim; ++a) out[a] = nums[a];
        if (cfg.dim == 2) out[2] = 0.0;
      }
    };
    read_vec("box_min", cfg.box_min);
    read_vec("box_max", cfg.box_max);
    if (const toml::Value* v = dom->find("cells")) {
      const auto nums = v->as_numbers("cells");
      if (static_cast<int>(nums.size()) != cfg.dim)
        throw ValidationError("domain.cells needs " + std::to_string(cfg.dim) + " components");
      for (int a = 0; a < cfg.dim; ++a) {
        cfg.cells[a] = static_cast<int>(nums[a]);
        if (cfg.cells[a] < 1) throw ValidationError("domain.cells must be >= 1");
      }
    }
  } else {
    throw ValidationError("missing [domain] section");
  }

  if (const toml::Value* flow = doc.find("flow")) {
    if (const toml::Value* v = flow->find("scheme")) {
      const std::string s = v->as_string("flow.scheme");
      if (s == "tpfa")
        cfg.scheme = Scheme::Tpfa;
      else if (s == "vem")
        cfg.scheme = Scheme::Vem;
      else
        throw ValidationError("flow.scheme must be \"tpfa\" or \"vem\"");
    } else {
      cfg.warnings.push_back("flow.scheme not set; defaulting to tpfa");
    }
    if (const toml::Value* v = flow->find("matrix_permeability")) {
      if (v->kind == toml::Value::Kind::Array) {
        cfg.matrix_permeability = v->as_numbers("flow.matrix_permeability");
        if (cfg.matrix_permeability.size() != 3)
          throw ValidationError("tensor matrix_permeability needs 3 diagonal components");
      } else {
        cfg.matrix_permeability = {v->as_number("flow.matrix_permeability")};
      }
      for (double k : cfg.matrix_permeability)
        if (k <= 0.0) throw ValidationError("matrix_permeability must be positive");
    }
    if (const toml::Value* v = flow->find("matrix_source"))
      cfg.matrix_source = v->as_number("flow.matrix_source");
  } else {
    cfg.warnings.push_back("missing [flow] section; defaulting to tpfa");
  }

  if (const toml::Value* fr = doc.find("fracture")) {
    for (const toml::Value& jf : fr->as_array("fracture")) {
      FractureSpec spec;
      if (const toml::Value* v = jf.find("name")) spec.name = v->as_string("fracture.name");
      spec.normal_axis = static_cast<int>(jf.at("normal_axis").as_number("fracture.normal_axis"));
      if (spec.normal_axis < 0 || spec.normal_axis >= cfg.dim)
        throw ValidationError("fracture.normal_axis out of range");
      spec.position = jf.at("position").as_number("fracture.position");
      const auto& ext = jf.at("extent").as_array("fracture.extent");
      if (static_cast<int>(ext.size()) != cfg.dim - 1)
        throw ValidationError("fracture.extent needs one [lo, hi] range per tangent axis");
      for (std::size_t i = 0; i < ext.size(); ++i) {
        const auto range = ext[i].as_numbers("fracture.extent range");
        if (range.size() != 2 || range[0] >= range[1])
          throw ValidationError("fracture.extent ranges must be [lo, hi] with lo < hi");
        spec.extent[i] = {range[0], range[1]};
      }
      if (const toml::Value* v = jf.find("permeability"))
        spec.permeability = v->as_number("fracture.permeability");
      if (const toml::Value* v = jf.find("aperture"))
        spec.aperture = v->as_number("fracture.aperture");
      if (const toml::Value* v = jf.find("source")) spec.source = v->as_number("fracture.source");
      if (const toml::Value* v = jf.find("kappa")) spec.kappa = v->as_number("fracture.kappa");
      if (spec.permeability <= 0.0 || spec.aperture <= 0.0)
        throw ValidationError("fracture permeability and aperture must be positive");
      cfg.fractures.push_back(spec);
    }
  }

  if (const toml::Value* ix = doc.find("intersections")) {
    if (const toml::Value* v = ix->find("permeability"))
      cfg.intersection_permeability = v->as_number("intersections.permeability");
    if (const toml::Value* v = ix->find("aperture"))
      cfg.intersection_aperture = v->as_number("intersections.aperture");
    if (const toml::Value* v = ix->find("kappa"))
      cfg.intersection_kappa = v->as_number("intersections.kappa");
  }

  if (const toml::Value* mesh = doc.find("mesh"))
    if (const toml::Value* v = mesh->find("path")) cfg.mesh_path = v->as_string("mesh.path");
  if (!cfg.mesh_path.empty() && !cfg.fractures.empty())
    throw ValidationError("give either a fracture list or a mesh path, not both");

  if (const toml::Value* gd = doc.find("grid_data")) {
    for (const toml::Value& jg : gd->as_array("grid_data")) {
      GridDataSpec spec;
      spec.grid = static_cast<int>(jg.at("grid").as_number("grid_data.grid"));
      if (const toml::Value* v = jg.find("permeability"))
        spec.permeability = v->as_number("grid_data.permeability");
      if (const toml::Value* v = jg.find("aperture"))
        spec.aperture = v->as_number("grid_data.aperture");
      if (const toml::Value* v = jg.find("source")) spec.source = v->as_number("grid_data.source");
      if (const toml::Value* v = jg.find("kappa")) spec.kappa = v->as_number("grid_data.kappa");
      cfg.grid_data.push_back(spec);
    }
  }

  if (const toml::Value* bc = doc.find("boundary")) {
    for (const auto& [name, side] : bc->table) {
      const int idx = detail::side_index(name);
      if (idx >= 2 * cfg.dim) throw ValidationError("boundary side '" + name + "' outside domain");
      BoundarySpec spec;
      const std::string type = side.at("type").as_string("boundary type");
      if (type == "dirichlet")
        spec.kind = BcKind::Dirichlet;
      else if (type == "neumann")
        spec.kind = BcKind::Neumann;
      else
        throw ValidationError("boundary type must be \"dirichlet\" or \"neumann\"");
      spec.value = side.at("value").as_number("boundary value");
      cfg.boundary[idx] = spec;
    }
  }

  if (const toml::Value* tr = doc.find("transport")) {
    if (const toml::Value* v = tr->find("enabled"))
      cfg.transport_enabled = v->as_bool("transport.enabled");
    if (const toml::Value* v = tr->find("dt")) cfg.dt = v->as_number("transport.dt");
    if (const toml::Value* v = tr->find("t_end")) cfg.t_end = v->as_number("transport.t_end");
    if (const toml::Value* v = tr->find("inflow_concentration"))
      cfg.inflow_concentration = v->as_number("transport.inflow_concentration");
    if (const toml::Value* v = tr->find("porosity")) {
      cfg.porosity = v->as_number("transport.porosity");
      if (cfg.porosity <= 0.0 || cfg.porosity > 1.0)
        throw ValidationError("transport.porosity must lie in (0, 1]");
    }
    if (const toml::Value* v = tr->find("side"))
      cfg.inflow_side = detail::side_index(v->as_string("transport.side"));
    if (cfg.transport_enabled && (cfg.dt <= 0.0 || cfg.t_end < cfg.dt))
      throw ValidationError("transport needs dt > 0 and t_end >= dt");
  }

  if (const toml::Value* out = doc.find("output")) {
    if (const toml::Value* v = out->find("directory"))
      cfg.output_dir = v->as_string("output.directory");
    if (const toml::Value* v = out->find("cadence"))
      cfg.output_cadence = static_cast<int>(v->as_number("output.cadence"));
  }
  if (const toml::Value* ref = doc.find("reference"))
    if (const toml::Value* v = ref->find("pressure"))
      cfg.reference_pressure = v->as_string("reference.pressure");

  return cfg;
}

/// Build the mixed-dimensional mesh of a scenario: Cartesian generation from
/// the fracture list, or import of an external conforming mesh.
inline GridBucket build_bucket(const ScenarioConfig& cfg) {
  if (!cfg.mesh_path.empty()) return import_mesh(cfg.mesh_path);
  FractureNetwork net;
  net.ambient_dim = cfg.dim;
  net.box_min = cfg.box_min;
  net.box_max = cfg.box_max;
  for (std::size_t i = 0; i < cfg.fractures.size(); ++i) {
    const FractureSpec& spec = cfg.fractures[i];
    Fracture f;
    f.id = static_cast<int>(i);
    f.lo[spec.normal_axis] = f.hi[spec.normal_axis] = spec.position;
    int t = 0;
    for (int a = 0; a < cfg.dim; ++a) {
      if (a == spec.normal_axis) continue;
      f.lo[a] = spec.extent[t][0];
      f.hi[a] = spec.extent[t][1];
      ++t;
    }
    net.fractures.push_back(f);
  }
  return mesh_cartesian(net, cfg.cells);
}

/// Attach permeabilities, apertures, sources, boundary conditions and
/// interface kappas. Intersection grids inherit the extremal parent values
/// unless overridden.
inline void apply_data(GridBucket& bucket, const ScenarioConfig& cfg) {
  const int top = bucket.top_grid();
  if (cfg.matrix_permeability.size() == 3) {
    const auto& k = cfg.matrix_permeability;
    bucket.data[top].permeability_tensor.assign(bucket.grids[top].num_cells,
                                                {k[0], k[1], k[2], 0.0, 0.0, 0.0});
    bucket.data[top].permeability.assign(bucket.grids[top].num_cells,
                                         std::max({k[0], k[1], k[2]}));
  } else {
    bucket.data[top].permeability.assign(bucket.grids[top].num_cells, cfg.matrix_permeability[0]);
  }
  bucket.data[top].source.assign(bucket.grids[top].num_cells, cfg.matrix_source);

  // fractures by construction index, descending-dimension order after that
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const int fi = bucket.fracture_index[n];
    if (fi < 0) continue;
    if (fi >= static_cast<int>(cfg.fractures.size()))
      throw ValidationError("mesh references fracture data that is not configured");
    const FractureSpec& spec = cfg.fractures[fi];
    bucket.data[n].permeability.assign(bucket.grids[n].num_cells, spec.permeability);
    bucket.data[n].aperture.assign(bucket.grids[n].num_cells, spec.aperture);
    bucket.data[n].source.assign(bucket.grids[n].num_cells, spec.source);
  }
  for (int d = bucket.ambient_dim - 2; d >= 0; --d)
    for (int n : bucket.nodes_of_dim(d)) {
      if (bucket.parent_grids[n].empty()) continue;
      double k_inherit = 0.0;
      double a_inherit = std::numeric_limits<double>::max();
      for (int p : bucket.parent_grids[n]) {
        k_inherit = std::max(k_inherit, bucket.data[p].permeability.at(0));
        a_inherit = std::min(a_inherit, bucket.data[p].aperture.at(0));
      }
      const double k = cfg.intersection_permeability.value_or(k_inherit);
      const double a = cfg.intersection_aperture.value_or(a_inherit);
      bucket.data[n].permeability.assign(bucket.grids[n].num_cells, k);
      bucket.data[n].aperture.assign(bucket.grids[n].num_cells, a);
    }

  for (int side = 0; side < 2 * bucket.ambient_dim; ++side) {
    if (!cfg.boundary[side]) continue;
    if (cfg.boundary[side]->kind == BcKind::Dirichlet)
      set_dirichlet_on_side(bucket, side, cfg.boundary[side]->value);
    else
      set_neumann_on_side(bucket, side, cfg.boundary[side]->value);
  }

  for (const GridDataSpec& spec : cfg.grid_data) {
    if (spec.grid < 0 || spec.grid >= static_cast<int>(bucket.grids.size()))
      throw ValidationError("grid_data.grid " + std::to_string(spec.grid) + " does not exist");
    FlowData& d = bucket.data[spec.grid];
    if (spec.permeability) d.permeability.assign(d.permeability.size(), *spec.permeability);
    if (spec.aperture) d.aperture.assign(d.aperture.size(), *spec.aperture);
    if (spec.source) d.source.assign(d.source.size(), *spec.source);
  }

  assign_default_kappa(bucket);
  for (InterfaceEdge& e : bucket.edges) {
    const int fi = bucket.fracture_index[e.low];
    std::optional<double> override_kappa =
        fi >= 0 ? cfg.fractures[fi].kappa : cfg.intersection_kappa;
    for (const GridDataSpec& spec : cfg.grid_data)
      if (spec.grid == e.low && spec.kappa) override_kappa = spec.kappa;
    if (override_kappa) e.kappa.assign(bucket.grids[e.low].num_cells, *override_kappa);
  }
}

}  // namespace mdflow
