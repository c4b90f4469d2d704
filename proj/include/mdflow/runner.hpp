#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdflow/config.hpp"
#include "mdflow/flow.hpp"
#include "mdflow/mesh_io.hpp"
#include "mdflow/transport.hpp"
#include "mdflow/vtk.hpp"

namespace mdflow {

/// Cell-averaged velocity from face discharges: the first-order
/// reconstruction v_E = sum_f sigma q_f (x_f - x_E) / (|E| a^(N-d)), exact
/// for constant velocity fields.
inline std::vector<std::vector<Vec3>> cell_velocities(const GridBucket& bucket,
                                                      const FlowSolution& sol) {
  std::vector<std::vector<Vec3>> out(bucket.grids.size());
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    out[n].assign(g.num_cells, Vec3{0, 0, 0});
    for (int c = 0; c < g.num_cells; ++c) {
      Vec3 v{0, 0, 0};
      for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k) {
        const int f = g.cell_face_idx[k];
        v += (g.cell_face_sign[k] * sol.face_flux[n][f]) *
             (g.face_centroid[f] - g.cell_centroid[c]);
      }
      const double measure = g.cell_volume[c] *
                             detail::aperture_scale(bucket.data[n], c, g.dim, bucket.ambient_dim);
      out[n][c] = (1.0 / measure) * v;
    }
  }
  return out;
}

struct RunSummary {
  Scheme scheme = Scheme::Tpfa;
  int dof_total = 0;
  double solver_residual = 0.0;
  double total_inflow = 0.0;
  double total_outflow = 0.0;
  double conservation_gap = 0.0;
  double max_flux_residual = 0.0;
  // transport
  bool transport_ran = false;
  int transport_steps = 0;
  double final_time = 0.0;
  double min_concentration = 0.0;
  double max_concentration = 0.0;
  double max_mass_balance_error = 0.0;
  std::vector<double> mean_concentration;  // per grid, measure-weighted, at t_end
  // cross-scheme comparison
  double reference_l2_difference = -1.0;  // -1 when no reference given
  double wall_time_seconds = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string step_name(const std::string& dir, int dim, int step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "fields_dim%d_%06d.vtk", dim, step);
  return (std::filesystem::path(dir) / buf).string();
}

inline void write_fields(const GridBucket& bucket, const std::string& dir, int step,
                         const FlowSolution& sol, const TracerState* tracer) {
  std::map<std::string, std::vector<std::vector<double>>> fields;
  fields["pressure"] = sol.pressure;
  if (tracer) fields["concentration"] = tracer->concentration;
  std::map<std::string, std::vector<std::vector<Vec3>>> vectors;
  vectors["velocity"] = cell_velocities(bucket, sol);
  for (int d = bucket.ambient_dim; d >= 0; --d) {
    if (bucket.nodes_of_dim(d).empty()) continue;
    write_vtk(bucket, d, step_name(dir, d, step), fields, vectors);
  }
}

inline void write_pressure_json(const FlowSolution& sol, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = "mdflow-pressure";
  doc["scheme"] = to_string(sol.scheme);
  doc["pressure"] = sol.pressure;
  std::ofstream out(path);
  out << doc.dump(1) << "\n";
}

inline double weighted_l2_difference(const GridBucket& bucket,
                                     const std::vector<std::vector<double>>& p,
                                     const std::vector<std::vector<double>>& q) {
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    if (p[n].size() != q[n].size())
      throw ValidationError("reference pressure does not match the bucket layout");
    for (int c = 0; c < g.num_cells; ++c) {
      const double w =
          g.cell_volume[c] * detail::aperture_scale(bucket.data[n], c, g.dim, bucket.ambient_dim);
      diff2 += w * (p[n][c] - q[n][c]) * (p[n][c] - q[n][c]);
      ref2 += w * q[n][c] * q[n][c];
    }
  }
  return ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
}

}  // namespace detail

/// Full scenario run: build or import the mesh, attach data, solve flow,
/// optionally advect the tracer, and write the VTK artifacts plus
/// pressure.json and summary.json into the output directory.
inline RunSummary run(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunSummary sum;
  sum.scheme = cfg.scheme;
  sum.warnings = cfg.warnings;

  GridBucket bucket = build_bucket(cfg);
  apply_data(bucket, cfg);

  std::filesystem::create_directories(cfg.output_dir);

  FlowSolution sol = solve_flow(bucket, cfg.scheme);
  sum.dof_total = assign_dofs(bucket, cfg.scheme).total;
  sum.solver_residual = sol.residual;
  const BoundaryFlow bf = boundary_flow(bucket, sol);
  sum.total_inflow = bf.inflow;
  sum.total_outflow = bf.outflow;
  sum.conservation_gap = std::abs(bf.inflow - bf.outflow);
  for (const auto& r : flux_residuals(bucket, sol))
    for (double v : r) sum.max_flux_residual = std::max(sum.max_flux_residual, v);

  TracerState tracer;
  if (cfg.transport_enabled) {
    TransportData data;
    data.resize_default(bucket);
    data.dt = cfg.dt;
    data.t_end = cfg.t_end;
    for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
      for (auto& phi : data.porosity[n]) phi = cfg.porosity;
      const Grid& g = bucket.grids[n];
      for (int f = 0; f < g.num_faces; ++f) {
        const bool wanted = cfg.inflow_side ? g.face_boundary_side[f] == *cfg.inflow_side
                                            : g.face_boundary_side[f] >= 0;
        if (wanted) data.inflow_conc[n][f] = cfg.inflow_concentration;
      }
    }

    sum.transport_ran = true;
    sum.min_concentration = 1e300;
    sum.max_concentration = -1e300;
    UpwindSystem usys = upwind_assemble(bucket, sol, data);
    TracerState state;
    state.concentration = data.initial;
    tracer = advance(bucket, state, usys, data,
                     [&](const TracerState& st, const TransportStepReport& rep) {
                       ++sum.transport_steps;
                       sum.final_time = rep.time;
                       sum.min_concentration = std::min(sum.min_concentration, rep.min_concentration);
                       sum.max_concentration = std::max(sum.max_concentration, rep.max_concentration);
                       sum.max_mass_balance_error =
                           std::max(sum.max_mass_balance_error, rep.mass_balance_error);
                       if (cfg.output_cadence > 0 && sum.transport_steps % cfg.output_cadence == 0)
                         detail::write_fields(bucket, cfg.output_dir, sum.transport_steps, sol, &st);
                     });

    sum.mean_concentration.resize(bucket.grids.size());
    for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
      const Grid& g = bucket.grids[n];
      double mass = 0.0, vol = 0.0;
      for (int c = 0; c < g.num_cells; ++c) {
        const double w =
            g.cell_volume[c] * detail::aperture_scale(bucket.data[n], c, g.dim, bucket.ambient_dim);
        mass += w * tracer.concentration[n][c];
        vol += w;
      }
      sum.mean_concentration[n] = mass / vol;
    }
    detail::write_fields(bucket, cfg.output_dir, sum.transport_steps, sol, &tracer);
  } else {
    detail::write_fields(bucket, cfg.output_dir, 0, sol, nullptr);
  }

  detail::write_pressure_json(sol,
                              (std::filesystem::path(cfg.output_dir) / "pressure.json").string());

  if (!cfg.reference_pressure.empty()) {
    std::ifstream in(cfg.reference_pressure);
    if (!in) throw ValidationError("cannot open reference pressure '" + cfg.reference_pressure + "'");
    nlohmann::json doc;
    in >> doc;
    const auto ref = doc.at("pressure").get<std::vector<std::vector<double>>>();
    sum.reference_l2_difference = detail::weighted_l2_difference(bucket, sol.pressure, ref);
  }

  sum.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json js;
  js["scheme"] = to_string(cfg.scheme);
  js["dof_total"] = sum.dof_total;
  for (int d = 0; d <= bucket.ambient_dim; ++d) {
    int cells = 0;
    for (int n : bucket.nodes_of_dim(d)) cells += bucket.grids[n].num_cells;
    js["grids_per_dim"][std::to_string(d)] = bucket.nodes_of_dim(d).size();
    js["cells_per_dim"][std::to_string(d)] = cells;
  }
  js["solver_residual"] = sum.solver_residual;
  js["total_inflow"] = sum.total_inflow;
  js["total_outflow"] = sum.total_outflow;
  js["conservation_gap"] = sum.conservation_gap;
  js["max_flux_residual"] = sum.max_flux_residual;
  if (sum.transport_ran) {
    js["transport"]["steps"] = sum.transport_steps;
    js["transport"]["final_time"] = sum.final_time;
    js["transport"]["min_concentration"] = sum.min_concentration;
    js["transport"]["max_concentration"] = sum.max_concentration;
    js["transport"]["max_mass_balance_error"] = sum.max_mass_balance_error;
    js["transport"]["mean_concentration_per_grid"] = sum.mean_concentration;
  }
  if (sum.reference_l2_difference >= 0.0)
    js["reference_l2_difference"] = sum.reference_l2_difference;
  if (!sum.warnings.empty()) js["warnings"] = sum.warnings;
  js["wall_time_seconds"] = sum.wall_time_seconds;  // varies run to run by nature
  std::ofstream out(std::filesystem::path(cfg.output_dir) / "summary.json");
  out << js.dump(1) << "\n";

  return sum;
}

/// Human-readable description of a bucket: grid, cell, face and dof counts.
inline std::string describe_bucket(const GridBucket& bucket) {
  std::ostringstream os;
  os << "ambient dimension " << bucket.ambient_dim << "\n";
  for (int d = bucket.ambient_dim; d >= 0; --d) {
    const auto nodes = bucket.nodes_of_dim(d);
    if (nodes.empty()) continue;
    int cells = 0, faces = 0;
    for (int n : nodes) {
      cells += bucket.grids[n].num_cells;
      faces += bucket.grids[n].num_faces;
    }
    os << "dim " << d << ": " << nodes.size() << " grid(s), " << cells << " cells, " << faces
       << " faces\n";
  }
  for (int d = bucket.ambient_dim; d >= 1; --d) {
    const auto edges = bucket.edges_between(d, d - 1);
    if (!edges.empty())
      os << "interfaces " << d << "->" << d - 1 << ": " << edges.size() << "\n";
  }
  os << "dofs: tpfa " << assign_dofs(bucket, Scheme::Tpfa).total << ", vem "
     << assign_dofs(bucket, Scheme::Vem).total << "\n";
  return os.str();
}

}  // namespace mdflow
