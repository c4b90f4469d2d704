#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/flow.hpp"
#include "mdflow/solver.hpp"

namespace mdflow {

struct TransportData {
  double dt = 0.01;
  double t_end = 1.0;
  std::vector<std::vector<double>> porosity;     // per grid, per cell
  std::vector<std::vector<double>> inflow_conc;  // per grid, per face
  std::vector<std::vector<double>> initial;      // per grid, per cell

  void resize_default(const GridBucket& bucket) {
    porosity.resize(bucket.grids.size());
    inflow_conc.resize(bucket.grids.size());
    initial.resize(bucket.grids.size());
    for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
      porosity[n].assign(bucket.grids[n].num_cells, 1.0);
      inflow_conc[n].assign(bucket.grids[n].num_faces, 0.0);
      initial[n].assign(bucket.grids[n].num_cells, 0.0);
    }
  }
};

struct TracerState {
  std::vector<std::vector<double>> concentration;  // per grid, per cell
  double time = 0.0;
};

/// First-order upwind advection operator over the cell dofs of all grids
/// (TPFA dof layout), driven by the face discharges and interface fluxes of
/// a flow solution. rhs carries the inflow-boundary contributions.
struct UpwindSystem {
  DofMap dofs;
  SparseMatrix U;
  std::vector<double> rhs;
  std::vector<double> phi_volume;  // porosity * |E| * a^(N-d), per dof
};

inline UpwindSystem upwind_assemble(const GridBucket& bucket, const FlowSolution& sol,
                                    const TransportData& data) {
  if (sol.face_flux.size() != bucket.grids.size() ||
      sol.interface_flux.size() != bucket.edges.size())
    throw MissingFlux("flow solution does not match the bucket");

  UpwindSystem out;
  out.dofs = assign_dofs(bucket, Scheme::Tpfa);
  out.rhs.assign(out.dofs.total, 0.0);
  out.phi_volume.assign(out.dofs.total, 0.0);
  std::vector<Triplet> trip;

  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    const int off = out.dofs.block_of_node(static_cast<int>(n)).offset;
    for (int c = 0; c < g.num_cells; ++c)
      out.phi_volume[off + c] = data.porosity[n][c] * g.cell_volume[c] *
                                detail::aperture_scale(bucket.data[n], c, g.dim, bucket.ambient_dim);
    for (int f = 0; f < g.num_faces; ++f) {
      if (g.face_frac_side[f] != 0) continue;  // handled through interface fluxes
      const int cp = g.face_cells[f][0];
      const int cm = g.face_cells[f][1];
      const double q = sol.face_flux[n][f];
      if (cp >= 0 && cm >= 0) {
        const int up = q >= 0.0 ? cp : cm;
        const int down = q >= 0.0 ? cm : cp;
        trip.push_back({off + up, off + up, std::abs(q)});
        trip.push_back({off + down, off + up, -std::abs(q)});
      } else {
        const int c = cp >= 0 ? cp : cm;
        const double q_out = (cp >= 0 ? 1.0 : -1.0) * q;
        if (q_out > 0.0)
          trip.push_back({off + c, off + c, q_out});
        else if (q_out < 0.0)
          out.rhs[off + c] += -q_out * data.inflow_conc[n][f];
      }
    }
  }

  for (std::size_t ei = 0; ei < bucket.edges.size(); ++ei) {
    const InterfaceEdge& e = bucket.edges[ei];
    const int hoff = out.dofs.block_of_node(e.high).offset;
    const int loff = out.dofs.block_of_node(e.low).offset;
    for (std::size_t i = 0; i < e.entries.size(); ++i) {
      const Grid& high = bucket.grids[e.high];
      const auto& en = e.entries[i];
      const int hc = high.face_cells[en.face][0] >= 0 ? high.face_cells[en.face][0]
                                                      : high.face_cells[en.face][1];
      const double lam = sol.interface_flux[ei][i];
      const int up = lam >= 0.0 ? hoff + hc : loff + en.cell;
      const int down = lam >= 0.0 ? loff + en.cell : hoff + hc;
      trip.push_back({up, up, std::abs(lam)});
      trip.push_back({down, up, -std::abs(lam)});
    }
  }

  out.U = from_triplets(out.dofs.total, out.dofs.total, std::move(trip));

  // the implicit update must stay a convex combination: the diagonal
  // absorbs the rounding-level positive row excess that pressure-derived
  // discharge carries
  for (int r = 0; r < out.U.rows(); ++r) {
    double diag = 0.0, inflow = out.rhs[r];
    int diag_k = -1;
    for (int k = out.U.row_ptr()[r]; k < out.U.row_ptr()[r + 1]; ++k) {
      if (out.U.col_idx()[k] == r) {
        diag = out.U.values()[k];
        diag_k = k;
      } else {
        inflow += std::abs(out.U.values()[k]);
      }
    }
    if (diag_k >= 0 && inflow > diag) out.U.values()[diag_k] = inflow;
  }
  return out;
}

struct TransportStepReport {
  double time = 0.0;  // after the step
  double dt = 0.0;
  double min_concentration = 0.0;
  double max_concentration = 0.0;
  double mass_balance_error = 0.0;  // relative per-step defect
  double solver_residual = 0.0;     // relative residual of the implicit solve
};

using StepObserver = std::function<void(const TracerState&, const TransportStepReport&)>;

namespace detail {

inline std::vector<double> gather(const GridBucket& bucket, const DofMap& dofs,
                                  const std::vector<std::vector<double>>& per_grid) {
  std::vector<double> x(dofs.total, 0.0);
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const int off = dofs.block_of_node(static_cast<int>(n)).offset;
    for (int c = 0; c < bucket.grids[n].num_cells; ++c) x[off + c] = per_grid[n][c];
  }
  return x;
}

inline void scatter(const GridBucket& bucket, const DofMap& dofs, const std::vector<double>& x,
                    std::vector<std::vector<double>>& per_grid) {
  per_grid.resize(bucket.grids.size());
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const int off = dofs.block_of_node(static_cast<int>(n)).offset;
    per_grid[n].assign(bucket.grids[n].num_cells, 0.0);
    for (int c = 0; c < bucket.grids[n].num_cells; ++c) per_grid[n][c] = x[off + c];
  }
}

// Row-equilibrated implicit Euler operator: row i of (Phi/dt + U) scaled
// by dt/Phi_i. The maximum principle needs uniform per-row solve accuracy
// across cells of very different measure.
inline SparseMatrix implicit_euler_matrix(const UpwindSystem& sys, double dt) {
  std::vector<Triplet> trip;
  trip.reserve(sys.U.nnz() + sys.phi_volume.size());
  for (int r = 0; r < sys.U.rows(); ++r)
    for (int k = sys.U.row_ptr()[r]; k < sys.U.row_ptr()[r + 1]; ++k)
      trip.push_back({r, sys.U.col_idx()[k], dt / sys.phi_volume[r] * sys.U.values()[k]});
  for (int i = 0; i < sys.U.rows(); ++i) trip.push_back({i, i, 1.0});
  return from_triplets(sys.U.rows(), sys.U.cols(), std::move(trip));
}

}  // namespace detail

/// Implicit Euler time stepping of (Phi/dt + U) c_next = Phi/dt c + b from
/// state.time to t_end; the advection operator is factored once and reused,
/// the final step is shortened to land exactly on t_end.
inline TracerState advance(const GridBucket& bucket, TracerState state, const UpwindSystem& sys,
                           const TransportData& data, const StepObserver& observer = {}) {
  if (data.dt <= 0.0) throw NonPositiveInput("transport time step must be positive");
  std::vector<double> c = detail::gather(bucket, sys.dofs, state.concentration);

  SparseLU lu;
  SparseMatrix system;
  double factored_dt = 0.0;
  const double time_tol = 1e-9 * std::max(data.dt, data.t_end);
  while (state.time < data.t_end - time_tol) {
    const double dt = std::min(data.dt, data.t_end - state.time);
    if (dt != factored_dt) {
      system = detail::implicit_euler_matrix(sys, dt);
      lu.factor(system);
      factored_dt = dt;
    }
    std::vector<double> b(sys.rhs.size());
    for (int i = 0; i < sys.U.rows(); ++i)
      b[i] = c[i] + dt / sys.phi_volume[i] * sys.rhs[i];
    std::vector<double> c_next = lu.solve(b);

    TransportStepReport report;
    report.dt = dt;
    report.time = state.time + dt;
    report.min_concentration = *std::min_element(c_next.begin(), c_next.end());
    report.max_concentration = *std::max_element(c_next.begin(), c_next.end());
    report.solver_residual = relative_residual(system, c_next, b);
    double change = 0.0, inflow = 0.0, outflow = 0.0;
    const std::vector<double> uc = sys.U.multiply(c_next);
    for (int i = 0; i < sys.U.rows(); ++i) {
      change += sys.phi_volume[i] * (c_next[i] - c[i]) / dt;
      inflow += sys.rhs[i];
      outflow += uc[i];  // interior transfers cancel in the sum
    }
    const double scale = std::max({std::abs(inflow), std::abs(outflow), 1.0});
    report.mass_balance_error = std::abs(change - (inflow - outflow)) / scale;

    c = std::move(c_next);
    state.time = report.time;
    detail::scatter(bucket, sys.dofs, c, state.concentration);
    if (observer) observer(state, report);
  }
  if (std::abs(state.time - data.t_end) <= time_tol) state.time = data.t_end;
  return state;
}

/// Flow-driven tracer run: assemble the upwind operator once (the discharge
/// field is steady) and advance from the initial state to t_end.
inline TracerState run_transport(const GridBucket& bucket, const FlowSolution& sol,
                                 const TransportData& data, const StepObserver& observer = {}) {
  UpwindSystem sys = upwind_assemble(bucket, sol, data);
  TracerState state;
  state.concentration = data.initial;
  state.time = 0.0;
  return advance(bucket, state, sys, data, observer);
}

}  // namespace mdflow
