#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdflow/bucket.hpp"
#include "mdflow/core.hpp"
#include "mdflow/solver.hpp"

namespace mdflow {

/// Effective normal permeability of an interface: the resistance of half
/// the object's width, kappa = 2 k_n / a.
inline double kappa_from_data(double k_normal, double aperture) {
  if (k_normal <= 0.0 || aperture <= 0.0)
    throw NonPositiveInput("kappa_from_data requires positive permeability and aperture");
  return 2.0 * k_normal / aperture;
}

namespace detail {

inline Vec3 apply_tensor(const std::array<double, 6>& k, const Vec3& v) {
  return {k[0] * v[0] + k[3] * v[1] + k[4] * v[2],
          k[3] * v[0] + k[1] * v[1] + k[5] * v[2],
          k[4] * v[0] + k[5] * v[1] + k[2] * v[2]};
}

inline Vec3 apply_permeability(const FlowData& data, int cell, const Vec3& v) {
  if (!data.permeability_tensor.empty()) return apply_tensor(data.permeability_tensor[cell], v);
  return data.permeability[cell] * v;
}

/// Cross-sectional measure of a cell of dimension d in ambient dimension N.
inline double aperture_scale(const FlowData& data, int cell, int dim, int ambient_dim) {
  return std::pow(data.aperture[cell], ambient_dim - dim);
}

/// TPFA half-transmissibility of `cell` at `face`, with the normal oriented
/// out of the cell.
inline double half_transmissibility(const Grid& g, const FlowData& data, int cell, int face,
                                    double sign, int ambient_dim) {
  const Vec3 r = g.face_centroid[face] - g.cell_centroid[cell];
  const double d2 = dot(r, r);
  const Vec3 n_out = sign * g.face_normal[face];
  const double nk = dot(n_out, apply_permeability(data, cell, r));
  return aperture_scale(data, cell, g.dim, ambient_dim) * g.face_area[face] * nk / d2;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// TPFA
// ---------------------------------------------------------------------------

/// Local TPFA discretization of one grid: triplets over cell dofs, the rhs,
/// and the per-face transmissibility cache used for flux reconstruction.
struct TpfaGrid {
  std::vector<Triplet> entries;
  std::vector<double> rhs;
  std::vector<double> face_trans;
};

inline TpfaGrid tpfa_assemble(const Grid& g, const FlowData& data, int ambient_dim,
                              std::vector<std::string>* warnings = nullptr) {
  TpfaGrid out;
  out.rhs.assign(g.num_cells, 0.0);
  out.face_trans.assign(g.num_faces, 0.0);
  for (int c = 0; c < g.num_cells; ++c)
    out.rhs[c] += data.source[c] * g.cell_volume[c] *
                  detail::aperture_scale(data, c, g.dim, ambient_dim);
  if (g.dim == 0) return out;  // coupling terms only; no local operator

  auto warn_negative = [&](int f, double t) {
    if (t <= 0.0 && warnings)
      warnings->push_back("NonPositiveTransmissibility: face " + std::to_string(f) +
                          " has half-transmissibility " + std::to_string(t));
  };

  for (int f = 0; f < g.num_faces; ++f) {
    const int cp = g.face_cells[f][0];
    const int cm = g.face_cells[f][1];
    if (g.face_frac_side[f] != 0) continue;  // internal boundary: edge coupling owns it
    if (cp >= 0 && cm >= 0) {
      const double tp = detail::half_transmissibility(g, data, cp, f, +1.0, ambient_dim);
      const double tm = detail::half_transmissibility(g, data, cm, f, -1.0, ambient_dim);
      warn_negative(f, tp);
      warn_negative(f, tm);
      const double t = tp * tm / (tp + tm);
      out.face_trans[f] = t;
      out.entries.push_back({cp, cp, t});
      out.entries.push_back({cm, cm, t});
      out.entries.push_back({cp, cm, -t});
      out.entries.push_back({cm, cp, -t});
    } else {
      const int c = cp >= 0 ? cp : cm;
      const double s = cp >= 0 ? 1.0 : -1.0;
      switch (data.bc_kind[f]) {
        case BcKind::Dirichlet: {
          const double t = detail::half_transmissibility(g, data, c, f, s, ambient_dim);
          warn_negative(f, t);
          out.face_trans[f] = t;
          out.entries.push_back({c, c, t});
          out.rhs[c] += t * data.bc_value[f];
          break;
        }
        case BcKind::Neumann:
          out.rhs[c] -= data.bc_value[f];  // prescribed outward flux
          break;
        case BcKind::None:
          break;  // untagged boundary face: no flow
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mixed VEM
// ---------------------------------------------------------------------------

/// Local lowest-order mixed VEM inner-product matrix of one cell. M acts on
/// face dofs holding the flux density along the stored face normal and
/// satisfies the consistency relation M N = R exactly, with R_f =
/// sigma(E,f) |f| (x_f - x_E)^T and N_f = n_f^T K_eff for the in-plane
/// effective permeability K_eff = K a^(N-d).
struct VemLocal {
  std::vector<int> faces;
  Eigen::MatrixXd M;
  Eigen::MatrixXd M0;
  Eigen::MatrixXd R;
  Eigen::MatrixXd N;
};

inline VemLocal vem_local(const Grid& g, const FlowData& data, int cell, int ambient_dim) {
  if (g.dim < 1) throw DegenerateCell("vem_local needs dim >= 1");
  VemLocal out;
  for (int k = g.cell_face_ptr[cell]; k < g.cell_face_ptr[cell + 1]; ++k)
    out.faces.push_back(g.cell_face_idx[k]);
  const int nf = static_cast<int>(out.faces.size());
  const int d = g.dim;
  const double vol = g.cell_volume[cell];
  const double ap = detail::aperture_scale(data, cell, d, ambient_dim);

  const std::vector<Vec3> basis = cell_tangent_basis(g, cell);
  Eigen::MatrixXd T(3, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < 3; ++i) T(i, j) = basis[j][i];

  Eigen::MatrixXd K(3, 3);
  if (!data.permeability_tensor.empty()) {
    const auto& kt = data.permeability_tensor[cell];
    K << kt[0], kt[3], kt[4], kt[3], kt[1], kt[5], kt[4], kt[5], kt[2];
  } else {
    K = data.permeability[cell] * Eigen::Matrix3d::Identity();
  }
  const Eigen::MatrixXd Keff = ap * (T.transpose() * K * T);  // d x d, in-plane

  // local construction in outward-oriented quantities, folded back onto the
  // globally oriented face dofs through S = diag(sigma)
  Eigen::MatrixXd Rhat(nf, d), Nhat(nf, d);
  Eigen::VectorXd S(nf);
  out.R.resize(nf, 3);
  out.N.resize(nf, 3);
  for (int i = 0; i < nf; ++i) {
    const int f = out.faces[i];
    const double s = g.cell_face_sign[g.cell_face_ptr[cell] + i];
    S(i) = s;
    const Vec3 r = g.face_centroid[f] - g.cell_centroid[cell];
    Eigen::Vector3d rv(r[0], r[1], r[2]), nv(g.face_normal[f][0], g.face_normal[f][1],
                                             g.face_normal[f][2]);
    Rhat.row(i) = g.face_area[f] * (T.transpose() * rv).transpose();
    Nhat.row(i) = s * (T.transpose() * nv).transpose() * Keff;
    out.R.row(i) = s * g.face_area[f] * rv.transpose();
    out.N.row(i) = (T * (Keff * (T.transpose() * nv))).transpose();
  }

  const Eigen::MatrixXd M0_out = Rhat * Keff.llt().solve(Rhat.transpose()) / vol;
  const Eigen::MatrixXd P = Nhat * (Nhat.transpose() * Nhat).llt().solve(Nhat.transpose());
  const double gamma = M0_out.trace() / nf;
  const Eigen::MatrixXd M_out = M0_out + gamma * (Eigen::MatrixXd::Identity(nf, nf) - P);
  out.M0 = S.asDiagonal() * M0_out * S.asDiagonal();
  out.M = S.asDiagonal() * M_out * S.asDiagonal();
  return out;
}

/// Local mixed VEM saddle system of one grid. Dof layout: faces first (flux
/// density along the stored normal), then cell pressures. Rows are arranged
/// symmetric indefinite: [[M, -B^T], [-B, 0]] with B = sigma |f|.
struct VemGrid {
  std::vector<Triplet> entries;
  std::vector<double> rhs;
  std::vector<std::pair<int, double>> constrained;  // local dof -> value
};

inline VemGrid vem_assemble(const Grid& g, const FlowData& data, int ambient_dim) {
  VemGrid out;
  const int nf = g.num_faces;
  out.rhs.assign(nf + g.num_cells, 0.0);

  if (g.dim == 0) {
    out.rhs[0] = -data.source[0] * g.cell_volume[0] *
                 detail::aperture_scale(data, 0, g.dim, ambient_dim);
    return out;
  }

  for (int c = 0; c < g.num_cells; ++c) {
    VemLocal loc = vem_local(g, data, c, ambient_dim);
    const int n = static_cast<int>(loc.faces.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.entries.push_back({loc.faces[i], loc.faces[j], loc.M(i, j)});
    for (int i = 0; i < n; ++i) {
      const int f = loc.faces[i];
      const double sb = g.cell_face_sign[g.cell_face_ptr[c] + i] * g.face_area[f];
      out.entries.push_back({f, nf + c, -sb});
      out.entries.push_back({nf + c, f, -sb});
    }
    out.rhs[nf + c] -= data.source[c] * g.cell_volume[c] *
                       detail::aperture_scale(data, c, g.dim, ambient_dim);
  }

  for (int f = 0; f < nf; ++f) {
    if (g.face_frac_side[f] != 0) continue;  // coupled through an edge
    const int cp = g.face_cells[f][0];
    const int cm = g.face_cells[f][1];
    if (cp >= 0 && cm >= 0) continue;
    const double s = cp >= 0 ? 1.0 : -1.0;
    switch (data.bc_kind[f]) {
      case BcKind::Dirichlet:
        out.rhs[f] -= s * g.face_area[f] * data.bc_value[f];
        break;
      case BcKind::Neumann:
        out.constrained.push_back({f, s * data.bc_value[f] / g.face_area[f]});
        break;
      case BcKind::None:
        out.constrained.push_back({f, 0.0});
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Global assembly
// ---------------------------------------------------------------------------

inline bool has_dirichlet(const GridBucket& bucket) {
  for (const FlowData& d : bucket.data)
    for (BcKind k : d.bc_kind)
      if (k == BcKind::Dirichlet) return true;
  return false;
}

/// Interface transmissibility of one TPFA coupling entry: harmonic
/// combination of the adjacent cell's half-transmissibility and the
/// interface conductance kappa |f| a_scale.
inline double tpfa_interface_transmissibility(const Grid& high, const FlowData& high_data,
                                              double kappa, int face, int ambient_dim) {
  const int cell = high.face_cells[face][0] >= 0 ? high.face_cells[face][0] : high.face_cells[face][1];
  const double s = high.face_cells[face][0] >= 0 ? 1.0 : -1.0;
  const double th = detail::half_transmissibility(high, high_data, cell, face, s, ambient_dim);
  const double a_scale = detail::aperture_scale(high_data, cell, high.dim, ambient_dim);
  const double cond = kappa * high.face_area[face] * a_scale;
  if (th + cond <= 0.0) return 0.0;
  return th * cond / (th + cond);
}

/// Assemble the global block system: iterate graph nodes for the local
/// discretizations, then edges for the interface couplings. When no
/// Dirichlet face exists anywhere the first pressure dof of the top grid is
/// pinned to zero.
inline BlockSystem assemble_global(GridBucket& bucket, Scheme scheme) {
  BlockSystem sys;
  sys.dofs = assign_dofs(bucket, scheme);
  sys.rhs.assign(sys.dofs.total, 0.0);
  std::vector<Triplet> trip;
  std::vector<char> constrained(sys.dofs.total, 0);
  std::vector<double> cvalue(sys.dofs.total, 0.0);

  auto pressure_dof = [&](int node, int cell) {
    const DofBlock& b = sys.dofs.block_of_node(node);
    const int local = scheme == Scheme::Vem && bucket.grids[node].dim > 0
                          ? bucket.grids[node].num_faces + cell
                          : cell;
    return b.offset + local;
  };
  auto flux_dof = [&](int node, int face) {
    return sys.dofs.block_of_node(node).offset + face;  // VEM only
  };

  for (int d = bucket.ambient_dim; d >= 0; --d)
    for (int node : bucket.nodes_of_dim(d)) {
      const Grid& g = bucket.grids[node];
      const FlowData& data = bucket.data[node];
      const int off = sys.dofs.block_of_node(node).offset;
      if (scheme == Scheme::Tpfa) {
        TpfaGrid loc = tpfa_assemble(g, data, bucket.ambient_dim, &sys.warnings);
        for (const Triplet& t : loc.entries) trip.push_back({off + t.row, off + t.col, t.value});
        for (int c = 0; c < g.num_cells; ++c) sys.rhs[off + c] += loc.rhs[c];
      } else {
        VemGrid loc = vem_assemble(g, data, bucket.ambient_dim);
        for (const Triplet& t : loc.entries) trip.push_back({off + t.row, off + t.col, t.value});
        for (std::size_t i = 0; i < loc.rhs.size(); ++i) sys.rhs[off + i] += loc.rhs[i];
        for (const auto& [dof, value] : loc.constrained) {
          constrained[off + dof] = 1;
          cvalue[off + dof] = value;
        }
      }
    }

  for (InterfaceEdge& e : bucket.edges) {
    const Grid& high = bucket.grids[e.high];
    const Grid& low = bucket.grids[e.low];
    const FlowData& hdata = bucket.data[e.high];
    if (e.kappa.size() != static_cast<std::size_t>(low.num_cells))
      throw MissingKappa("edge between grids " + std::to_string(e.high) + " and " +
                         std::to_string(e.low) + " has no kappa assigned");
    e.trans_cache.assign(e.entries.size(), 0.0);
    for (std::size_t i = 0; i < e.entries.size(); ++i) {
      const auto& en = e.entries[i];
      const int hc = high.face_cells[en.face][0] >= 0 ? high.face_cells[en.face][0]
                                                      : high.face_cells[en.face][1];
      const double s = high.face_cells[en.face][0] >= 0 ? 1.0 : -1.0;
      if (scheme == Scheme::Tpfa) {
        const double t = tpfa_interface_transmissibility(high, hdata, e.kappa[en.cell], en.face,
                                                         bucket.ambient_dim);
        e.trans_cache[i] = t;
        const int ph = pressure_dof(e.high, hc);
        const int pl = pressure_dof(e.low, en.cell);
        trip.push_back({ph, ph, t});
        trip.push_back({pl, pl, t});
        trip.push_back({ph, pl, -t});
        trip.push_back({pl, ph, -t});
      } else {
        const int uf = flux_dof(e.high, en.face);
        const int pl = pressure_dof(e.low, en.cell);
        const double area = high.face_area[en.face];
        const double a_scale = detail::aperture_scale(hdata, hc, high.dim, bucket.ambient_dim);
        if (e.kappa[en.cell] <= 0.0) {
          constrained[uf] = 1;  // sealed wall: no interface flux
          cvalue[uf] = 0.0;
          continue;
        }
        trip.push_back({uf, uf, area / (e.kappa[en.cell] * a_scale)});
        trip.push_back({uf, pl, s * area});
        trip.push_back({pl, uf, s * area});
      }
    }
  }

  if (!has_dirichlet(bucket)) {
    const int pin = pressure_dof(bucket.top_grid(), 0);
    constrained[pin] = 1;
    cvalue[pin] = 0.0;
  }

  // eliminate constrained dofs, keeping the matrix symmetric
  std::vector<Triplet> kept;
  kept.reserve(trip.size());
  for (const Triplet& t : trip) {
    if (constrained[t.row]) continue;
    if (constrained[t.col]) {
      sys.rhs[t.row] -= t.value * cvalue[t.col];
      continue;
    }
    kept.push_back(t);
  }
  for (int dof = 0; dof < sys.dofs.total; ++dof)
    if (constrained[dof]) {
      kept.push_back({dof, dof, 1.0});
      sys.rhs[dof] = cvalue[dof];
    }
  sys.matrix = from_triplets(sys.dofs.total, sys.dofs.total, std::move(kept));
  return sys;
}

// ---------------------------------------------------------------------------
// Solve and flux reconstruction
// ---------------------------------------------------------------------------

struct FlowSolution {
  Scheme scheme = Scheme::Tpfa;
  std::vector<std::vector<double>> pressure;        // per grid, per cell
  std::vector<std::vector<double>> face_flux;       // per grid, per face: discharge along n_f
  std::vector<std::vector<double>> interface_flux;  // per edge, per entry: positive high -> low
  double residual = 0.0;
};

inline FlowSolution solve_flow(GridBucket& bucket, Scheme scheme) {
  BlockSystem sys = assemble_global(bucket, scheme);
  const std::vector<double> x = solve_direct(sys);

  FlowSolution sol;
  sol.scheme = scheme;
  sol.residual = relative_residual(sys.matrix, x, sys.rhs);

  sol.pressure.resize(bucket.grids.size());
  sol.face_flux.resize(bucket.grids.size());
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    const DofBlock& blk = sys.dofs.block_of_node(static_cast<int>(n));
    sol.pressure[n].resize(g.num_cells);
    const int cell0 = scheme == Scheme::Vem && g.dim > 0 ? g.num_faces : 0;
    for (int c = 0; c < g.num_cells; ++c) sol.pressure[n][c] = x[blk.offset + cell0 + c];
    sol.face_flux[n].assign(g.num_faces, 0.0);
  }

  // face discharge
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    if (g.dim == 0) continue;
    const FlowData& data = bucket.data[n];
    const DofBlock& blk = sys.dofs.block_of_node(static_cast<int>(n));
    if (scheme == Scheme::Vem) {
      for (int f = 0; f < g.num_faces; ++f)
        sol.face_flux[n][f] = x[blk.offset + f] * g.face_area[f];
      continue;
    }
    TpfaGrid cache = tpfa_assemble(g, data, bucket.ambient_dim);  // transmissibilities
    for (int f = 0; f < g.num_faces; ++f) {
      const int cp = g.face_cells[f][0];
      const int cm = g.face_cells[f][1];
      if (g.face_frac_side[f] != 0) continue;  // filled from the edge couplings below
      if (cp >= 0 && cm >= 0) {
        sol.face_flux[n][f] = cache.face_trans[f] * (sol.pressure[n][cp] - sol.pressure[n][cm]);
      } else {
        const int c = cp >= 0 ? cp : cm;
        const double s = cp >= 0 ? 1.0 : -1.0;
        if (data.bc_kind[f] == BcKind::Dirichlet)
          sol.face_flux[n][f] = s * cache.face_trans[f] * (sol.pressure[n][c] - data.bc_value[f]);
        else if (data.bc_kind[f] == BcKind::Neumann)
          sol.face_flux[n][f] = s * data.bc_value[f];
      }
    }
  }

  // interface fluxes (and the fracture-side face discharges they induce)
  sol.interface_flux.resize(bucket.edges.size());
  for (std::size_t ei = 0; ei < bucket.edges.size(); ++ei) {
    const InterfaceEdge& e = bucket.edges[ei];
    const Grid& high = bucket.grids[e.high];
    sol.interface_flux[ei].assign(e.entries.size(), 0.0);
    for (std::size_t i = 0; i < e.entries.size(); ++i) {
      const auto& en = e.entries[i];
      const double s = high.face_cells[en.face][0] >= 0 ? 1.0 : -1.0;
      const int hc = high.face_cells[en.face][0] >= 0 ? high.face_cells[en.face][0]
                                                      : high.face_cells[en.face][1];
      double lambda;
      if (scheme == Scheme::Vem) {
        lambda = s * sol.face_flux[e.high][en.face];
      } else {
        lambda = e.trans_cache[i] * (sol.pressure[e.high][hc] - sol.pressure[e.low][en.cell]);
        sol.face_flux[e.high][en.face] = s * lambda;
      }
      sol.interface_flux[ei][i] = lambda;
    }
  }
  return sol;
}

/// Per-cell conservation defects: | sum_f sigma q_f - sum lambda_in - f |E| a |.
inline std::vector<std::vector<double>> flux_residuals(const GridBucket& bucket,
                                                       const FlowSolution& sol) {
  std::vector<std::vector<double>> res(bucket.grids.size());
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    const FlowData& data = bucket.data[n];
    res[n].assign(g.num_cells, 0.0);
    for (int c = 0; c < g.num_cells; ++c)
      res[n][c] = -data.source[c] * g.cell_volume[c] *
                  detail::aperture_scale(data, c, g.dim, bucket.ambient_dim);
    for (int c = 0; c < g.num_cells; ++c)
      for (int k = g.cell_face_ptr[c]; k < g.cell_face_ptr[c + 1]; ++k)
        res[n][c] += g.cell_face_sign[k] * sol.face_flux[n][g.cell_face_idx[k]];
  }
  for (std::size_t ei = 0; ei < bucket.edges.size(); ++ei) {
    const InterfaceEdge& e = bucket.edges[ei];
    for (std::size_t i = 0; i < e.entries.size(); ++i)
      res[e.low][e.entries[i].cell] -= sol.interface_flux[ei][i];
  }
  for (auto& r : res)
    for (double& v : r) v = std::abs(v);
  return res;
}

struct BoundaryFlow {
  double inflow = 0.0;   // into the domain
  double outflow = 0.0;  // out of the domain
};

inline BoundaryFlow boundary_flow(const GridBucket& bucket, const FlowSolution& sol) {
  BoundaryFlow out;
  for (std::size_t n = 0; n < bucket.grids.size(); ++n) {
    const Grid& g = bucket.grids[n];
    for (int f = 0; f < g.num_faces; ++f) {
      const bool boundary = g.face_cells[f][0] == -1 || g.face_cells[f][1] == -1;
      if (!boundary || g.face_frac_side[f] != 0) continue;
      const double s = g.face_cells[f][0] >= 0 ? 1.0 : -1.0;
      const double q_out = s * sol.face_flux[n][f];
      (q_out >= 0.0 ? out.outflow : out.inflow) += std::abs(q_out);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Data-assignment helpers
// ---------------------------------------------------------------------------

/// Dirichlet pressure on every face tagged with the given box side
/// (2*axis + (1 if max side)), across all grids.
inline void set_dirichlet_on_side(GridBucket& bucket, int side, double value) {
  for (std::size_t n = 0; n < bucket.grids.size(); ++n)
    for (int f = 0; f < bucket.grids[n].num_faces; ++f)
      if (bucket.grids[n].face_boundary_side[f] == side) {
        bucket.data[n].bc_kind[f] = BcKind::Dirichlet;
        bucket.data[n].bc_value[f] = value;
      }
}

inline void set_neumann_on_side(GridBucket& bucket, int side, double outward_flux) {
  for (std::size_t n = 0; n < bucket.grids.size(); ++n)
    for (int f = 0; f < bucket.grids[n].num_faces; ++f)
      if (bucket.grids[n].face_boundary_side[f] == side) {
        bucket.data[n].bc_kind[f] = BcKind::Neumann;
        bucket.data[n].bc_value[f] = outward_flux;
      }
}

/// Dirichlet data p(x) evaluated at face centroids, on every tagged box-side
/// face of every grid.
inline void set_dirichlet_function(GridBucket& bucket,
                                   const std::function<double(const Vec3&)>& p) {
  for (std::size_t n = 0; n < bucket.grids.size(); ++n)
    for (int f = 0; f < bucket.grids[n].num_faces; ++f)
      if (bucket.grids[n].face_boundary_side[f] >= 0) {
        bucket.data[n].bc_kind[f] = BcKind::Dirichlet;
        bucket.data[n].bc_value[f] = p(bucket.grids[n].face_centroid[f]);
      }
}

/// Default interface law: kappa = 2 k_n / a of the low cell, with k_n the
/// low cell's (scalar) permeability.
inline void assign_default_kappa(GridBucket& bucket) {
  for (InterfaceEdge& e : bucket.edges) {
    const Grid& low = bucket.grids[e.low];
    const FlowData& d = bucket.data[e.low];
    e.kappa.resize(low.num_cells);
    for (int c = 0; c < low.num_cells; ++c)
      e.kappa[c] = kappa_from_data(d.permeability[c], d.aperture[c]);
  }
}

}  // namespace mdflow
