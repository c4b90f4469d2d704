#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "mdflow/block_system.hpp"
#include "mdflow/core.hpp"
#include "mdflow/sparse.hpp"

namespace mdflow {

/// Direct sparse LU with partial pivoting (COLAMD column ordering).
/// The factorization is kept so repeated right-hand sides reuse it; every
/// solve does one iterative-refinement pass.
class SparseLU {
 public:
  void factor(const SparseMatrix& a) {
    if (a.rows() != a.cols()) throw SingularSystem("matrix not square");
    rows_ = a.rows();
    ea_.resize(a.rows(), a.cols());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(a.nnz());
    for (int r = 0; r < a.rows(); ++r)
      for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
        trip.emplace_back(r, a.col_idx()[k], a.values()[k]);
    ea_.setFromTriplets(trip.begin(), trip.end());
    ea_.makeCompressed();
    lu_ = std::make_unique<Factorization>();
    lu_->analyzePattern(ea_);
    lu_->factorize(ea_);
    if (lu_->info() != Eigen::Success)
      throw SingularSystem("LU factorization failed: " + lu_->lastErrorMessage());
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    if (!lu_) throw SingularSystem("solve before factor");
    if (static_cast<int>(b.size()) != rows_) throw IndexOutOfRange("rhs size mismatch");
    Eigen::VectorXd eb = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
    Eigen::VectorXd x = lu_->solve(eb);
    // one refinement pass tightens the residual to near machine precision
    Eigen::VectorXd r = eb - ea_ * x;
    x += lu_->solve(r);
    if (!x.allFinite()) throw SingularSystem("non-finite solution (zero pivot)");
    return std::vector<double>(x.data(), x.data() + x.size());
  }

 private:
  using Factorization = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;
  Eigen::SparseMatrix<double> ea_;
  std::unique_ptr<Factorization> lu_;
  int rows_ = 0;
};

inline std::vector<double> solve_direct(const SparseMatrix& a, const std::vector<double>& b) {
  SparseLU lu;
  lu.factor(a);
  return lu.solve(b);
}

inline std::vector<double> solve_direct(const BlockSystem& system) {
  return solve_direct(system.matrix, system.rhs);
}

/// ||Ax - b|| / ||b|| (2-norms); ||b||=0 falls back to absolute norm.
inline double relative_residual(const SparseMatrix& a, const std::vector<double>& x,
                                const std::vector<double>& b) {
  const std::vector<double> ax = a.multiply(x);
  double rn = 0.0, bn = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rn += (ax[i] - b[i]) * (ax[i] - b[i]);
    bn += b[i] * b[i];
  }
  rn = std::sqrt(rn);
  bn = std::sqrt(bn);
  return bn > 0.0 ? rn / bn : rn;
}

}  // namespace mdflow
