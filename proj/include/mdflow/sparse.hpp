#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "mdflow/core.hpp"

namespace mdflow {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Row-compressed sparse matrix. Column indices are sorted and unique per
/// row; explicit zeros are kept as stored entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double coeff(int r, int c) const {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      if (col_idx_[k] == c) return values_[k];
    return 0.0;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      double s = 0.0;
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
      y[r] = s;
    }
    return y;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// max |A - A^T| over all entries.
  double symmetry_gap() const {
    double gap = 0.0;
    SparseMatrix t = transposed();
    for (int r = 0; r < rows_; ++r) {
      int ka = row_ptr_[r], kb = t.row_ptr_[r];
      const int ea = row_ptr_[r + 1], eb = t.row_ptr_[r + 1];
      while (ka < ea || kb < eb) {
        const int ca = ka < ea ? col_idx_[ka] : cols_;
        const int cb = kb < eb ? t.col_idx_[kb] : cols_;
        if (ca == cb) {
          gap = std::max(gap, std::abs(values_[ka] - t.values_[kb]));
          ++ka; ++kb;
        } else if (ca < cb) {
          gap = std::max(gap, std::abs(values_[ka])); ++ka;
        } else {
          gap = std::max(gap, std::abs(t.values_[kb])); ++kb;
        }
      }
    }
    return gap;
  }

  SparseMatrix transposed() const {
    SparseMatrix t(cols_, rows_);
    t.col_idx_.resize(values_.size());
    t.values_.resize(values_.size());
    std::vector<int> count(cols_ + 1, 0);
    for (int c : col_idx_) ++count[c + 1];
    std::partial_sum(count.begin(), count.end(), count.begin());
    t.row_ptr_ = count;
    std::vector<int> next = count;
    for (int r = 0; r < rows_; ++r)
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        const int pos = next[col_idx_[k]]++;
        t.col_idx_[pos] = r;
        t.values_[pos] = values_[k];
      }
    return t;
  }

  friend SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Build a CSR matrix from (row, col, value) entries; duplicates are summed.
inline SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  for (const Triplet& t : entries)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw IndexOutOfRange("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                            ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col)
      sum += entries[j++].value;
    m.col_idx_.push_back(entries[i].col);
    m.values_.push_back(sum);
    ++m.row_ptr_[entries[i].row + 1];
    i = j;
  }
  std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());
  return m;
}

/// Matrix Market coordinate export (1-based indices, general real).
inline void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << " " << a.cols() << " " << a.nnz() << "\n";
  char buf[64];
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, a.col_idx()[k] + 1, a.values()[k]);
      out << buf;
    }
}

}  // namespace mdflow
