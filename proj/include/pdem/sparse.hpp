#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pdem {

/// Row-compressed real matrix. Entries within a row are kept sorted by column,
/// and products accumulate over the inner index in ascending order so that two
/// products with the same nonzero pattern round identically.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, double>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }

  /// Adds v to entry (i, j). Explicit zeros are kept.
  void add(std::size_t i, std::size_t j, double v);
  double at(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double s) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Largest |i - j| over stored entries.
  std::size_t bandwidth() const;
  /// max_i sum_j |a_ij|
  double norm_inf() const;
  double max_abs() const;

  /// Place `block` with its (0,0) entry at (row0, col0).
  void insert_block(const SparseMatrix& block, std::size_t row0, std::size_t col0);
  SparseMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);

  /// Exact entrywise equality; absent entries compare as 0.
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

}  // namespace pdem
