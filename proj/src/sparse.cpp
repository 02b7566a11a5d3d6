#include "pdem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pdem {

namespace {

std::vector<SparseMatrix::Entry> merge(const std::vector<SparseMatrix::Entry>& x,
                                       const std::vector<SparseMatrix::Entry>& y, double sign) {
  std::vector<SparseMatrix::Entry> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, sign * y[j].second);
      ++j;
    } else {
      out.emplace_back(x[i].first, x[i].second + sign * y[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, 1.0);
  return m;
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  SparseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.rows_[i].emplace_back(i, d[i]);
  return m;
}

void SparseMatrix::add(std::size_t i, std::size_t j, double v) {
  if (i >= rows() || j >= cols_) throw std::out_of_range("SparseMatrix::add index");
  auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != r.end() && it->first == j) {
    it->second += v;
  } else {
    r.insert(it, {j, v});
  }
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  return (it != r.end() && it->first == j) ? it->second : 0.0;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(i, v);
  }
  return t;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (auto& r : m.rows_) {
    for (auto& e : r) e.second *= s;
  }
  return m;
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply size mismatch");
  std::vector<double> y(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    double acc = 0.0;
    for (const auto& [j, v] : rows_[i]) acc += v * x[j];
    y[i] = acc;
  }
  return y;
}

std::size_t SparseMatrix::bandwidth() const {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < rows(); ++i) {
    for (const auto& e : rows_[i]) bw = std::max(bw, e.first > i ? e.first - i : i - e.first);
  }
  return bw;
}

double SparseMatrix::norm_inf() const {
  double best = 0.0;
  for (const auto& r : rows_) {
    double s = 0.0;
    for (const auto& e : r) s += std::abs(e.second);
    best = std::max(best, s);
  }
  return best;
}

double SparseMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& r : rows_) {
    for (const auto& e : r) best = std::max(best, std::abs(e.second));
  }
  return best;
}

void SparseMatrix::insert_block(const SparseMatrix& block, std::size_t row0, std::size_t col0) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (const auto& [j, v] : block.rows_[i]) add(row0 + i, col0 + j, v);
  }
}

SparseMatrix SparseMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                 std::size_t ncols) const {
  SparseMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (const auto& [j, v] : rows_.at(row0 + i)) {
      if (j >= col0 && j < col0 + ncols) b.rows_[i].emplace_back(j - col0, v);
    }
  }
  return b;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix product shape mismatch");
  SparseMatrix c(a.rows(), b.cols());
  std::map<std::size_t, double> acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    acc.clear();
    for (const auto& [k, aik] : a.row(i)) {
      for (const auto& [j, bkj] : b.row(k)) acc[j] += aik * bkj;
    }
    auto& out = c.rows_[i];
    out.assign(acc.begin(), acc.end());
  }
  return c;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("SparseMatrix sum shape mismatch");
  }
  SparseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) c.rows_[i] = merge(a.rows_[i], b.rows_[i], 1.0);
  return c;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("SparseMatrix difference shape mismatch");
  }
  SparseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) c.rows_[i] = merge(a.rows_[i], b.rows_[i], -1.0);
  return c;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto diff = merge(a.rows_[i], b.rows_[i], -1.0);
    for (const auto& e : diff) {
      if (e.second != 0.0) return false;
    }
  }
  return true;
}

}  // namespace pdem
