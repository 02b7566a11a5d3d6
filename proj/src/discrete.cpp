#include "pdem/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pdem/errors.hpp"

namespace pdem {

Grid Grid::make(double lo, double hi, std::size_t n) {
  if (n < 16) throw Error(ErrorCode::InvalidCount, fmt::format("grid needs n >= 16, got {}", n));
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("grid endpoints ({}, {}) are not an interval", lo, hi));
  }
  Grid g;
  g.lo = lo;
  g.hi = hi;
  g.n = n;
  g.h = (hi - lo) / static_cast<double>(n + 1);
  g.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.points[i] = g.node(i);
  return g;
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
  const std::size_t n = size();
  if (v.size() != n) throw Error(ErrorCode::LengthMismatch, "tridiagonal apply");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * v[i];
    if (i > 0) acc += offdiag[i - 1] * v[i - 1];
    if (i + 1 < n) acc += offdiag[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

double TridiagonalOperator::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = std::abs(diag[i]);
    if (i > 0) s += std::abs(offdiag[i - 1]);
    if (i + 1 < size()) s += std::abs(offdiag[i]);
    best = std::max(best, s);
  }
  return best;
}

SparseMatrix TridiagonalOperator::to_sparse() const {
  SparseMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (i > 0) m.add(i, i - 1, offdiag[i - 1]);
    m.add(i, i, diag[i]);
    if (i + 1 < size()) m.add(i, i + 1, offdiag[i]);
  }
  return m;
}

Grid build_grid(const ShapeInvariantFamily& family, std::size_t n, double tail_tolerance) {
  if (!(tail_tolerance > 0.0 && tail_tolerance <= 1e-6)) {
    throw std::invalid_argument(fmt::format("tail tolerance {} not in (0, 1e-6]", tail_tolerance));
  }
  if (n < 16) throw Error(ErrorCode::InvalidCount, fmt::format("grid needs n >= 16, got {}", n));
  const Interval& dom = family.profile().domain();
  if (dom.bounded()) return Grid::make(dom.lo, dom.hi, n);

  // The ground factor decreases monotonically on x > 0.
  auto below = [&](double x) { return ground_state_unnormalized(family, x) < tail_tolerance; };
  double lo = 0.0, hi = 1.0;
  while (!below(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::OutOfDomain, "ground state does not decay to the tail tolerance");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? hi : lo) = mid;
  }
  return Grid::make(-hi, hi, n);
}

TridiagonalOperator assemble_sturm_liouville(const ShapeInvariantFamily& family, const Grid& grid) {
  return assemble_sturm_liouville(family, grid, [&](double x) { return potential(family, x); });
}

TridiagonalOperator assemble_sturm_liouville(const ShapeInvariantFamily& family, const Grid& grid,
                                             const PotentialFn& potential_fn) {
  const auto& prof = family.profile();
  const std::size_t n = grid.n;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<double> p_mid(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double x = grid.midpoint(j);
    prof.require_inside(x);
    p_mid[j] = prof.kinetic_coefficient(x);
  }
  TridiagonalOperator t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = (p_mid[i] + p_mid[i + 1]) * inv_h2 + potential_fn(grid.points[i]);
    if (i + 1 < n) t.offdiag[i] = -p_mid[i + 1] * inv_h2;
  }
  return t;
}

namespace {

// Forward difference from nodes to midpoints, (n+1) x n, zero outside.
SparseMatrix node_to_midpoint_difference(const Grid& grid) {
  const std::size_t n = grid.n;
  const double inv_h = 1.0 / grid.h;
  SparseMatrix d(n + 1, n);
  for (std::size_t j = 0; j <= n; ++j) {
    if (j >= 1) d.add(j, j - 1, -inv_h);
    if (j < n) d.add(j, j, inv_h);
  }
  return d;
}

}  // namespace

TridiagonalOperator assemble_von_roos(const ShapeInvariantFamily& family, const VonRoosOrdering& ordering,
                                      const Grid& grid, double* asymmetry) {
  (void)VonRoosOrdering::make(ordering.a, ordering.b, ordering.c);
  const auto& prof = family.profile();
  const std::size_t n = grid.n;

  auto mass_powers_at_nodes = [&](double power) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(mass_at(prof, grid.points[i]), power);
    return SparseMatrix::diagonal(v);
  };
  std::vector<double> mb(n + 1);
  for (std::size_t j = 0; j <= n; ++j) mb[j] = std::pow(mass_at(prof, grid.midpoint(j)), ordering.b);

  const SparseMatrix d_fwd = node_to_midpoint_difference(grid);
  const SparseMatrix d_back = d_fwd.transpose().scaled(-1.0);  // midpoints -> nodes
  const SparseMatrix inner = d_back * SparseMatrix::diagonal(mb) * d_fwd;
  const SparseMatrix ma = mass_powers_at_nodes(ordering.a);
  const SparseMatrix mc = mass_powers_at_nodes(ordering.c);

  const SparseMatrix kinetic = (ma * inner * mc + mc * inner * ma).scaled(-0.25);
  const SparseMatrix kinetic_t = kinetic.transpose();
  if (asymmetry) *asymmetry = (kinetic - kinetic_t).norm_inf();
  const SparseMatrix sym = (kinetic + kinetic_t).scaled(0.5);
  if (sym.bandwidth() > 1) throw std::logic_error("von Roos composition is not tridiagonal");

  TridiagonalOperator t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = sym.at(i, i) + potential(family, grid.points[i]);
    if (i + 1 < n) t.offdiag[i] = sym.at(i, i + 1);
  }
  return t;
}

EigenSolution solve_spectrum(const ShapeInvariantFamily& family, const Grid& grid, std::size_t k,
                             unsigned workers) {
  EigenOptions opts;
  opts.quadrature_weight = grid.h;
  opts.workers = workers;
  return eigen_tridiagonal(assemble_sturm_liouville(family, grid), k, opts);
}

double inner_product(std::span<const double> f, std::span<const double> g, const Grid& grid) {
  if (f.size() != g.size() || f.size() != grid.n) {
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("inner product of lengths {} and {} on a {}-node grid", f.size(), g.size(), grid.n));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i];
  return grid.h * acc;
}

std::size_t count_sign_changes(std::span<const double> v, double rel_threshold) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = rel_threshold * vmax;
  std::size_t changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace pdem
