#include "pdem/susy_verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pdem/polyfam.hpp"

namespace pdem {

namespace {

// Centered first difference, zero outside the grid.
SparseMatrix central_difference(const Grid& grid) {
  const std::size_t n = grid.n;
  const double c = 0.5 / grid.h;
  SparseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) d.add(i, i - 1, -c);
    if (i + 1 < n) d.add(i, i + 1, c);
  }
  return d;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double interior_norm(std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = kBoundaryExclusion; i + kBoundaryExclusion < v.size(); ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

std::vector<double> subtract(std::vector<double> a, std::span<const double> b, double scale = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= scale * b[i];
  return a;
}

std::size_t test_state_count(const ShapeInvariantFamily& family) {
  const BoundCount count = bound_state_count(family);
  return count ? std::min(kTestStates, *count) : kTestStates;
}

std::vector<std::vector<double>> test_states(const ShapeInvariantFamily& family, const Grid& grid) {
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < test_state_count(family); ++k) out.push_back(poly::eigenfunction_samples(family, k, grid));
  return out;
}

TridiagonalOperator partner(const ShapeInvariantFamily& family, double alpha_n, const Grid& grid, bool plus) {
  return assemble_sturm_liouville(family, grid, [&](double x) {
    return plus ? potential_plus(family, alpha_n, x) : potential_minus(family, alpha_n, x);
  });
}

}  // namespace

LadderMatrices build_ladder(const ShapeInvariantFamily& family, double alpha_n, const Grid& grid) {
  const auto& prof = family.profile();
  std::vector<double> s(grid.n), w(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.points[i];
    prof.require_inside(x);
    s[i] = std::sqrt(prof.kinetic_coefficient(x));
    w[i] = superpotential_at(family, alpha_n, x);
  }
  LadderMatrices l;
  l.alpha = alpha_n;
  l.A = SparseMatrix::diagonal(s) * central_difference(grid) + SparseMatrix::diagonal(w);
  l.Adag = l.A.transpose();
  return l;
}

double adjointness_defect(const LadderMatrices& ladder, const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> f(grid.n), g(grid.n);
    for (auto& x : f) x = dist(rng);
    for (auto& x : g) x = dist(rng);
    const double lhs = inner_product(ladder.A.apply(f), g, grid);
    const double rhs = inner_product(f, ladder.Adag.apply(g), grid);
    const double scale = std::sqrt(inner_product(f, f, grid) * inner_product(g, g, grid)) * ladder.A.norm_inf();
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double verify_annihilation(const ShapeInvariantFamily& family, const Grid& grid) {
  const auto ladder = build_ladder(family, family.alpha0(), grid);
  const auto phi0 = poly::eigenfunction_samples(family, 0, grid);
  return interior_norm(ladder.A.apply(phi0)) / norm(phi0);
}

double verify_factorization(const ShapeInvariantFamily& family, const Grid& grid) {
  const auto ladder = build_ladder(family, family.alpha0(), grid);
  const auto h = assemble_sturm_liouville(family, grid);
  const double e0 = ground_energy(family);
  double worst = 0.0;
  for (const auto& v : test_states(family, grid)) {
    const auto lhs = ladder.Adag.apply(ladder.A.apply(v));
    const auto rhs = subtract(h.apply(v), v, e0);
    worst = std::max(worst, interior_norm(subtract(lhs, rhs)) / norm(v));
  }
  return worst;
}

IntertwiningResult verify_intertwining(const ShapeInvariantFamily& family, const Grid& grid) {
  const double a1 = family.alpha0();
  const auto ladder = build_ladder(family, a1, grid);
  const auto h_minus = partner(family, a1, grid, false);
  const auto h_plus = partner(family, a1, grid, true);
  const ShapeInvariantFamily next = family.shifted(1);

  IntertwiningResult r;
  for (const auto& v : test_states(family, grid)) {
    const auto lhs = ladder.A.apply(h_minus.apply(v));
    const auto rhs = h_plus.apply(ladder.A.apply(v));
    r.minus = std::max(r.minus, interior_norm(subtract(lhs, rhs)) / norm(v));
  }
  const auto next_states = test_states(next, grid);
  for (const auto& v : next_states) {
    const auto lhs = ladder.Adag.apply(h_plus.apply(v));
    const auto rhs = h_minus.apply(ladder.Adag.apply(v));
    r.plus = std::max(r.plus, interior_norm(subtract(lhs, rhs)) / norm(v));
  }
  // A phi_{n+1}(alpha_1) is parallel to phi_n(alpha_2).
  const std::size_t upper = test_state_count(family);
  for (std::size_t n = 0; n + 1 < upper && n < next_states.size(); ++n) {
    const auto mapped = ladder.A.apply(poly::eigenfunction_samples(family, n + 1, grid));
    const double c = inner_product(mapped, next_states[n], grid) /
                     std::sqrt(inner_product(mapped, mapped, grid) * inner_product(next_states[n], next_states[n], grid));
    r.min_cosine = std::min(r.min_cosine, std::abs(c));
  }
  return r;
}

SuperalgebraResult verify_superalgebra(const ShapeInvariantFamily& family, const Grid& grid) {
  const auto ladder = build_ladder(family, family.alpha0(), grid);
  const std::size_t n = grid.n;
  SparseMatrix q(2 * n, 2 * n), qdag(2 * n, 2 * n);
  q.insert_block(ladder.A, n, 0);
  qdag.insert_block(ladder.Adag, 0, n);

  SuperalgebraResult r;
  r.nilpotency = std::max((q * q + q * q).max_abs(), (qdag * qdag + qdag * qdag).max_abs());
  const SparseMatrix anti = q * qdag + qdag * q;
  SparseMatrix expected(2 * n, 2 * n);
  expected.insert_block(ladder.Adag * ladder.A, 0, 0);
  expected.insert_block(ladder.A * ladder.Adag, n, n);
  r.anticommutator = anti == expected ? 0.0 : (anti - expected).max_abs();
  return r;
}

double verify_shift_identity(const ShapeInvariantFamily& family, const Grid& grid) {
  const double a1 = family.alpha0();
  const ShapeInvariantFamily next = family.shifted(1);
  const double a2 = next.alpha0();
  const auto l1 = build_ladder(family, a1, grid);
  const auto l2 = build_ladder(family, a2, grid);
  const double r1 = remainder(family, a1);
  double worst = 0.0;
  for (const auto& v : test_states(next, grid)) {
    const auto hp = l1.A.apply(l1.Adag.apply(v));
    const auto hm = l2.Adag.apply(l2.A.apply(v));
    worst = std::max(worst, interior_norm(subtract(subtract(hp, hm), v, r1)) / norm(v));
  }
  return worst;
}

bool ResidualReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) { return e.pass(); });
}

std::optional<ResidualEntry> ResidualReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  return std::nullopt;
}

ResidualReport run_verification(const ShapeInvariantFamily& family, const Grid& grid,
                                const ResidualTolerances& tol) {
  ResidualReport rep;
  rep.kind = family.kind();
  rep.alpha = family.alpha0();
  rep.lambda = family.lambda();
  rep.grid_n = grid.n;
  auto add = [&](const char* name, double value, double tolerance) {
    rep.entries.push_back({name, value, tolerance, grid.n, rep.kind, rep.alpha, rep.lambda});
  };
  add("annihilation", verify_annihilation(family, grid), tol.annihilation);
  add("factorization", verify_factorization(family, grid), tol.factorization);
  const auto tw = verify_intertwining(family, grid);
  add("intertwine_minus", tw.minus, tol.intertwining);
  add("intertwine_plus", tw.plus, tol.intertwining);
  add("state_map", 1.0 - tw.min_cosine, tol.state_map);
  const auto sa = verify_superalgebra(family, grid);
  add("superalgebra_offdiag", sa.nilpotency, tol.superalgebra);
  add("superalgebra_anticommutator", sa.anticommutator, tol.superalgebra);
  add("shift_identity", verify_shift_identity(family, grid), tol.shift_identity);
  return rep;
}

std::vector<ResidualReport> refinement_study(const ShapeInvariantFamily& family, const Grid& grid,
                                             std::size_t levels, const ResidualTolerances& tolerances) {
  std::vector<ResidualReport> out;
  Grid g = grid;
  for (std::size_t k = 0; k < levels; ++k) {
    out.push_back(run_verification(family, g, tolerances));
    if (k + 1 < levels) g = g.refined();
  }
  return out;
}

}  // namespace pdem
