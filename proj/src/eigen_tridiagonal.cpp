// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
// eigenvalues, inverse iteration (pivoted tridiagonal LU) for the vectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "pdem/discrete.hpp"
#include "pdem/errors.hpp"

namespace pdem {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const TridiagonalOperator& t) {
  double emax = 1.0;
  for (double e : t.offdiag) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

std::size_t sturm_count_impl(const TridiagonalOperator& t, double sigma, double pivmin) {
  std::size_t count = 0;
  double d = t.diag[0] - sigma;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double e = t.offdiag[i - 1];
    d = (t.diag[i] - sigma) - e * e / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

// LU factorization of T - sigma I with partial pivoting (LAPACK gttrf layout).
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<std::size_t> ipiv;

  TridiagonalLU(const TridiagonalOperator& t, double sigma, double tiny) {
    const std::size_t n = t.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;
    dl = t.offdiag;
    du = t.offdiag;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    ipiv.resize(n);
    for (std::size_t i = 0; i < n; ++i) ipiv[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        ipiv[i] = i + 1;
      }
    }
    for (double& x : d) {
      if (x == 0.0) x = tiny;
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (ipiv[i] == i) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double bisect_eigenvalue(const TridiagonalOperator& t, std::size_t index, double lo, double hi, double pivmin) {
  // Invariant: count(lo) <= index < count(hi).
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
    if (sturm_count_impl(t, mid, pivmin) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::size_t sturm_count(const TridiagonalOperator& t, double sigma) {
  if (t.size() == 0) return 0;
  return sturm_count_impl(t, sigma, pivot_floor(t));
}

EigenSolution eigen_tridiagonal(const TridiagonalOperator& t, std::size_t k, const EigenOptions& options) {
  const std::size_t n = t.size();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidCount, fmt::format("requested {} of {} eigenpairs", k, n));
  if (t.offdiag.size() + 1 != n) throw Error(ErrorCode::LengthMismatch, "offdiagonal length must be n - 1");

  const double tnorm = std::max(1.0, t.norm_inf());
  const double pivmin = pivot_floor(t);

  // Gershgorin enclosure, padded so the counts at the ends are 0 and n.
  double glo = std::numeric_limits<double>::infinity();
  double ghi = -glo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(t.offdiag[i]);
    glo = std::min(glo, t.diag[i] - r);
    ghi = std::max(ghi, t.diag[i] + r);
  }
  const double pad = 2.0 * kEps * tnorm * static_cast<double>(n) + 2.0 * pivmin;
  glo -= pad;
  ghi += pad;

  EigenSolution sol;
  sol.eigenvalues.assign(k, 0.0);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(k)));
  if (workers == 1) {
    for (std::size_t i = 0; i < k; ++i) sol.eigenvalues[i] = bisect_eigenvalue(t, i, glo, ghi, pivmin);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < k; i += workers) sol.eigenvalues[i] = bisect_eigenvalue(t, i, glo, ghi, pivmin);
      });
    }
    for (auto& th : pool) th.join();
  }

  const double tiny = kEps * tnorm;
  const double residual_limit = 1e-10 * tnorm;
  sol.eigenvectors.reserve(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    const double lambda = sol.eigenvalues[idx];
    const TridiagonalLU lu(t, lambda, tiny);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Deterministic start vector with components along every eigenvector.
      v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1) + 0.3 * static_cast<double>(idx));
    }
    double resid = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < options.max_inverse_iterations; ++it) {
      lu.solve(v);
      for (const auto& prev : sol.eigenvectors) {
        double dot = 0.0, pp = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dot += prev[i] * v[i];
          pp += prev[i] * prev[i];
        }
        const double c = dot / pp;
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * prev[i];
      }
      const double nv = norm2(v);
      for (double& x : v) x /= nv;
      const auto tv = t.apply(v);
      resid = 0.0;
      for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(tv[i] - lambda * v[i]));
      if (it >= 1 && resid <= residual_limit) break;
    }
    if (!(resid <= residual_limit)) {
      throw Error(ErrorCode::ConvergenceFailure,
                  fmt::format("inverse iteration for eigenpair {} stalled at residual {:.3e}", idx, resid));
    }
    // Sign: positive at the rightmost significant entry.
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    for (std::size_t i = n; i-- > 0;) {
      if (std::abs(v[i]) > 1e-3 * vmax) {
        if (v[i] < 0.0) {
          for (double& x : v) x = -x;
        }
        break;
      }
    }
    const double scale = 1.0 / std::sqrt(options.quadrature_weight);
    for (double& x : v) x *= scale;
    sol.eigenvectors.push_back(std::move(v));
  }
  return sol;
}

}  // namespace pdem
