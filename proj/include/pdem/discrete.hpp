#pragma once

// Finite-difference oracle for the position-dependent-mass Hamiltonians:
// uniform grids with Dirichlet ends, conservative Sturm-Liouville assembly,
// von Roos orderings, and a bisection / inverse-iteration eigensolver.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pdem/core_model.hpp"
#include "pdem/sparse.hpp"

namespace pdem {

/// Interior nodes x_i = lo + (i+1) h, h = (hi - lo)/(n + 1). The wavefunction
/// is taken to vanish at lo and hi.
struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> points;

  /// Throws InvalidCount for n < 16 and OutOfDomain unless lo < hi.
  static Grid make(double lo, double hi, std::size_t n);

  double node(std::size_t i) const { return lo + static_cast<double>(i + 1) * h; }
  /// Midpoint j sits between node j-1 and node j (j = 0 .. n).
  double midpoint(std::size_t j) const { return lo + (static_cast<double>(j) + 0.5) * h; }
  /// Same endpoints with h halved (2n + 1 interior nodes).
  Grid refined() const { return make(lo, hi, 2 * n + 1); }
};

struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(std::span<const double> v) const;
  double norm_inf() const;
  SparseMatrix to_sparse() const;
};

struct EigenSolution {
  std::vector<double> eigenvalues;
  /// eigenvectors[k] belongs to eigenvalues[k].
  std::vector<std::vector<double>> eigenvectors;
};

struct EigenOptions {
  /// Weight w in the normalization w * sum v_i^2 = 1 (grid spacing for dx).
  double quadrature_weight = 1.0;
  /// Bisection brackets are split across this many threads; output does not
  /// depend on the value.
  unsigned workers = 1;
  std::size_t max_inverse_iterations = 8;
};

/// tail_tolerance in (0, 1e-6]. Compact domains use the singular endpoints;
/// unbounded ones use +-(smallest x with ground factor < tail_tolerance).
Grid build_grid(const ShapeInvariantFamily& family, std::size_t n, double tail_tolerance = 1e-12);

using PotentialFn = std::function<double(double)>;

/// -(p u')' + V u with p = 1/(2m) sampled at midpoints; V is the full potential.
TridiagonalOperator assemble_sturm_liouville(const ShapeInvariantFamily& family, const Grid& grid);
/// Same kinetic part with an arbitrary potential (used for the partner Hamiltonians).
TridiagonalOperator assemble_sturm_liouville(const ShapeInvariantFamily& family, const Grid& grid,
                                             const PotentialFn& potential);

/// -(1/4)(m^a D m^b D m^c + m^c D m^b D m^a) + V composed from staggered
/// differences; the result is symmetrized and the pre-symmetrization
/// ||M - M^T||_inf is written to *asymmetry when given.
TridiagonalOperator assemble_von_roos(const ShapeInvariantFamily& family, const VonRoosOrdering& ordering,
                                      const Grid& grid, double* asymmetry = nullptr);

/// Number of eigenvalues strictly below sigma.
std::size_t sturm_count(const TridiagonalOperator& t, double sigma);

/// The k smallest eigenpairs.
EigenSolution eigen_tridiagonal(const TridiagonalOperator& t, std::size_t k,
                                const EigenOptions& options = {});

/// Assemble the symmetric-ordering Hamiltonian on `grid` and solve for k pairs.
EigenSolution solve_spectrum(const ShapeInvariantFamily& family, const Grid& grid, std::size_t k,
                             unsigned workers = 1);

/// Trapezoid rule with zero endpoint values: h * sum f_i g_i.
double inner_product(std::span<const double> f, std::span<const double> g, const Grid& grid);

/// Sign changes, ignoring entries with |v| <= rel_threshold * max|v|.
std::size_t count_sign_changes(std::span<const double> v, double rel_threshold = 1e-8);

}  // namespace pdem
