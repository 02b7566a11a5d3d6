#pragma once

// Discrete ladder operators and numerical certificates for the
// supersymmetric structure of each family: factorization, annihilation of the
// ground state, partner intertwining, superalgebra and shape invariance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdem/core_model.hpp"
#include "pdem/discrete.hpp"
#include "pdem/sparse.hpp"

namespace pdem {

/// A = diag(1/sqrt(2m)) D + diag(W) with D the centered difference (zero
/// outside the grid); Adag is its adjoint under the uniform quadrature, i.e. A^T.
struct LadderMatrices {
  double alpha = 0.0;
  SparseMatrix A;
  SparseMatrix Adag;
};

LadderMatrices build_ladder(const ShapeInvariantFamily& family, double alpha_n, const Grid& grid);

/// max |<A f, g> - <f, Adag g>| / (|f| |g|) over a few seeded random pairs.
double adjointness_defect(const LadderMatrices& ladder, const Grid& grid, std::uint64_t seed = 7);

/// Residual norms exclude this many nodes at each end of the grid.
inline constexpr std::size_t kBoundaryExclusion = 2;
/// Operator identities are tested on at most this many eigenfunctions.
inline constexpr std::size_t kTestStates = 5;

double verify_annihilation(const ShapeInvariantFamily& family, const Grid& grid);
/// max over test states of |(Adag A - (H - E0)) v| / |v|.
double verify_factorization(const ShapeInvariantFamily& family, const Grid& grid);

struct IntertwiningResult {
  /// |(A H- - H+ A) v| / |v| on eigenfunctions of H-.
  double minus = 0.0;
  /// |(Adag H+ - H- Adag) v| / |v| on eigenfunctions of H+.
  double plus = 0.0;
  /// min over n of cos(A phi_{n+1}(alpha_1), phi_n(alpha_2)); 1 when no pair exists.
  double min_cosine = 1.0;
};

IntertwiningResult verify_intertwining(const ShapeInvariantFamily& family, const Grid& grid);

struct SuperalgebraResult {
  /// max |entry| of {Q,Q} and {Q+,Q+}.
  double nilpotency = 0.0;
  /// max |entry| of {Q,Q+} - blockdiag(Adag A, A Adag).
  double anticommutator = 0.0;
};

SuperalgebraResult verify_superalgebra(const ShapeInvariantFamily& family, const Grid& grid);

/// |A(a1) Adag(a1) - Adag(a2) A(a2) - R(a1)| on eigenfunctions of H-(a2).
double verify_shift_identity(const ShapeInvariantFamily& family, const Grid& grid);

/// Defaults leave about 4x headroom at grid_n = 4000 for the moderately
/// deformed families (residuals there scale as h^2).
struct ResidualTolerances {
  double annihilation = 5e-4;
  double factorization = 5e-3;
  double intertwining = 5e-3;
  double superalgebra = 0.0;
  double shift_identity = 5e-3;
  /// Bound on 1 - cosine for the state map.
  double state_map = 1e-3;
};

struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::size_t grid_n = 0;
  ProfileKind kind = ProfileKind::Constant;
  double alpha = 0.0;
  double lambda = 0.0;

  bool pass() const { return value <= tolerance; }
};

struct ResidualReport {
  ProfileKind kind = ProfileKind::Constant;
  double alpha = 0.0;
  double lambda = 0.0;
  std::size_t grid_n = 0;
  std::vector<ResidualEntry> entries;

  bool all_pass() const;
  std::optional<ResidualEntry> find(const std::string& name) const;
};

/// Entries: annihilation, factorization, intertwine_minus, intertwine_plus,
/// state_map, superalgebra_offdiag, superalgebra_anticommutator, shift_identity.
ResidualReport run_verification(const ShapeInvariantFamily& family, const Grid& grid,
                                const ResidualTolerances& tolerances = {});

/// Reports on grid, grid.refined(), ... (levels grids in total).
std::vector<ResidualReport> refinement_study(const ShapeInvariantFamily& family, const Grid& grid,
                                             std::size_t levels, const ResidualTolerances& tolerances = {});

}  // namespace pdem
