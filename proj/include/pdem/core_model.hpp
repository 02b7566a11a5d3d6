#pragma once

// Position-dependent-mass oscillator families and their shape-invariant
// algebra: superpotentials, partner potentials, remainders and spectra.
//
// Every family is quantized with the symmetric (Sturm-Liouville) ordering
//
//   H = -(d/dx) p(x) (d/dx) + V(x),   p = 1/(2m),   V = m(x) alpha^2 x^2 / 2.
//
// For all kinds p(x) = c (1 + kappa x^2) with
//
//   Case1     m = 1/(1 + lambda x^2)      c = 1/2   kappa = lambda
//   Case2     m = (1 + x^2/lambda)^-1     c = 1/2   kappa = 1/lambda
//   Case3     m = 2/(1 - (lambda x)^2)    c = 1/4   kappa = -lambda^2
//   Constant  m = 1                       c = 1/2   kappa = 0

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace pdem {

enum class ProfileKind { Case1, Case2, Case3, Constant };

std::string_view to_string(ProfileKind kind);
std::optional<ProfileKind> parse_profile_kind(std::string_view name);

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return lo < x && x < hi; }
  bool bounded() const;
};

class MassProfile {
 public:
  /// Throws InvalidLambda for a non-finite lambda or Case2 with lambda == 0.
  static MassProfile make(ProfileKind kind, double lambda);

  ProfileKind kind() const { return kind_; }
  /// Deformation parameter as supplied; always 0 for Constant.
  double lambda() const { return lambda_; }
  const Interval& domain() const { return domain_; }

  /// p(x) = 1/(2m(x)) without a domain check.
  double kinetic_coefficient(double x) const { return c_ * (1.0 + kappa_ * x * x); }
  double c() const { return c_; }
  double kappa() const { return kappa_; }

  void require_inside(double x) const;

 private:
  MassProfile(ProfileKind kind, double lambda, Interval domain, double c, double kappa)
      : kind_(kind), lambda_(lambda), domain_(domain), c_(c), kappa_(kappa) {}

  ProfileKind kind_;
  double lambda_;
  Interval domain_;
  double c_;
  double kappa_;
};

/// Translational shape-invariant family: alpha_{n+1} = alpha_n + eta and
/// R(alpha_n) = alpha_{n+1}.
class ShapeInvariantFamily {
 public:
  ShapeInvariantFamily(MassProfile profile, double alpha0);

  const MassProfile& profile() const { return profile_; }
  ProfileKind kind() const { return profile_.kind(); }
  double lambda() const { return profile_.lambda(); }
  double alpha0() const { return alpha0_; }
  double eta() const { return eta_; }
  bool remainder_is_next_alpha() const { return true; }

  /// alpha_n = alpha0 + n eta, n counted from 0.
  double alpha(std::size_t n) const { return alpha0_ + static_cast<double>(n) * eta_; }

  /// The same mass profile with oscillator strength alpha(steps).
  ShapeInvariantFamily shifted(std::size_t steps) const;

 private:
  MassProfile profile_;
  double alpha0_;
  double eta_;
};

struct VonRoosOrdering {
  double a;
  double b;
  double c;

  /// Throws ConstraintViolated unless a + b + c == -1 (to 1e-12).
  static VonRoosOrdering make(double a, double b, double c);
  static VonRoosOrdering symmetric() { return {0.0, -1.0, 0.0}; }
};

using BoundCount = std::optional<std::size_t>;  // nullopt: unbounded

struct SpectrumEntry {
  std::size_t n;
  double energy;
};

struct SpectrumTable {
  double ground_energy;
  std::vector<SpectrumEntry> entries;
  BoundCount bound_count;
};

ShapeInvariantFamily make_family(ProfileKind kind, double alpha, double lambda);

double mass_at(const MassProfile& profile, double x);

double superpotential_at(const ShapeInvariantFamily& family, double alpha_n, double x);
double potential_minus(const ShapeInvariantFamily& family, double alpha_n, double x);
double potential_plus(const ShapeInvariantFamily& family, double alpha_n, double x);
/// Full potential V(x) = m(x) alpha0^2 x^2 / 2 of the original Hamiltonian.
double potential(const ShapeInvariantFamily& family, double x);

double remainder(const ShapeInvariantFamily& family, double alpha_n);

double ground_energy(const ShapeInvariantFamily& family);
/// Closed-form eigenvalue; throws NotABoundState past the cutoff.
double energy(const ShapeInvariantFamily& family, std::size_t n);
/// E_0 + sum_{i=1..n} R(alpha_i); same cutoff rule as energy().
double energy_via_recursion(const ShapeInvariantFamily& family, std::size_t n);
/// alpha [ (n + 1/2) - q n (n+1)/2 ] with q = deformation_q(family).
double energy_unified(double alpha, double q, std::size_t n);

BoundCount bound_state_count(const ShapeInvariantFamily& family);
bool is_bound(const ShapeInvariantFamily& family, std::size_t n);

SpectrumTable spectrum(const ShapeInvariantFamily& family, std::size_t n_max);

double ground_state_unnormalized(const ShapeInvariantFamily& family, double x);

/// Unified deformation parameter q: lambda/alpha (Case1), 1/(alpha lambda)
/// (Case2), -lambda^2/(2 alpha) (Case3), 0 (Constant).
double deformation_q(const ShapeInvariantFamily& family);

/// Dimensionless coordinate scale: xi = coordinate_scale * x. sqrt(alpha) for
/// Case1/Case2/Constant, sqrt(2 alpha) for Case3.
double coordinate_scale(const ShapeInvariantFamily& family);

}  // namespace pdem
