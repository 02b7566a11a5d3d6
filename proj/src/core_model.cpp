#include "pdem/core_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "pdem/errors.hpp"

namespace pdem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nn1(std::size_t n) {
  const auto d = static_cast<double>(n);
  return d * (d + 1.0);
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Case1: return "case1";
    case ProfileKind::Case2: return "case2";
    case ProfileKind::Case3: return "case3";
    case ProfileKind::Constant: return "constant";
  }
  return "unknown";
}

std::optional<ProfileKind> parse_profile_kind(std::string_view name) {
  if (name == "case1") return ProfileKind::Case1;
  if (name == "case2") return ProfileKind::Case2;
  if (name == "case3") return ProfileKind::Case3;
  if (name == "constant") return ProfileKind::Constant;
  return std::nullopt;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

MassProfile MassProfile::make(ProfileKind kind, double lambda) {
  if (!std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidLambda, "lambda must be finite");
  }
  const Interval line{-kInf, kInf};
  switch (kind) {
    case ProfileKind::Case1: {
      if (lambda < 0.0) {
        const double edge = 1.0 / std::sqrt(-lambda);
        return {kind, lambda, {-edge, edge}, 0.5, lambda};
      }
      return {kind, lambda, line, 0.5, lambda};
    }
    case ProfileKind::Case2: {
      if (lambda == 0.0) {
        throw Error(ErrorCode::InvalidLambda,
                    "case2 mass (1 + x^2/lambda)^-1 is undefined at lambda = 0");
      }
      if (lambda < 0.0) {
        const double edge = std::sqrt(-lambda);
        return {kind, lambda, {-edge, edge}, 0.5, 1.0 / lambda};
      }
      return {kind, lambda, line, 0.5, 1.0 / lambda};
    }
    case ProfileKind::Case3: {
      // lambda = 0 is the harmonic limit with constant mass 2.
      if (lambda == 0.0) return {kind, 0.0, line, 0.25, 0.0};
      const double edge = 1.0 / std::abs(lambda);
      return {kind, lambda, {-edge, edge}, 0.25, -lambda * lambda};
    }
    case ProfileKind::Constant:
      return {kind, 0.0, line, 0.5, 0.0};
  }
  throw Error(ErrorCode::InvalidLambda, "unknown profile kind");
}

void MassProfile::require_inside(double x) const {
  if (!std::isfinite(x) || !domain_.contains(x)) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("x = {} is outside ({}, {})", x, domain_.lo, domain_.hi));
  }
}

ShapeInvariantFamily::ShapeInvariantFamily(MassProfile profile, double alpha0)
    : profile_(profile), alpha0_(alpha0), eta_(0.0) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorCode::NonPositiveAlpha, fmt::format("alpha = {} must be > 0", alpha0));
  }
  const double lambda = profile_.lambda();
  switch (profile_.kind()) {
    case ProfileKind::Case1: eta_ = -lambda; break;
    case ProfileKind::Case2: eta_ = -1.0 / lambda; break;
    case ProfileKind::Case3: eta_ = 0.5 * lambda * lambda; break;
    case ProfileKind::Constant: eta_ = 0.0; break;
  }
}

ShapeInvariantFamily ShapeInvariantFamily::shifted(std::size_t steps) const {
  return ShapeInvariantFamily(profile_, alpha(steps));
}

VonRoosOrdering VonRoosOrdering::make(double a, double b, double c) {
  if (!(std::abs(a + b + c + 1.0) <= 1e-12)) {
    throw Error(ErrorCode::ConstraintViolated,
                fmt::format("a + b + c = {} (must be -1)", a + b + c));
  }
  return {a, b, c};
}

ShapeInvariantFamily make_family(ProfileKind kind, double alpha, double lambda) {
  return ShapeInvariantFamily(MassProfile::make(kind, lambda), alpha);
}

double mass_at(const MassProfile& profile, double x) {
  profile.require_inside(x);
  return 1.0 / (2.0 * profile.kinetic_coefficient(x));
}

double superpotential_at(const ShapeInvariantFamily& family, double alpha_n, double x) {
  const auto& prof = family.profile();
  prof.require_inside(x);
  const double l = prof.lambda();
  switch (prof.kind()) {
    case ProfileKind::Case1: return alpha_n * x / std::sqrt(2.0 * (1.0 + l * x * x));
    case ProfileKind::Case2: return alpha_n * x / std::sqrt(2.0 * (1.0 + x * x / l));
    case ProfileKind::Case3: return alpha_n * x / std::sqrt(1.0 - l * l * x * x);
    case ProfileKind::Constant: return alpha_n * x / std::sqrt(2.0);
  }
  return 0.0;
}

double potential_minus(const ShapeInvariantFamily& family, double alpha_n, double x) {
  const auto& prof = family.profile();
  prof.require_inside(x);
  const double l = prof.lambda();
  const double a = alpha_n;
  switch (prof.kind()) {
    case ProfileKind::Case1: return 0.5 * a * a * x * x / (1.0 + l * x * x) - 0.5 * a;
    case ProfileKind::Case2: return 0.5 * a * a * x * x / (1.0 + x * x / l) - 0.5 * a;
    case ProfileKind::Case3: return a * a * x * x / (1.0 - l * l * x * x) - 0.5 * a;
    case ProfileKind::Constant: return 0.5 * a * a * x * x - 0.5 * a;
  }
  return 0.0;
}

double potential_plus(const ShapeInvariantFamily& family, double alpha_n, double x) {
  const auto& prof = family.profile();
  prof.require_inside(x);
  const double l = prof.lambda();
  const double a = alpha_n;
  switch (prof.kind()) {
    case ProfileKind::Case1: {
      const double b = a - l;
      return 0.5 * b * b * x * x / (1.0 + l * x * x) + 0.5 * b;
    }
    case ProfileKind::Case2: {
      const double b = a - 1.0 / l;
      return 0.5 * b * b * x * x / (1.0 + x * x / l) + 0.5 * b;
    }
    case ProfileKind::Case3: {
      const double b = a + 0.5 * l * l;
      return b * b * x * x / (1.0 - l * l * x * x) + 0.5 * a + 0.25 * l * l;
    }
    case ProfileKind::Constant: return 0.5 * a * a * x * x + 0.5 * a;
  }
  return 0.0;
}

double potential(const ShapeInvariantFamily& family, double x) {
  const double a = family.alpha0();
  return 0.5 * mass_at(family.profile(), x) * a * a * x * x;
}

double remainder(const ShapeInvariantFamily& family, double alpha_n) {
  return alpha_n + family.eta();
}

double ground_energy(const ShapeInvariantFamily& family) { return 0.5 * family.alpha0(); }

namespace {

void require_bound(const ShapeInvariantFamily& family, std::size_t n) {
  if (!is_bound(family, n)) {
    throw Error(ErrorCode::NotABoundState,
                fmt::format("n = {} is past the bound-state cutoff ({} bound states)", n,
                            *bound_state_count(family)));
  }
}

}  // namespace

double energy(const ShapeInvariantFamily& family, std::size_t n) {
  require_bound(family, n);
  const double a = family.alpha0();
  const double l = family.lambda();
  const double base = a * (static_cast<double>(n) + 0.5);
  switch (family.kind()) {
    case ProfileKind::Case1: return base - 0.5 * l * nn1(n);
    case ProfileKind::Case2: return base - nn1(n) / (2.0 * l);
    case ProfileKind::Case3: return base + 0.25 * l * l * nn1(n);
    case ProfileKind::Constant: return base;
  }
  return base;
}

double energy_via_recursion(const ShapeInvariantFamily& family, std::size_t n) {
  require_bound(family, n);
  double e = ground_energy(family);
  for (std::size_t i = 1; i <= n; ++i) e += remainder(family, family.alpha(i - 1));
  return e;
}

double energy_unified(double alpha, double q, std::size_t n) {
  return alpha * ((static_cast<double>(n) + 0.5) - 0.5 * q * nn1(n));
}

BoundCount bound_state_count(const ShapeInvariantFamily& family) {
  const double l = family.lambda();
  const bool deformed_line = (family.kind() == ProfileKind::Case1 || family.kind() == ProfileKind::Case2) && l > 0.0;
  if (!deformed_line) return std::nullopt;
  // phi_n ~ |xi|^(n - 1/q) at large |xi|: square integrable iff n < 1/q - 1/2.
  const double inv_q = 1.0 / deformation_q(family);
  const double limit = inv_q - 0.5;
  if (limit <= 0.0) return std::size_t{0};
  return static_cast<std::size_t>(std::ceil(limit));
}

bool is_bound(const ShapeInvariantFamily& family, std::size_t n) {
  const auto count = bound_state_count(family);
  return !count || n < *count;
}

SpectrumTable spectrum(const ShapeInvariantFamily& family, std::size_t n_max) {
  SpectrumTable table{ground_energy(family), {}, bound_state_count(family)};
  for (std::size_t n = 0; n <= n_max && is_bound(family, n); ++n) {
    table.entries.push_back({n, energy(family, n)});
  }
  return table;
}

double ground_state_unnormalized(const ShapeInvariantFamily& family, double x) {
  const auto& prof = family.profile();
  prof.require_inside(x);
  const double a = family.alpha0();
  const double l = prof.lambda();
  switch (prof.kind()) {
    case ProfileKind::Case1:
      if (l == 0.0) return std::exp(-0.5 * a * x * x);
      return std::exp(-a / (2.0 * l) * std::log1p(l * x * x));
    case ProfileKind::Case2:
      return std::exp(-0.5 * a * l * std::log1p(x * x / l));
    case ProfileKind::Case3:
      if (l == 0.0) return std::exp(-a * x * x);
      return std::exp(a / (l * l) * std::log1p(-l * l * x * x));
    case ProfileKind::Constant:
      return std::exp(-0.5 * a * x * x);
  }
  return 0.0;
}

double deformation_q(const ShapeInvariantFamily& family) {
  const double a = family.alpha0();
  const double l = family.lambda();
  switch (family.kind()) {
    case ProfileKind::Case1: return l / a;
    case ProfileKind::Case2: return 1.0 / (a * l);
    case ProfileKind::Case3: return -l * l / (2.0 * a);
    case ProfileKind::Constant: return 0.0;
  }
  return 0.0;
}

double coordinate_scale(const ShapeInvariantFamily& family) {
  const double a = family.alpha0();
  return family.kind() == ProfileKind::Case3 ? std::sqrt(2.0 * a) : std::sqrt(a);
}

}  // namespace pdem
