#pragma once

// Deformed Hermite polynomials H_n(xi, q) in exact rational arithmetic.
//
// All three parameterizations are the same family in the unified deformation
// parameter q: generating function (1 + q(2 t xi - t^2))^(1/q - 1/2) and
// Rodrigues kernel (1 + q xi^2)^(n - 1/q). Coefficients are stored in each
// parameterization's own deformation variable:
//
//   Case1  lambda~ = q       Case2  1/mu = q       Case3  upsilon^2 = -q

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pdem/core_model.hpp"

namespace pdem {
struct Grid;
}

namespace pdem::poly {

/// Always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

/// Polynomial in one deformation variable with exact rational coefficients.
class DeformationPoly {
 public:
  DeformationPoly() = default;
  DeformationPoly(const Rational& constant);  // NOLINT(implicit)
  DeformationPoly(long constant) : DeformationPoly(Rational(constant)) {}  // NOLINT(implicit)

  /// c * v^power
  static DeformationPoly monomial(const Rational& c, unsigned power);
  /// a + b v
  static DeformationPoly linear(const Rational& a, const Rational& b);

  const std::map<unsigned, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(unsigned power) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;

  Rational eval(const Rational& v) const;
  double eval(double v) const;
  Rational at_zero() const { return coeff(0); }

  /// p(v) -> p(-v).
  DeformationPoly negate_variable() const;

  DeformationPoly& operator+=(const DeformationPoly& o);
  DeformationPoly& operator-=(const DeformationPoly& o);
  DeformationPoly& operator*=(const Rational& s);
  friend DeformationPoly operator+(DeformationPoly a, const DeformationPoly& b) { return a += b; }
  friend DeformationPoly operator-(DeformationPoly a, const DeformationPoly& b) { return a -= b; }
  friend DeformationPoly operator*(DeformationPoly a, const Rational& s) { return a *= s; }
  friend DeformationPoly operator*(const Rational& s, DeformationPoly a) { return a *= s; }
  friend DeformationPoly operator*(const DeformationPoly& a, const DeformationPoly& b);
  DeformationPoly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const DeformationPoly& a, const DeformationPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; divisor must be nonzero.
  static void divmod(const DeformationPoly& num, const DeformationPoly& den,
                     DeformationPoly& quotient, DeformationPoly& rem);
  /// Monic greatest common divisor (zero if both are zero).
  static DeformationPoly gcd(DeformationPoly a, DeformationPoly b);

 private:
  void set(unsigned power, const Rational& c);
  std::map<unsigned, Rational> coeffs_;
};

/// num(v) / den(v) in lowest terms, with den(0) = 1 whenever den(0) != 0.
struct RationalFunction {
  DeformationPoly num;
  DeformationPoly den;

  static RationalFunction reduced(DeformationPoly num, DeformationPoly den);
  Rational at_zero() const;
  double eval(double v) const;
  /// Compared as functions (cross multiplication).
  bool equals(const RationalFunction& o) const { return num * o.den == o.num * den; }
};

enum class Parameterization { Case1, Case2, Case3 };
enum class PolyTag { GeneratingFunction, Rodrigues };

std::string_view to_string(Parameterization p);
std::string_view to_string(PolyTag t);
/// Constant mass maps to Case1 evaluated at q = 0.
Parameterization parameterization_of(ProfileKind kind);
/// Value of the stored deformation variable for a concrete family.
double deformation_variable(const ShapeInvariantFamily& family);

/// sum_k coeff_k(v) xi^k
class LambdaPoly {
 public:
  LambdaPoly(unsigned degree, PolyTag tag, Parameterization param)
      : degree_(degree), tag_(tag), param_(param) {}

  unsigned degree() const { return degree_; }
  PolyTag tag() const { return tag_; }
  Parameterization parameterization() const { return param_; }
  const std::map<unsigned, DeformationPoly>& coeffs() const { return coeffs_; }
  DeformationPoly coeff(unsigned xi_power) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest xi power with a nonzero coefficient, -1 when zero.
  int xi_degree() const;

  void add_term(unsigned xi_power, const DeformationPoly& c);

  /// Coefficients of xi^k vanish unless k = degree (mod 2).
  bool has_parity() const;

  /// Reinterpret the coefficients in the unified variable q (and back).
  LambdaPoly to_unified() const;
  LambdaPoly from_unified(Parameterization target) const;

  LambdaPoly derivative() const;

  double eval(double xi, double deformation_value) const;
  /// Coefficient vector (by xi power) evaluated at a deformation value.
  std::vector<double> numeric_coeffs(double deformation_value) const;

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    return a.param_ == b.param_ && a.coeffs_ == b.coeffs_;
  }

 private:
  unsigned degree_;
  PolyTag tag_;
  Parameterization param_;
  std::map<unsigned, DeformationPoly> coeffs_;
};

/// Integer polynomial, index = power.
using IntegerPoly = std::vector<Integer>;

/// n! [t^n] of the generating function, expanded directly.
LambdaPoly gf_polynomial(unsigned n, Parameterization param);
/// H_0, H_1 from the series, then three_term_next up to n.
LambdaPoly gf_polynomial_by_recurrence(unsigned n, Parameterization param);
/// (-1)^n (1+q xi^2)^(1/q) d^n/dxi^n (1+q xi^2)^(n - 1/q), differentiated exactly.
LambdaPoly rodrigues_polynomial(unsigned n, Parameterization param);

/// H_{m+1} = xi[(2-q) - 2qm] H_m - m[(2-q) - q(m-1)] H_{m-1}.
/// h_m_minus_1 may be null only for m == 0.
LambdaPoly three_term_next(const LambdaPoly& h_m, const LambdaPoly* h_m_minus_1, unsigned m);

/// m(2-q)H_{m-1} - H'_m - 2 xi q m H'_{m-1} + q m(m-1) H'_{m-2}; zero for the
/// generating-function family.
LambdaPoly derivative_relation_residual(unsigned m, Parameterization param);

struct ProportionalityCheck {
  /// rodrigues = ratio * generating-function, when proportional.
  std::optional<RationalFunction> ratio;
  /// Human-readable reason when not proportional.
  std::string mismatch;
  bool proportional() const { return ratio.has_value(); }
};

ProportionalityCheck proportionality_ratio(unsigned n, Parameterization param);

/// Every coefficient evaluated at deformation 0. Throws if a value is not integral.
IntegerPoly harmonic_limit(const LambdaPoly& p);

/// Normalized phi_n = N_n H_n(scale x, q) * ground factor on the grid nodes,
/// with the leading coefficient of H_n made positive.
std::vector<double> eigenfunction_samples(const ShapeInvariantFamily& family, std::size_t n,
                                          const Grid& grid);

/// Factored display in the style of the printed tables, e.g.
/// "(-1)(2-λ̃)[1+(3λ̃-2)ζ²]".
std::string format_symbolic(const LambdaPoly& p);
/// Fully expanded display.
std::string format_expanded(const LambdaPoly& p);

}  // namespace pdem::poly
