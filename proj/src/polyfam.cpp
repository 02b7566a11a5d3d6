#include "pdem/polyfam.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pdem/discrete.hpp"
#include "pdem/errors.hpp"

namespace pdem::poly {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// DeformationPoly

DeformationPoly::DeformationPoly(const Rational& constant) { set(0, constant); }

DeformationPoly DeformationPoly::monomial(const Rational& c, unsigned power) {
  DeformationPoly p;
  p.set(power, c);
  return p;
}

DeformationPoly DeformationPoly::linear(const Rational& a, const Rational& b) {
  DeformationPoly p;
  p.set(0, a);
  p.set(1, b);
  return p;
}

void DeformationPoly::set(unsigned power, const Rational& c) {
  if (c == 0) {
    coeffs_.erase(power);
  } else {
    coeffs_[power] = c;
  }
}

Rational DeformationPoly::coeff(unsigned power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

int DeformationPoly::degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

Rational DeformationPoly::eval(const Rational& v) const {
  Rational acc = 0;
  unsigned last = degree() < 0 ? 0 : static_cast<unsigned>(degree());
  for (unsigned p = last + 1; p-- > 0;) acc = acc * v + coeff(p);
  return acc;
}

double DeformationPoly::eval(double v) const {
  double acc = 0.0;
  if (coeffs_.empty()) return acc;
  for (unsigned p = coeffs_.rbegin()->first + 1; p-- > 0;) {
    auto it = coeffs_.find(p);
    acc = acc * v + (it == coeffs_.end() ? 0.0 : it->second.get_d());
  }
  return acc;
}

DeformationPoly DeformationPoly::negate_variable() const {
  DeformationPoly out;
  for (const auto& [p, c] : coeffs_) out.set(p, p % 2 ? Rational(-c) : c);
  return out;
}

DeformationPoly& DeformationPoly::operator+=(const DeformationPoly& o) {
  for (const auto& [p, c] : o.coeffs_) set(p, coeff(p) + c);
  return *this;
}

DeformationPoly& DeformationPoly::operator-=(const DeformationPoly& o) {
  for (const auto& [p, c] : o.coeffs_) set(p, coeff(p) - c);
  return *this;
}

DeformationPoly& DeformationPoly::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
  } else {
    for (auto& [p, c] : coeffs_) c *= s;
  }
  return *this;
}

DeformationPoly operator*(const DeformationPoly& a, const DeformationPoly& b) {
  DeformationPoly out;
  for (const auto& [pa, ca] : a.coeffs_) {
    for (const auto& [pb, cb] : b.coeffs_) out.set(pa + pb, out.coeff(pa + pb) + ca * cb);
  }
  return out;
}

void DeformationPoly::divmod(const DeformationPoly& num, const DeformationPoly& den, DeformationPoly& quotient,
                             DeformationPoly& rem) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  quotient = DeformationPoly();
  rem = num;
  const int dd = den.degree();
  const Rational lead = den.coeff(static_cast<unsigned>(dd));
  while (!rem.is_zero() && rem.degree() >= dd) {
    const unsigned shift = static_cast<unsigned>(rem.degree() - dd);
    const Rational factor = rem.coeff(static_cast<unsigned>(rem.degree())) / lead;
    const DeformationPoly term = monomial(factor, shift);
    quotient += term;
    rem -= term * den;
  }
}

DeformationPoly DeformationPoly::gcd(DeformationPoly a, DeformationPoly b) {
  while (!b.is_zero()) {
    DeformationPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.coeff(static_cast<unsigned>(a.degree()));
  return a * Rational(1 / lead);
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction RationalFunction::reduced(DeformationPoly num, DeformationPoly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  const DeformationPoly g = DeformationPoly::gcd(num, den);
  if (!g.is_zero() && g.degree() > 0) {
    DeformationPoly q, r;
    DeformationPoly::divmod(num, g, q, r);
    num = q;
    DeformationPoly::divmod(den, g, q, r);
    den = q;
  }
  Rational scale = den.at_zero();
  if (scale == 0) scale = den.coeff(static_cast<unsigned>(den.degree()));
  const Rational inv = 1 / scale;
  return {num * inv, den * inv};
}

Rational RationalFunction::at_zero() const {
  const Rational d = den.at_zero();
  if (d == 0) throw std::domain_error("rational function has a pole at 0");
  return num.at_zero() / d;
}

double RationalFunction::eval(double v) const { return num.eval(v) / den.eval(v); }

// ---------------------------------------------------------------------------
// Parameterizations

std::string_view to_string(Parameterization p) {
  switch (p) {
    case Parameterization::Case1: return "case1";
    case Parameterization::Case2: return "case2";
    case Parameterization::Case3: return "case3";
  }
  return "?";
}

std::string_view to_string(PolyTag t) {
  return t == PolyTag::GeneratingFunction ? "generating_function" : "rodrigues";
}

Parameterization parameterization_of(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Case2: return Parameterization::Case2;
    case ProfileKind::Case3: return Parameterization::Case3;
    default: return Parameterization::Case1;
  }
}

double deformation_variable(const ShapeInvariantFamily& family) {
  const double q = deformation_q(family);
  return family.kind() == ProfileKind::Case3 ? -q : q;
}

// ---------------------------------------------------------------------------
// LambdaPoly

DeformationPoly LambdaPoly::coeff(unsigned xi_power) const {
  auto it = coeffs_.find(xi_power);
  return it == coeffs_.end() ? DeformationPoly() : it->second;
}

int LambdaPoly::xi_degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

void LambdaPoly::add_term(unsigned xi_power, const DeformationPoly& c) {
  DeformationPoly sum = coeff(xi_power) + c;
  if (sum.is_zero()) {
    coeffs_.erase(xi_power);
  } else {
    coeffs_[xi_power] = std::move(sum);
  }
}

bool LambdaPoly::has_parity() const {
  for (const auto& [k, c] : coeffs_) {
    if ((k + degree_) % 2 != 0) return false;
  }
  return true;
}

LambdaPoly LambdaPoly::to_unified() const {
  if (param_ != Parameterization::Case3) return *this;
  LambdaPoly out(degree_, tag_, Parameterization::Case1);
  for (const auto& [k, c] : coeffs_) out.coeffs_[k] = c.negate_variable();
  return out;
}

LambdaPoly LambdaPoly::from_unified(Parameterization target) const {
  LambdaPoly out(degree_, tag_, target);
  for (const auto& [k, c] : coeffs_) out.coeffs_[k] = target == Parameterization::Case3 ? c.negate_variable() : c;
  return out;
}

LambdaPoly LambdaPoly::derivative() const {
  LambdaPoly out(degree_ > 0 ? degree_ - 1 : 0, tag_, param_);
  for (const auto& [k, c] : coeffs_) {
    if (k > 0) out.add_term(k - 1, c * Rational(k));
  }
  return out;
}

std::vector<double> LambdaPoly::numeric_coeffs(double deformation_value) const {
  std::vector<double> out(static_cast<std::size_t>(xi_degree() + 1), 0.0);
  for (const auto& [k, c] : coeffs_) out[k] = c.eval(deformation_value);
  return out;
}

double LambdaPoly::eval(double xi, double deformation_value) const {
  const auto c = numeric_coeffs(deformation_value);
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * xi + c[k];
  return acc;
}

// ---------------------------------------------------------------------------
// Constructions, all carried out in the unified variable q.

namespace {

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// a + b q
DeformationPoly lin(long a, long b) { return DeformationPoly::linear(Rational(a), Rational(b)); }

LambdaPoly gf_unified(unsigned n) {
  LambdaPoly out(n, PolyTag::GeneratingFunction, Parameterization::Case1);
  const Integer nfact = factorial(n);
  // falling = prod_{i<k} (1 - (2i+1) q / 2)
  DeformationPoly falling = 1;
  for (unsigned k = 0; k <= n; ++k) {
    if (2 * k >= n) {
      Rational scalar(nfact * binomial(k, n - k), factorial(k));
      scalar.canonicalize();
      const unsigned power = 2 * k - n;
      scalar *= Rational(Integer(1) << power);
      if ((n - k) % 2) scalar = -scalar;
      out.add_term(power, falling * scalar);
    }
    falling = falling * DeformationPoly::linear(Rational(1), -make_rational(2 * static_cast<long>(k) + 1, 2));
  }
  return out;
}

LambdaPoly scaled_by(const LambdaPoly& p, const DeformationPoly& f, unsigned shift) {
  LambdaPoly out(p.degree() + (shift ? 1 : 0), PolyTag::GeneratingFunction, p.parameterization());
  for (const auto& [k, c] : p.coeffs()) out.add_term(k + shift, c * f);
  return out;
}

LambdaPoly combine(unsigned degree, const LambdaPoly& a, const LambdaPoly& b, const DeformationPoly& fb) {
  LambdaPoly out(degree, PolyTag::GeneratingFunction, a.parameterization());
  for (const auto& [k, c] : a.coeffs()) out.add_term(k, c);
  for (const auto& [k, c] : b.coeffs()) out.add_term(k, c * fb);
  return out;
}

}  // namespace

LambdaPoly gf_polynomial(unsigned n, Parameterization param) { return gf_unified(n).from_unified(param); }

LambdaPoly three_term_next(const LambdaPoly& h_m, const LambdaPoly* h_m_minus_1, unsigned m) {
  if (h_m.degree() != m) {
    throw Error(ErrorCode::DegreeMismatch, fmt::format("h_m has degree {}, expected {}", h_m.degree(), m));
  }
  if (m > 0) {
    if (!h_m_minus_1) throw Error(ErrorCode::DegreeMismatch, "h_{m-1} is required for m > 0");
    if (h_m_minus_1->degree() + 1 != m) {
      throw Error(ErrorCode::DegreeMismatch,
                  fmt::format("h_(m-1) has degree {}, expected {}", h_m_minus_1->degree(), m - 1));
    }
    if (h_m_minus_1->parameterization() != h_m.parameterization()) {
      throw Error(ErrorCode::DegreeMismatch, "recurrence inputs use different parameterizations");
    }
  }
  const long mm = static_cast<long>(m);
  const LambdaPoly a = scaled_by(h_m.to_unified(), lin(2, -1 - 2 * mm), 1);
  if (m == 0) return a.from_unified(h_m.parameterization());
  // -m [(2 - q) - q (m - 1)] = -m (2 - m q)
  return combine(m + 1, a, h_m_minus_1->to_unified(), lin(-2 * mm, mm * mm)).from_unified(h_m.parameterization());
}

LambdaPoly gf_polynomial_by_recurrence(unsigned n, Parameterization param) {
  LambdaPoly prev = gf_polynomial(0, param);
  if (n == 0) return prev;
  LambdaPoly cur = gf_polynomial(1, param);
  for (unsigned m = 1; m < n; ++m) {
    LambdaPoly next = three_term_next(cur, &prev, m);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

LambdaPoly rodrigues_polynomial(unsigned n, Parameterization param) {
  // Terms c * xi^a * w^(B - 1/q), w = 1 + q xi^2, keyed by (a, B).
  using Key = std::pair<unsigned, unsigned>;
  std::map<Key, DeformationPoly> terms{{{0u, n}, DeformationPoly(1)}};
  auto accumulate = [](std::map<Key, DeformationPoly>& into, Key key, const DeformationPoly& c) {
    DeformationPoly sum = into[key] + c;
    if (sum.is_zero()) {
      into.erase(key);
    } else {
      into[key] = std::move(sum);
    }
  };
  for (unsigned step = 0; step < n; ++step) {
    std::map<Key, DeformationPoly> next;
    for (const auto& [key, c] : terms) {
      const auto [a, b] = key;
      if (a > 0) accumulate(next, {a - 1, b}, c * Rational(a));
      // d/dxi w^(B - 1/q) = 2 (q B - 1) xi w^(B - 1 - 1/q)
      if (b == 0) throw std::logic_error("Rodrigues kernel exponent underflow");
      accumulate(next, {a + 1, b - 1}, c * lin(-2, 2 * static_cast<long>(b)));
    }
    terms = std::move(next);
  }
  // Multiply by (-1)^n w^(1/q) and expand w^B.
  LambdaPoly out(n, PolyTag::Rodrigues, Parameterization::Case1);
  const Rational sign = n % 2 ? -1 : 1;
  for (const auto& [key, c] : terms) {
    const auto [a, b] = key;
    for (unsigned j = 0; j <= b; ++j) {
      out.add_term(a + 2 * j, c * DeformationPoly::monomial(Rational(binomial(b, j)) * sign, j));
    }
  }
  return out.from_unified(param);
}

LambdaPoly derivative_relation_residual(unsigned m, Parameterization param) {
  const long mm = static_cast<long>(m);
  LambdaPoly out(m > 0 ? m - 1 : 0, PolyTag::GeneratingFunction, Parameterization::Case1);
  auto add = [&out](const LambdaPoly& p, const DeformationPoly& f, unsigned shift) {
    for (const auto& [k, c] : p.coeffs()) out.add_term(k + shift, c * f);
  };
  add(gf_unified(m).derivative(), DeformationPoly(-1), 0);
  if (m >= 1) {
    add(gf_unified(m - 1), lin(2 * mm, -mm), 0);
    add(gf_unified(m - 1).derivative(), DeformationPoly::monomial(Rational(-2 * mm), 1), 1);
  }
  if (m >= 2) add(gf_unified(m - 2).derivative(), DeformationPoly::monomial(Rational(mm * (mm - 1)), 1), 0);
  return out.from_unified(param);
}

ProportionalityCheck proportionality_ratio(unsigned n, Parameterization param) {
  const LambdaPoly r = rodrigues_polynomial(n, param);
  const LambdaPoly g = gf_polynomial(n, param);
  ProportionalityCheck result;
  if (g.is_zero()) {
    result.mismatch = "generating-function polynomial is zero";
    return result;
  }
  const unsigned k0 = g.coeffs().begin()->first;
  const DeformationPoly& gk0 = g.coeffs().begin()->second;
  const DeformationPoly rk0 = r.coeff(k0);
  for (unsigned k = 0; k <= static_cast<unsigned>(std::max(r.xi_degree(), g.xi_degree())); ++k) {
    if (!(r.coeff(k) * gk0 == g.coeff(k) * rk0)) {
      result.mismatch = fmt::format("coefficient of xi^{} breaks the ratio fixed at xi^{}", k, k0);
      return result;
    }
  }
  result.ratio = RationalFunction::reduced(rk0, gk0);
  return result;
}

IntegerPoly harmonic_limit(const LambdaPoly& p) {
  IntegerPoly out(static_cast<std::size_t>(p.xi_degree() + 1), Integer(0));
  for (const auto& [k, c] : p.coeffs()) {
    const Rational v = c.at_zero();
    if (v.get_den() != 1) throw std::domain_error(fmt::format("xi^{} coefficient at q = 0 is not an integer", k));
    out[k] = v.get_num();
  }
  return out;
}

std::vector<double> eigenfunction_samples(const ShapeInvariantFamily& family, std::size_t n, const Grid& grid) {
  if (!is_bound(family, n)) {
    throw Error(ErrorCode::NotABoundState, fmt::format("n = {} is not a bound state of this family", n));
  }
  const auto& prof = family.profile();
  for (double x : grid.points) prof.require_inside(x);

  const LambdaPoly h = gf_polynomial(static_cast<unsigned>(n), parameterization_of(family.kind()));
  const double v = deformation_variable(family);
  const auto c = h.numeric_coeffs(v);
  const double sign = (!c.empty() && c.back() < 0.0) ? -1.0 : 1.0;
  const double scale = coordinate_scale(family);

  std::vector<double> f(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double xi = scale * grid.points[i];
    double poly = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) poly = poly * xi + c[k];
    f[i] = sign * poly * ground_state_unnormalized(family, grid.points[i]);
  }
  const double norm = std::sqrt(inner_product(f, f, grid));
  for (double& x : f) x /= norm;
  return f;
}

}  // namespace pdem::poly
