// Printers for LambdaPoly: factored (table layout) and fully expanded.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pdem/polyfam.hpp"

namespace pdem::poly {

namespace {

std::string superscript(unsigned k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  if (k == 0) return digits[0];
  std::string out;
  for (char ch : std::to_string(k)) out += digits[ch - '0'];
  return out;
}

std::string_view coordinate_symbol(Parameterization p) {
  switch (p) {
    case Parameterization::Case1: return "ζ";
    case Parameterization::Case2: return "ς";
    case Parameterization::Case3: return "ϱ";
  }
  return "x";
}

std::string coordinate_power(Parameterization p, unsigned k) {
  if (k == 0) return "";
  std::string s(coordinate_symbol(p));
  return k == 1 ? s : s + superscript(k);
}

// |c| v^power with c a positive integer or fraction; c == 1 is omitted unless
// the term is a bare constant.
std::string variable_term(Parameterization p, const Rational& c, unsigned power) {
  const std::string num = c.get_num().get_str();
  const std::string frac = c.get_den() == 1 ? num : num + "/" + c.get_den().get_str();
  if (power == 0) return frac;
  switch (p) {
    case Parameterization::Case1: {
      const std::string var = power == 1 ? "λ̃" : "λ̃" + superscript(power);
      return c == 1 ? var : (c.get_den() == 1 ? frac + var : "(" + frac + ")" + var);
    }
    case Parameterization::Case2: {
      const std::string var = power == 1 ? "μ" : "μ" + superscript(power);
      if (c.get_den() == 1) return num + "/" + var;
      return num + "/(" + c.get_den().get_str() + var + ")";
    }
    case Parameterization::Case3: {
      const std::string var = "υ" + superscript(2 * power);
      return c == 1 ? var : (c.get_den() == 1 ? frac + var : "(" + frac + ")" + var);
    }
  }
  return frac;
}

// Polynomial in the deformation variable, ascending powers: "2-3λ̃+λ̃²".
std::string deformation_sum(Parameterization p, const DeformationPoly& d, bool variable_first) {
  std::vector<std::pair<unsigned, Rational>> terms(d.coeffs().begin(), d.coeffs().end());
  if (variable_first) std::reverse(terms.begin(), terms.end());
  std::string out;
  for (const auto& [power, c] : terms) {
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    out += variable_term(p, abs(c), power);
  }
  return out.empty() ? "0" : out;
}

// a + b v with coprime integers.
struct LinearFactor {
  Integer a;
  Integer b;

  DeformationPoly poly() const { return DeformationPoly::linear(Rational(a), Rational(b)); }
  double weight() const { return a == 0 ? INFINITY : std::abs(b.get_d() / a.get_d()); }
};

struct Factored {
  Rational constant;
  std::vector<LinearFactor> factors;
  DeformationPoly rest = 1;  // part without rational roots
};

std::vector<std::complex<double>> numeric_roots(const DeformationPoly& d) {
  const int deg = d.degree();
  std::vector<std::complex<double>> c(static_cast<std::size_t>(deg) + 1);
  const double lead = d.coeff(static_cast<unsigned>(deg)).get_d();
  for (int k = 0; k <= deg; ++k) c[static_cast<std::size_t>(k)] = d.coeff(static_cast<unsigned>(k)).get_d() / lead;
  // Durand-Kerner on the monic polynomial.
  double radius = 0.0;
  for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(k)]));
  radius += 1.0;
  std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 0.4 + 2.0 * M_PI * k / deg);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (int k = deg; k >= 0; --k) acc = acc * x + c[static_cast<std::size_t>(k)];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    double moved = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      std::complex<double> den = 1.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const std::complex<double> step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15 * radius) break;
  }
  return z;
}

// Continued-fraction approximation with bounded denominator.
Rational rationalize(double x) {
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(r);
    const Integer a(fl);
    const Integer p2 = a * p1 + p0;
    const Integer q2 = a * q1 + q0;
    if (q2 > 1000000000) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - p1.get_d() / q1.get_d()) < 1e-12 * std::max(1.0, std::abs(x))) break;
    const double frac = r - fl;
    if (frac < 1e-14) break;
    r = 1.0 / frac;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

Factored factor(const DeformationPoly& d) {
  Factored f;
  DeformationPoly rest = d;
  bool progress = true;
  while (progress && rest.degree() >= 1) {
    progress = false;
    std::vector<Rational> candidates;
    if (rest.coeff(0) == 0) {
      candidates.emplace_back(0);
    } else if (rest.degree() == 1) {
      candidates.push_back(-rest.coeff(0) / rest.coeff(1));
    } else {
      for (const auto& z : numeric_roots(rest)) {
        if (std::abs(z.imag()) < 1e-6 * std::max(1.0, std::abs(z))) candidates.push_back(rationalize(z.real()));
      }
    }
    for (const Rational& root : candidates) {
      // root = p/s -> factor s v - p, then sign-normalize later.
      LinearFactor lf{-root.get_num(), root.get_den()};
      if (root != 0 && lf.a < 0) {
        lf.a = -lf.a;
        lf.b = -lf.b;
      }
      if (root == 0) lf = {0, 1};
      DeformationPoly q, r;
      DeformationPoly::divmod(rest, lf.poly(), q, r);
      if (r.is_zero()) {
        f.factors.push_back(lf);
        rest = q;
        progress = true;
        break;
      }
    }
  }
  // Pull the content of the remainder into the constant.
  const int deg = rest.degree();
  if (deg <= 0) {
    f.constant = rest.coeff(0);
    f.rest = 1;
  } else {
    f.constant = rest.coeff(static_cast<unsigned>(deg));
    f.rest = rest * Rational(1 / f.constant);
  }
  std::stable_sort(f.factors.begin(), f.factors.end(),
                   [](const LinearFactor& x, const LinearFactor& y) { return x.weight() < y.weight(); });
  return f;
}

std::string factor_string(Parameterization p, LinearFactor lf, bool variable_positive, Rational& sign) {
  if (lf.a == 0) {
    if (lf.b < 0) sign = -sign;
    return variable_term(p, Rational(1), 1);
  }
  const bool flip = variable_positive ? lf.b < 0 : lf.a < 0;
  if (flip) {
    lf.a = -lf.a;
    lf.b = -lf.b;
    sign = -sign;
  }
  return "(" + deformation_sum(p, lf.poly(), variable_positive) + ")";
}

std::string constant_string(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Constant and factor product. For the prefactor the constant is parenthesized;
// in the bracket its sign is reported separately.
struct Rendered {
  std::string text;
  bool negative = false;
};

Rendered render_product(Parameterization p, const DeformationPoly& d, bool variable_positive, bool prefactor) {
  const Factored f = factor(d);
  Rational constant = f.constant;
  Rational sign = 1;
  std::string factors;
  for (const auto& lf : f.factors) factors += factor_string(p, lf, variable_positive, sign);
  if (f.rest.degree() > 0) factors += "(" + deformation_sum(p, f.rest, false) + ")";
  constant *= sign;

  Rendered r;
  if (prefactor) {
    if (constant != 1 || factors.empty()) r.text = "(" + constant_string(constant) + ")";
    if (constant == 1 && factors.empty()) r.text.clear();
    r.text += factors;
    return r;
  }
  r.negative = constant < 0;
  const Rational mag = abs(constant);
  if (mag != 1) {
    r.text = mag.get_den() == 1 ? constant_string(mag) : "(" + constant_string(mag) + ")";
  }
  r.text += factors;
  return r;
}

}  // namespace

std::string format_symbolic(const LambdaPoly& poly) {
  if (poly.is_zero()) return "0";
  const Parameterization p = poly.parameterization();
  const unsigned k0 = poly.coeffs().begin()->first;
  const DeformationPoly& base = poly.coeffs().begin()->second;

  // Every coefficient must be a polynomial multiple of the lowest one.
  std::vector<std::pair<unsigned, DeformationPoly>> ratios;
  for (const auto& [k, c] : poly.coeffs()) {
    DeformationPoly q, r;
    DeformationPoly::divmod(c, base, q, r);
    if (!r.is_zero()) return format_expanded(poly);
    ratios.emplace_back(k, q);
  }

  const std::string prefactor = render_product(p, base, false, true).text;
  const bool variable_positive = p == Parameterization::Case1;

  if (ratios.size() == 1) {
    const std::string x = coordinate_power(p, k0);
    if (prefactor.empty() && x.empty()) return "1";
    return prefactor + x;
  }

  std::string bracket = k0 == 0 ? "1" : coordinate_power(p, k0);
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    const Rendered term = render_product(p, ratios[i].second, variable_positive, false);
    bracket += term.negative ? "-" : "+";
    bracket += term.text + coordinate_power(p, ratios[i].first);
  }
  return prefactor + "[" + bracket + "]";
}

std::string format_expanded(const LambdaPoly& poly) {
  if (poly.is_zero()) return "0";
  const Parameterization p = poly.parameterization();
  std::string out;
  for (const auto& [k, c] : poly.coeffs()) {
    if (!out.empty()) out += "+";
    const std::string x = coordinate_power(p, k);
    if (c.coeffs().size() == 1 && c.degree() == 0) {
      const Rational v = c.coeff(0);
      if (v == 1 && !x.empty()) {
        out += x;
      } else if (v == -1 && !x.empty()) {
        out += "-" + x;
      } else {
        out += (v.get_den() == 1 ? constant_string(v) : "(" + constant_string(v) + ")") + x;
      }
    } else {
      out += "(" + deformation_sum(p, c, false) + ")" + x;
    }
  }
  std::string cleaned;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '+' && i + 1 < out.size() && out[i + 1] == '-') continue;
    cleaned += out[i];
  }
  return cleaned;
}

}  // namespace pdem::poly
