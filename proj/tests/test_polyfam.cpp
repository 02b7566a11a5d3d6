#include <cmath>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "pdem/discrete.hpp"
#include "pdem/errors.hpp"
#include "pdem/polyfam.hpp"

using namespace pdem;
using namespace pdem::poly;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Parameterization kAll[] = {Parameterization::Case1, Parameterization::Case2, Parameterization::Case3};

Rational Q(long p, long q = 1) { return make_rational(p, q); }

// Dense univariate polynomial over Q, index = power (test-local arithmetic).
using Dense = std::vector<Rational>;

Dense mul(const Dense& a, const Dense& b) {
  Dense c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Dense deriv(const Dense& a) {
  if (a.size() <= 1) return {Rational(0)};
  Dense d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * Rational(static_cast<long>(i));
  return d;
}

// Exact quotient a / b; fails the test when the remainder is nonzero.
Dense exact_div(Dense a, const Dense& b) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (a.size() < b.size()) {
    for (const auto& c : a) REQUIRE(c == 0);
    return {Rational(0)};
  }
  Dense q(a.size() - b.size() + 1, Rational(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + b.size() - 1] / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  for (const auto& c : a) REQUIRE(c == 0);
  return q;
}

// n! [t^n] (1 + q(2 t xi - t^2))^(1/q - 1/2) at fixed rational q, xi, by the
// power-series recurrence for F = G^a: k G_0 F_k = sum_j (a j - (k - j)) G_j F_{k-j}.
std::vector<Rational> gf_series_values(const Rational& q, const Rational& xi, unsigned n_max) {
  const Rational a = 1 / q - Q(1, 2);
  std::vector<Rational> g(n_max + 1, Rational(0));
  g[0] = 1;
  if (n_max >= 1) g[1] = 2 * q * xi;
  if (n_max >= 2) g[2] = -q;
  std::vector<Rational> f(n_max + 1, Rational(0));
  f[0] = 1;
  for (unsigned k = 1; k <= n_max; ++k) {
    Rational acc = 0;
    for (unsigned j = 1; j <= k; ++j) acc += (a * Rational(j) - Rational(k - j)) * g[j] * f[k - j];
    f[k] = acc / Rational(k);
  }
  Rational fact = 1;
  for (unsigned k = 0; k <= n_max; ++k) {
    if (k > 0) fact *= Rational(k);
    f[k] *= fact;
  }
  return f;
}

std::vector<long> hermite_physicists(unsigned n) {
  std::vector<long> h0{1}, h1{0, 2};
  if (n == 0) return h0;
  for (unsigned m = 1; m < n; ++m) {
    std::vector<long> h2(m + 2, 0);
    for (std::size_t k = 0; k < h1.size(); ++k) h2[k + 1] += 2 * h1[k];
    for (std::size_t k = 0; k < h0.size(); ++k) h2[k] -= 2 * static_cast<long>(m) * h0[k];
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Build c * prod(factors) * [sum_k terms] in the Case1 variable from a printed
// factored form. Each linear factor is (a + b q).
struct Printed {
  Rational constant;
  std::vector<std::pair<long, long>> factors;
  std::vector<std::pair<unsigned, DeformationPoly>> bracket;
};

LambdaPoly expand(unsigned degree, const Printed& p, Parameterization param) {
  DeformationPoly pre = p.constant;
  for (auto [a, b] : p.factors) pre = pre * DeformationPoly::linear(Q(a), Q(b));
  LambdaPoly out(degree, PolyTag::GeneratingFunction, param);
  for (const auto& [k, c] : p.bracket) out.add_term(k, pre * c);
  return out;
}

DeformationPoly lin(long a, long b) { return DeformationPoly::linear(Q(a), Q(b)); }

}  // namespace

TEST_CASE("DeformationPoly arithmetic", "[polyfam]") {
  const auto p = lin(2, -1) * lin(2, -3);  // 4 - 8q + 3q^2
  REQUIRE(p.coeff(0) == 4);
  REQUIRE(p.coeff(1) == -8);
  REQUIRE(p.coeff(2) == 3);
  REQUIRE(p.degree() == 2);
  REQUIRE(p.eval(Q(2)) == 0);
  REQUIRE(p.negate_variable().coeff(1) == 8);
  DeformationPoly q, r;
  DeformationPoly::divmod(p, lin(2, -1), q, r);
  REQUIRE(r.is_zero());
  REQUIRE(q == lin(2, -3));
  REQUIRE(DeformationPoly::gcd(p, lin(-4, 2) * lin(1, 1)) == lin(-2, 1));
  REQUIRE((p - p).is_zero());
  REQUIRE(DeformationPoly(0).degree() == -1);

  const auto rf = RationalFunction::reduced(lin(4, -8) * lin(1, 1), lin(-2, 1) * lin(1, 1));
  REQUIRE(rf.den.at_zero() == 1);
  REQUIRE(rf.at_zero() == -2);
  REQUIRE(rf.equals({lin(4, -8), lin(-2, 1)}));
}

TEST_CASE("generating-function polynomials: printed examples", "[polyfam]") {
  const auto P = Parameterization::Case1;
  REQUIRE(gf_polynomial(0, P) == expand(0, {Q(1), {}, {{0, 1}}}, P));
  REQUIRE(gf_polynomial(1, P) == expand(1, {Q(1), {{2, -1}}, {{1, 1}}}, P));
  REQUIRE(gf_polynomial(2, P) == expand(2, {Q(-1), {{2, -1}}, {{0, 1}, {2, lin(-2, 3)}}}, P));
  const IntegerPoly h3 = harmonic_limit(gf_polynomial(3, P));
  REQUIRE(h3 == IntegerPoly{0, -12, 0, 8});
}

TEST_CASE("paper list Case1 H0..H5 reproduced exactly", "[polyfam][paper]") {
  const auto P = Parameterization::Case1;
  const std::vector<LambdaPoly> printed{
      expand(0, {Q(1), {}, {{0, 1}}}, P),
      expand(1, {Q(1), {{2, -1}}, {{1, 1}}}, P),
      expand(2, {Q(-1), {{2, -1}}, {{0, 1}, {2, lin(-2, 3)}}}, P),
      expand(3, {Q(-3), {{2, -1}, {2, -3}}, {{1, 1}, {3, Q(1, 3) * lin(-2, 5)}}}, P),
      expand(4, {Q(3), {{2, -1}, {2, -3}}, {{0, 1}, {2, Q(2) * lin(-2, 5)}, {4, Q(1, 3) * lin(-2, 5) * lin(-2, 7)}}},
             P),
      expand(5,
             {Q(15),
              {{2, -1}, {2, -3}, {2, -5}},
              {{1, 1}, {3, Q(2, 3) * lin(-2, 7)}, {5, Q(1, 15) * lin(-2, 7) * lin(-2, 9)}}},
             P)};
  for (unsigned n = 0; n < printed.size(); ++n) REQUIRE(gf_polynomial(n, P) == printed[n]);
}

TEST_CASE("paper list Case2 H0..H4 reproduced exactly", "[polyfam][paper]") {
  // Printed with 1/mu; bracket terms as [1 - (2 - 3/mu) s^2] etc.
  const auto P = Parameterization::Case2;
  const std::vector<LambdaPoly> printed{
      expand(0, {Q(1), {}, {{0, 1}}}, P),
      expand(1, {Q(1), {{2, -1}}, {{1, 1}}}, P),
      expand(2, {Q(-1), {{2, -1}}, {{0, 1}, {2, -lin(2, -3)}}}, P),
      expand(3, {Q(-3), {{2, -1}, {2, -3}}, {{1, 1}, {3, Q(-1, 3) * lin(2, -5)}}}, P),
      expand(4, {Q(3), {{2, -1}, {2, -3}}, {{0, 1}, {2, Q(-2) * lin(2, -5)}, {4, Q(1, 3) * lin(2, -5) * lin(2, -7)}}},
             P)};
  for (unsigned n = 0; n < printed.size(); ++n) REQUIRE(gf_polynomial(n, P) == printed[n]);
}

TEST_CASE("paper list Case3 H0..H3 reproduced; printed H4, H5 differ", "[polyfam][paper]") {
  // Variable upsilon^2 = -q, factors (2 + k upsilon^2).
  const auto P = Parameterization::Case3;
  const std::vector<LambdaPoly> printed{
      expand(0, {Q(1), {}, {{0, 1}}}, P),
      expand(1, {Q(1), {{2, 1}}, {{1, 1}}}, P),
      expand(2, {Q(-1), {{2, 1}}, {{0, 1}, {2, -lin(2, 3)}}}, P),
      expand(3, {Q(-3), {{2, 1}, {2, 3}}, {{1, 1}, {3, Q(-1, 3) * lin(2, 5)}}}, P)};
  for (unsigned n = 0; n < printed.size(); ++n) REQUIRE(gf_polynomial(n, P) == printed[n]);
  // The printed H5 prefactor (2+u^2)^3 is not the recurrence result.
  const auto h5_printed_prefactor = Q(15) * lin(2, 1) * lin(2, 1) * lin(2, 1);
  REQUIRE_FALSE(gf_polynomial(5, P).coeff(1) == h5_printed_prefactor);
  REQUIRE(gf_polynomial(5, P) == gf_polynomial_by_recurrence(5, P));
}

TEST_CASE("generating function against an independent series expansion", "[polyfam][oracle]") {
  for (const Rational& q : {Q(1, 10), Q(3, 7), Q(-2, 5), Q(5, 3)}) {
    for (const Rational& xi : {Q(0), Q(1, 2), Q(-3, 4), Q(2)}) {
      const auto expected = gf_series_values(q, xi, 12);
      for (unsigned n = 0; n <= 12; ++n) {
        const LambdaPoly h = gf_polynomial(n, Parameterization::Case1);
        Rational v = 0, xk = 1;
        for (unsigned k = 0; k <= n; ++k) {
          v += h.coeff(k).eval(q) * xk;
          xk *= xi;
        }
        REQUIRE(v == expected[n]);
      }
    }
  }
}

TEST_CASE("three-term recurrence", "[polyfam]") {
  const auto P = Parameterization::Case1;
  const auto h0 = gf_polynomial(0, P), h1 = gf_polynomial(1, P), h2 = gf_polynomial(2, P);
  REQUIRE(three_term_next(h1, &h0, 1) == h2);
  REQUIRE(three_term_next(h0, nullptr, 0) == h1);
  // At q = 0 the recurrence is 2 xi H_m - 2 m H_{m-1}.
  for (unsigned m = 1; m < 8; ++m) {
    const LambdaPoly prev = gf_polynomial(m - 1, P);
    const auto next = harmonic_limit(three_term_next(gf_polynomial(m, P), &prev, m));
    const auto expected = hermite_physicists(m + 1);
    REQUIRE(next.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) REQUIRE(next[k] == expected[k]);
  }
  REQUIRE_THROWS_AS(three_term_next(h2, &h0, 1), Error);
  REQUIRE_THROWS_AS(three_term_next(h1, &h1, 1), Error);
  REQUIRE_THROWS_AS(three_term_next(h1, nullptr, 1), Error);
  try {
    three_term_next(h2, &h0, 2);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::DegreeMismatch);
  }
}

TEST_CASE("recurrence and derivative relation are exact to m = 15", "[polyfam]") {
  for (auto P : kAll) {
    for (unsigned m = 0; m <= 15; ++m) {
      REQUIRE(derivative_relation_residual(m, P).is_zero());
      REQUIRE(gf_polynomial_by_recurrence(m, P) == gf_polynomial(m, P));
      REQUIRE(gf_polynomial(m, P).has_parity());
      REQUIRE(rodrigues_polynomial(m, P).has_parity());
    }
  }
  // q = 0: H'_m = 2 m H_{m-1}.
  for (unsigned m = 1; m < 10; ++m) {
    const auto d = harmonic_limit(gf_polynomial(m, Parameterization::Case1).derivative());
    const auto h = hermite_physicists(m - 1);
    for (std::size_t k = 0; k < h.size(); ++k) REQUIRE(d[k] == 2 * static_cast<long>(m) * h[k]);
  }
}

TEST_CASE("Rodrigues construction examples", "[polyfam]") {
  const auto P = Parameterization::Case1;
  REQUIRE(rodrigues_polynomial(0, P) == expand(0, {Q(1), {}, {{0, 1}}}, P).from_unified(P));
  LambdaPoly r1(1, PolyTag::Rodrigues, P);
  r1.add_term(1, lin(2, -2));
  REQUIRE(rodrigues_polynomial(1, P) == r1);
  LambdaPoly r2(2, PolyTag::Rodrigues, P);
  r2.add_term(0, lin(-2, 4));
  r2.add_term(2, lin(-2, 4) * lin(-2, 3));
  REQUIRE(rodrigues_polynomial(2, P) == r2);
}

TEST_CASE("Rodrigues against exact differentiation at q = -1/k", "[polyfam][oracle]") {
  // With q = -1/k the kernel (1 - xi^2/k)^(n + k) is a polynomial, so the
  // formula can be evaluated with plain polynomial calculus.
  for (long k : {1L, 2L, 3L, 5L}) {
    const Rational q = Q(-1, k);
    const Dense w{Rational(1), Rational(0), q};
    for (unsigned n = 0; n <= 8; ++n) {
      Dense kernel{Rational(1)};
      for (unsigned i = 0; i < n + static_cast<unsigned>(k); ++i) kernel = mul(kernel, w);
      for (unsigned i = 0; i < n; ++i) kernel = deriv(kernel);
      Dense wk{Rational(1)};
      for (long i = 0; i < k; ++i) wk = mul(wk, w);
      Dense expected = exact_div(kernel, wk);
      if (n % 2) {
        for (auto& c : expected) c = -c;
      }
      const LambdaPoly r = rodrigues_polynomial(n, Parameterization::Case1);
      for (unsigned j = 0; j < std::max<std::size_t>(expected.size(), n + 1); ++j) {
        const Rational e = j < expected.size() ? expected[j] : Rational(0);
        REQUIRE(r.coeff(j).eval(q) == e);
      }
    }
  }
}

TEST_CASE("Rodrigues is proportional to the generating function", "[polyfam]") {
  for (auto P : kAll) {
    for (unsigned n = 0; n <= 10; ++n) {
      const auto check = proportionality_ratio(n, P);
      REQUIRE(check.proportional());
      REQUIRE(check.ratio->at_zero() == 1);
    }
  }
  const auto r0 = proportionality_ratio(0, Parameterization::Case1);
  REQUIRE(r0.ratio->equals({DeformationPoly(1), DeformationPoly(1)}));
  const auto r1 = proportionality_ratio(1, Parameterization::Case1);
  REQUIRE(r1.ratio->equals({lin(2, -2), lin(2, -1)}));
  const auto r2 = proportionality_ratio(2, Parameterization::Case1);
  REQUIRE(r2.ratio->equals({lin(-2, 4), lin(-2, 1)}));
  REQUIRE_THAT(r2.ratio->eval(0.1), WithinAbs((0.4 - 2) / (0.1 - 2), 1e-15));
}

TEST_CASE("harmonic limits are the physicists' Hermite polynomials", "[polyfam]") {
  REQUIRE(harmonic_limit(gf_polynomial(2, Parameterization::Case1)) == IntegerPoly{-2, 0, 4});
  REQUIRE(harmonic_limit(gf_polynomial(4, Parameterization::Case1)) == IntegerPoly{12, 0, -48, 0, 16});
  REQUIRE(harmonic_limit(gf_polynomial(1, Parameterization::Case1)) == IntegerPoly{0, 2});
  for (auto P : kAll) {
    for (unsigned n = 0; n <= 12; ++n) {
      const auto h = harmonic_limit(gf_polynomial(n, P));
      const auto r = harmonic_limit(rodrigues_polynomial(n, P));
      const auto e = hermite_physicists(n);
      REQUIRE(h.size() == e.size());
      for (std::size_t k = 0; k < e.size(); ++k) {
        REQUIRE(h[k] == e[k]);
        REQUIRE(r[k] == e[k]);
      }
      REQUIRE(h.back() == Integer(1) << n);
    }
  }
}

TEST_CASE("parameterizations are one family", "[polyfam]") {
  for (unsigned n = 0; n <= 12; ++n) {
    const auto c1 = gf_polynomial(n, Parameterization::Case1);
    const auto c2 = gf_polynomial(n, Parameterization::Case2);
    const auto c3 = gf_polynomial(n, Parameterization::Case3);
    for (const auto& [k, c] : c1.coeffs()) {
      REQUIRE(c2.coeff(k) == c);
      REQUIRE(c3.coeff(k) == c.negate_variable());
    }
    REQUIRE(c3.to_unified().coeffs() == c1.coeffs());
    REQUIRE(c1.from_unified(Parameterization::Case3) == c3);
  }
}

TEST_CASE("symbolic printer reproduces the printed lists", "[polyfam][paper]") {
  const std::vector<std::string> case1{"1",
                                       "(2-λ̃)ζ",
                                       "(-1)(2-λ̃)[1+(3λ̃-2)ζ²]",
                                       "(-3)(2-λ̃)(2-3λ̃)[ζ+(1/3)(5λ̃-2)ζ³]",
                                       "(3)(2-λ̃)(2-3λ̃)[1+2(5λ̃-2)ζ²+(1/3)(5λ̃-2)(7λ̃-2)ζ⁴]",
                                       "(15)(2-λ̃)(2-3λ̃)(2-5λ̃)[ζ+(2/3)(7λ̃-2)ζ³+(1/15)(7λ̃-2)(9λ̃-2)ζ⁵]"};
  for (unsigned n = 0; n < case1.size(); ++n) {
    REQUIRE(format_symbolic(gf_polynomial(n, Parameterization::Case1)) == case1[n]);
  }
  const std::vector<std::string> case2{"1", "(2-1/μ)ς", "(-1)(2-1/μ)[1-(2-3/μ)ς²]",
                                       "(-3)(2-1/μ)(2-3/μ)[ς-(1/3)(2-5/μ)ς³]",
                                       "(3)(2-1/μ)(2-3/μ)[1-2(2-5/μ)ς²+(1/3)(2-5/μ)(2-7/μ)ς⁴]"};
  for (unsigned n = 0; n < case2.size(); ++n) {
    REQUIRE(format_symbolic(gf_polynomial(n, Parameterization::Case2)) == case2[n]);
  }
  REQUIRE(format_symbolic(gf_polynomial(3, Parameterization::Case3)) == "(-3)(2+υ²)(2+3υ²)[ϱ-(1/3)(2+5υ²)ϱ³]");
  REQUIRE(format_expanded(gf_polynomial(1, Parameterization::Case1)) == "(2-λ̃)ζ");
  REQUIRE(format_expanded(gf_polynomial(2, Parameterization::Case1)) == "(-2+λ̃)+(4-8λ̃+3λ̃²)ζ²");
}

TEST_CASE("eigenfunction samples", "[polyfam]") {
  SECTION("constant-mass ground state is a normalized Gaussian") {
    const auto f = make_family(ProfileKind::Constant, 1.0, 0.0);
    const Grid g = Grid::make(-10.0, 10.0, 1999);  // h = 0.01: x = 0 at i = 999, x = 1 at i = 1099
    const auto phi = eigenfunction_samples(f, 0, g);
    REQUIRE_THAT(g.points[999], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(g.points[1099], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(phi[1099] / phi[999], WithinRel(std::exp(-0.5), 1e-11));
    REQUIRE_THAT(phi[999], WithinRel(std::pow(M_PI, -0.25), 1e-10));
    REQUIRE_THAT(inner_product(phi, phi, g), WithinAbs(1.0, 1e-12));
  }
  SECTION("Case1 ground state is (1 + 0.1 xi^2)^-5") {
    const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
    const Grid g = build_grid(f, 2000);
    const auto phi = eigenfunction_samples(f, 0, g);
    for (std::size_t i : {100u, 700u, 1000u, 1500u}) {
      const double x = g.points[i];
      REQUIRE_THAT(phi[i] / phi[1000], WithinRel(std::pow(1 + 0.1 * x * x, -5.0) /
                                                     std::pow(1 + 0.1 * g.points[1000] * g.points[1000], -5.0),
                                                 1e-12));
    }
  }
  SECTION("node counts and parity") {
    const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
    const Grid g = build_grid(f, 4000);
    for (std::size_t n = 0; n < 10; ++n) {
      const auto phi = eigenfunction_samples(f, n, g);
      REQUIRE(count_sign_changes(phi) == n);
      const double sgn = n % 2 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < g.n; i += 97) {
        REQUIRE_THAT(phi[g.n - 1 - i], WithinAbs(sgn * phi[i], 1e-12));
      }
    }
    const auto c3 = make_family(ProfileKind::Case3, 1.0, 0.2);
    const Grid g3 = build_grid(c3, 2000);
    for (std::size_t n = 0; n < 8; ++n) REQUIRE(count_sign_changes(eigenfunction_samples(c3, n, g3)) == n);
  }
  SECTION("errors") {
    const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
    const Grid g = build_grid(f, 100);
    try {
      eigenfunction_samples(f, 10, g);
      FAIL("expected NotABoundState");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::NotABoundState);
    }
    const auto c3 = make_family(ProfileKind::Case3, 1.0, 0.2);
    try {
      eigenfunction_samples(c3, 0, Grid::make(-6.0, 6.0, 100));
      FAIL("expected OutOfDomain");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::OutOfDomain);
    }
  }
}

TEST_CASE("sampled eigenfunctions are orthonormal", "[polyfam]") {
  const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
  const Grid g = build_grid(f, 4000);
  std::vector<std::vector<double>> phi;
  for (std::size_t n = 0; n < 6; ++n) phi.push_back(eigenfunction_samples(f, n, g));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      REQUIRE_THAT(inner_product(phi[i], phi[j], g), WithinAbs(i == j ? 1.0 : 0.0, 1e-6));
    }
  }
}
