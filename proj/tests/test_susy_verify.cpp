#include <cmath>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "pdem/core_model.hpp"
#include "pdem/discrete.hpp"
#include "pdem/export.hpp"
#include "pdem/sparse.hpp"
#include "pdem/susy_verify.hpp"

using namespace pdem;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("sparse matrix algebra", "[susy]") {
  SparseMatrix a(2, 3);
  a.add(0, 0, 1.0);
  a.add(0, 2, 2.0);
  a.add(1, 1, -3.0);
  const SparseMatrix at = a.transpose();
  REQUIRE(at.rows() == 3);
  REQUIRE(at.at(2, 0) == 2.0);
  const SparseMatrix p = a * at;
  REQUIRE(p.at(0, 0) == 5.0);
  REQUIRE(p.at(1, 1) == 9.0);
  REQUIRE(p.at(0, 1) == 0.0);
  REQUIRE((a - a).max_abs() == 0.0);
  REQUIRE(a.norm_inf() == 3.0);
  REQUIRE(a.bandwidth() == 2);
  const auto y = a.apply(std::vector<double>{1.0, 1.0, 1.0});
  REQUIRE(y == std::vector<double>{3.0, -3.0});
  SparseMatrix big(4, 4);
  big.insert_block(a, 1, 1);
  REQUIRE(big.at(1, 3) == 2.0);
  REQUIRE(big.block(1, 1, 2, 3) == a);
  REQUIRE(SparseMatrix::identity(3) * a.transpose() == a.transpose());
}

TEST_CASE("ladder matrices", "[susy]") {
  SECTION("constant mass: harmonic ladder") {
    const auto f = make_family(ProfileKind::Constant, 1.0, 0.0);
    const Grid g = build_grid(f, 200);
    const auto lad = build_ladder(f, 1.0, g);
    REQUIRE(lad.A.bandwidth() == 1);
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
      REQUIRE_THAT(lad.A.at(i, i), WithinRel(g.points[i] / std::sqrt(2.0), 1e-14));
      REQUIRE_THAT(lad.A.at(i, i + 1), WithinRel(1.0 / (2.0 * g.h * std::sqrt(2.0)), 1e-14));
      REQUIRE_THAT(lad.A.at(i, i - 1), WithinRel(-1.0 / (2.0 * g.h * std::sqrt(2.0)), 1e-14));
    }
    REQUIRE(lad.Adag == lad.A.transpose());
  }
  SECTION("Case1 derivative prefactor sqrt((1 + lambda x^2)/2)") {
    const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
    const Grid g = build_grid(f, 400);
    const auto lad = build_ladder(f, 1.0, g);
    for (std::size_t i : {1u, 100u, 200u, 398u}) {
      const double x = g.points[i];
      REQUIRE_THAT(lad.A.at(i, i + 1) * 2.0 * g.h, WithinRel(std::sqrt((1 + 0.1 * x * x) / 2.0), 1e-13));
      REQUIRE_THAT(lad.A.at(i, i), WithinRel(superpotential_at(f, 1.0, x), 1e-14));
    }
  }
  SECTION("Adag A is symmetric and Adag is the adjoint") {
    for (auto kind : {ProfileKind::Constant, ProfileKind::Case1, ProfileKind::Case2, ProfileKind::Case3}) {
      const double lambda = kind == ProfileKind::Case2 ? 10.0 : kind == ProfileKind::Case3 ? 0.2 : 0.1;
      const auto f = make_family(kind, 1.0, lambda);
      const Grid g = build_grid(f, 500);
      const auto lad = build_ladder(f, f.alpha0(), g);
      const SparseMatrix h = lad.Adag * lad.A;
      REQUIRE(h == h.transpose());
      REQUIRE(adjointness_defect(lad, g) <= 1e-12);
      REQUIRE(adjointness_defect(lad, g, 12345) <= 1e-12);
    }
  }
}

TEST_CASE("annihilation of the ground state", "[susy]") {
  const auto c = make_family(ProfileKind::Constant, 1.0, 0.0);
  REQUIRE(verify_annihilation(c, build_grid(c, 2000)) <= 1e-4);
  const auto c1 = make_family(ProfileKind::Case1, 1.0, 0.1);
  REQUIRE(verify_annihilation(c1, build_grid(c1, 4000)) <= 1e-4);
  // Quarters with h.
  const Grid g = build_grid(c, 1000);
  const double r1 = verify_annihilation(c, g);
  const double r2 = verify_annihilation(c, g.refined());
  REQUIRE(r1 / r2 > 3.5);
}

TEST_CASE("factorization", "[susy]") {
  const auto c = make_family(ProfileKind::Constant, 1.0, 0.0);
  const auto c1 = make_family(ProfileKind::Case1, 1.0, 0.0);
  const Grid g = build_grid(c, 1000);
  REQUIRE(verify_factorization(c, g) == verify_factorization(c1, g));
  REQUIRE(verify_factorization(c, g) / verify_factorization(c, g.refined()) >= 2.0);

  const auto c3 = make_family(ProfileKind::Case3, 1.0, 0.2);
  const Grid g3 = build_grid(c3, 1000);
  const double a = verify_factorization(c3, g3);
  const double b = verify_factorization(c3, g3.refined());
  REQUIRE(std::isfinite(a));
  REQUIRE(b < a);
}

TEST_CASE("intertwining and the state map", "[susy]") {
  const auto c = make_family(ProfileKind::Constant, 1.0, 0.0);
  const Grid g = build_grid(c, 4000);
  const auto r = verify_intertwining(c, g);
  REQUIRE(r.minus <= 1e-3);
  REQUIRE(r.plus <= 1e-3);
  const auto coarse = verify_intertwining(c, build_grid(c, 1999));
  REQUIRE(coarse.minus / r.minus >= 2.0);

  const auto c1 = make_family(ProfileKind::Case1, 1.0, 0.1);
  const auto r1 = verify_intertwining(c1, build_grid(c1, 4000));
  REQUIRE(r1.min_cosine >= 0.999);
  REQUIRE(r1.min_cosine <= 1.0 + 1e-12);
}

TEST_CASE("superalgebra holds exactly", "[susy]") {
  for (auto kind : {ProfileKind::Constant, ProfileKind::Case1, ProfileKind::Case3}) {
    const auto f = make_family(kind, 1.0, kind == ProfileKind::Case3 ? 0.2 : 0.1);
    const auto s = verify_superalgebra(f, build_grid(f, 300));
    REQUIRE(s.nilpotency == 0.0);
    REQUIRE(s.anticommutator == 0.0);
  }
}

TEST_CASE("shift identity", "[susy]") {
  for (const double lambda : {0.0, 0.1}) {
    const auto f = make_family(ProfileKind::Case1, 1.0, lambda);
    const Grid g = build_grid(f, 1000);
    const double a = verify_shift_identity(f, g);
    const double b = verify_shift_identity(f, g.refined());
    REQUIRE(a / b >= 2.0);
  }
  // Continuum statement V+(x; a1) - V-(x; a2) = R(a1).
  const auto f = make_family(ProfileKind::Case3, 1.0, 0.2);
  for (double x : {-4.0, -1.0, 0.0, 2.5}) {
    REQUIRE_THAT(potential_plus(f, f.alpha(0), x) - potential_minus(f, f.alpha(1), x),
                 WithinAbs(remainder(f, f.alpha(0)), 1e-12));
  }
}

TEST_CASE("algebraic partner spectrum identity", "[susy]") {
  const ShapeInvariantFamily families[] = {
      make_family(ProfileKind::Constant, 1.0, 0.0), make_family(ProfileKind::Case1, 1.0, 0.01),
      make_family(ProfileKind::Case1, 0.7, -0.2), make_family(ProfileKind::Case2, 1.0, 100.0),
      make_family(ProfileKind::Case3, 1.3, 0.2)};
  for (const auto& f : families) {
    const auto f1 = f.shifted(1);
    for (std::size_t n = 0; n <= 20; ++n) {
      if (!is_bound(f, n + 1)) break;
      // E_n^(+)(alpha_0) = E_n^(-)(alpha_1) + R(alpha_0), and equals E_{n+1}^(-)(alpha_0).
      const double e_plus = energy(f1, n) - ground_energy(f1) + remainder(f, f.alpha(0));
      const double e_minus_next = energy(f, n + 1) - ground_energy(f);
      REQUIRE_THAT(e_plus, WithinAbs(e_minus_next, 1e-12 * std::max(1.0, std::abs(e_minus_next))));
    }
  }
}

TEST_CASE("residual report and refinement", "[susy]") {
  const auto f = make_family(ProfileKind::Case1, 1.0, 0.1);
  const Grid g = build_grid(f, 1000);
  const auto study = refinement_study(f, g, 3);
  REQUIRE(study.size() == 3);
  REQUIRE(study[1].grid_n == 2001);
  REQUIRE(study[2].grid_n == 4003);
  for (const std::string name : {"annihilation", "factorization", "intertwine_minus", "intertwine_plus",
                                 "shift_identity"}) {
    CAPTURE(name);
    for (std::size_t l = 0; l + 1 < study.size(); ++l) {
      REQUIRE(study[l].find(name)->value / study[l + 1].find(name)->value >= 1.8);
    }
  }
  const auto& fine = study.back();
  REQUIRE(fine.all_pass());
  REQUIRE(fine.find("superalgebra_offdiag")->value == 0.0);
  REQUIRE(fine.find("superalgebra_anticommutator")->value == 0.0);
  REQUIRE_FALSE(fine.find("no_such_entry").has_value());
  for (const auto& e : fine.entries) {
    REQUIRE(e.grid_n == 4003);
    REQUIRE(e.kind == ProfileKind::Case1);
    REQUIRE(e.lambda == 0.1);
    REQUIRE(e.alpha == 1.0);
  }

  const auto j = io::report_json(fine);
  REQUIRE(j["family"] == "case1");
  REQUIRE(j["grid_n"] == 4003);
  REQUIRE(j["residuals"]["annihilation"]["pass"] == true);
  REQUIRE(j["residuals"]["annihilation"]["tolerance"].get<double>() == ResidualTolerances{}.annihilation);
  REQUIRE(j["residuals"].size() == fine.entries.size());

  ResidualTolerances strict;
  strict.annihilation = 1e-30;
  const auto failing = run_verification(f, g, strict);
  REQUIRE_FALSE(failing.all_pass());
  REQUIRE_FALSE(failing.find("annihilation")->pass());
}
