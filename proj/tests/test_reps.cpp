#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "torsionlab/sampling.hpp"
#include "torsionlab/twist_reps.hpp"

using namespace torsionlab;
using C = Cplx;

namespace {
const double kPi = std::acos(-1.0);

Matrix<C> diag2(const C& top, const C& bottom) {
  Matrix<C> m(2, 2);
  m(0, 0) = top;
  m(1, 1) = bottom;
  return m;
}
}  // namespace

TEST_CASE("sym_power: identity maps to identity") {
  CHECK(sym_power(Matrix<C>::identity(2), 4).residual_vs_identity() < 1e-15);
  CHECK(sym_power(Matrix<C>::identity(2), 7).residual_vs_identity() < 1e-15);
}

TEST_CASE("sym_power: diagonal input scales the monomial basis") {
  const C xi = std::polar(1.0, kPi / 9);
  const Matrix<C> m = sym_power(diag2(xi, 1.0 / xi), 4);
  // basis x^3, x^2 y, x y^2, y^3 picks up xi^-3, xi^-1, xi, xi^3
  const C want[] = {1.0 / (xi * xi * xi), 1.0 / xi, xi, xi * xi * xi};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(m(i, j) - (i == j ? want[i] : C(0, 0))) < 1e-14);
}

TEST_CASE("sym_power: dimension 2 lift of a diagonal matrix swaps the entries") {
  const C xi = std::polar(1.0, 0.4);
  const Matrix<C> m = sym_power(diag2(xi, 1.0 / xi), 2);
  CHECK(std::abs(m(0, 0) - 1.0 / xi) < 1e-15);
  CHECK(std::abs(m(1, 1) - xi) < 1e-15);
}

TEST_CASE("sym_power: homomorphism property") {
  auto rng = std::mt19937_64(21);
  for (int it = 0; it < 20; ++it) {
    const Matrix<C> a = random_sl2<C>(rng), b = random_sl2<C>(rng);
    const Matrix<C> lhs = sym_power(a * b, 3);
    const Matrix<C> rhs = sym_power(a, 3) * sym_power(b, 3);
    CHECK((lhs - rhs).max_abs() < 1e-12 * (1.0 + rhs.max_abs()));
  }
}

TEST_CASE("sym_power: determinant stays 1") {
  auto rng = std::mt19937_64(22);
  for (int dim : {2, 3, 4, 6, 8}) {
    const Matrix<C> m = sym_power(random_sl2<C>(rng), dim);
    CHECK(std::abs(det(m) - C(1, 0)) < 1e-9);
  }
}

TEST_CASE("sym_power: rejects non-unimodular input") {
  Matrix<C> m = Matrix<C>::identity(2);
  m(0, 0) = C(2, 0);
  CHECK_THROWS_AS(sym_power(m, 4), std::domain_error);
  CHECK_THROWS_AS(sym_power(Matrix<C>::identity(3), 2), std::invalid_argument);
}

TEST_CASE("metabelian_rep: parameter formula and structure") {
  const Rep<C> rep = metabelian_rep<C>(1, 1);
  CHECK(*rep.meta.u == doctest::Approx(-1.3819660112501051).epsilon(1e-12));
  // trace-free meridian image of order 4
  const Matrix<C>& a = rep.image(0);
  CHECK(std::abs(a(0, 0) + a(1, 1)) < 1e-15);
  CHECK((a * a + Matrix<C>::identity(2)).max_abs() < 1e-15);
  CHECK(std::abs(det(a) - C(1, 0)) < 1e-15);
  CHECK(std::abs(det(rep.image(1)) - C(1, 0)) < 1e-15);

  // u_2 = -4 sin^2(2 pi/5)
  const Rep<C> rep2 = metabelian_rep<C>(1, 2);
  CHECK(*rep2.meta.u ==
        doctest::Approx(-4.0 * std::pow(std::sin(2.0 * kPi / 5.0), 2)).epsilon(1e-12));
}

TEST_CASE("metabelian_rep: relator residual, including negative n") {
  for (int n : {1, 2, 3, -2, -3})
    for (int k = 1; k <= metabelian_class_count(n); ++k) {
      const Rep<C> rep = metabelian_rep<C>(n, k);
      CHECK(verify_relations(rep).max_residual < 1e-12);
    }
}

TEST_CASE("metabelian_rep: range errors") {
  CHECK_THROWS_AS(metabelian_rep<C>(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(metabelian_rep<C>(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(metabelian_rep<C>(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(metabelian_rep<C>(1, 3), std::invalid_argument);  // count is 2
}

TEST_CASE("graph_manifold_rep: normal form entries for n=1, j=1") {
  const Rep<C> rep = graph_manifold_rep<C>(1, 1);
  const C xi = RootOfUnity(1, 5).embed<C>();
  CHECK(std::abs(rep.image(1)(0, 0) - xi * xi) < 1e-14);            // b
  CHECK(std::abs(rep.image(0)(0, 0) - xi * xi * xi) < 1e-14);       // a
  CHECK(std::abs(rep.image(3)(0, 0) - 1.0 / xi) < 1e-14);           // y
  CHECK(std::abs(rep.image(2)(0, 1) - C(1, 0)) < 1e-15);            // x
  CHECK(std::abs(rep.image(2)(1, 0) + C(1, 0)) < 1e-15);
  CHECK(verify_relations(rep).max_residual < 1e-12);
}

TEST_CASE("graph_manifold_rep: a^p = -1 and b^p = 1") {
  {
    const Rep<C> rep = graph_manifold_rep<C>(1, 1);  // p = 5
    const Matrix<C> ap = evaluate_word(rep, Word::generator(0).pow(5));
    CHECK((ap + Matrix<C>::identity(2)).max_abs() < 1e-13);
  }
  {
    const Rep<C> rep = graph_manifold_rep<C>(2, 2);  // p = 9
    const Matrix<C> bp = evaluate_word(rep, Word::generator(1).pow(9));
    CHECK(bp.residual_vs_identity() < 1e-13);
  }
}

TEST_CASE("graph_manifold_rep: range errors") {
  CHECK_THROWS_AS(graph_manifold_rep<C>(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(graph_manifold_rep<C>(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(graph_manifold_rep<C>(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(graph_manifold_rep<C>(1, 3), std::invalid_argument);
}

TEST_CASE("graph_manifold_rep: meridian image matches the eigenvalue data") {
  for (int n : {1, 2, -2})
    for (int j = 1; j <= metabelian_class_count(n); ++j) {
      const Rep<C> rep = graph_manifold_rep<C>(n, j);
      const Matrix<C> mu = evaluate_word(rep, surgery_meridian_word(n));
      const C xi = eigenvalue_index(n, j).xi.embed<C>();
      CHECK(std::abs(mu(0, 0) - xi) < 1e-13);
      CHECK(std::abs(mu(1, 1) - 1.0 / xi) < 1e-13);
    }
}

TEST_CASE("classify_klein: the three cases") {
  // case 1: y -> identity, x arbitrary (unimodular)
  {
    auto rng = std::mt19937_64(31);
    Rep<C> rep{klein_bottle_presentation(), {random_sl2<C>(rng), Matrix<C>::identity(2)}, {}};
    CHECK(classify_klein(rep).kind == KleinCaseKind::abelian);
    rep.images[1] = Matrix<C>::identity(2) * C(-1, 0);
    CHECK(classify_klein(rep).kind == KleinCaseKind::abelian);
  }
  // case 2: the restriction of the surgery representation, eta = 1/xi
  {
    const Rep<C> kb = restrict_to_klein(graph_manifold_rep<C>(1, 1));
    const KleinCase<C> c = classify_klein(kb);
    CHECK(c.kind == KleinCaseKind::irreducible);
    REQUIRE(c.eta.has_value());
    CHECK(std::abs(*c.eta - RootOfUnity(1, 5).inverse().embed<C>()) < 1e-13);
  }
  // case 3: +-unipotent y with anti-diagonal-compatible x
  {
    Matrix<C> y = Matrix<C>::identity(2);
    y(0, 1) = C(1, 0);
    Matrix<C> x(2, 2);
    x(0, 0) = C(0, 1);
    x(1, 1) = C(0, -1);
    Rep<C> rep{klein_bottle_presentation(), {x, y}, {}};
    const KleinCase<C> c = classify_klein(rep);
    CHECK(c.kind == KleinCaseKind::reducible_non_abelian);
    REQUIRE(c.omega.has_value());
    REQUIRE(c.omega_p.has_value());
    CHECK(std::abs(*c.omega - C(1, 0)) < 1e-13);
    CHECK(std::abs(*c.omega_p - C(0, 0)) < 1e-13);
  }
}

TEST_CASE("classify_klein: rejects a rep violating the relation") {
  auto rng = std::mt19937_64(32);
  Rep<C> rep{klein_bottle_presentation(), {random_sl2<C>(rng), random_sl2<C>(rng)}, {}};
  CHECK_THROWS_AS(classify_klein(rep), std::domain_error);
}

TEST_CASE("is_irreducible") {
  // trivial rep is reducible
  Rep<C> trivial{klein_bottle_presentation(),
                 {Matrix<C>::identity(2), Matrix<C>::identity(2)},
                 {}};
  CHECK_FALSE(is_irreducible(trivial));

  // metabelian representatives are irreducible
  for (int k : {1, 2}) CHECK(is_irreducible(metabelian_rep<C>(1, k)));

  // the torus-knot restriction is diagonal, hence reducible (abelian)
  const Rep<C> rep = graph_manifold_rep<C>(1, 1);
  CHECK_FALSE(is_irreducible(restrict_to_torus_knot(rep, 1)));
  CHECK(is_abelian(restrict_to_torus_knot(rep, 1)));

  // the Klein-bottle restriction is irreducible
  CHECK(is_irreducible(restrict_to_klein(rep)));

  // upper-triangular pair with a shared eigenvector is reducible
  Matrix<C> u = Matrix<C>::identity(2);
  u(0, 1) = C(1, 0);
  Matrix<C> v = diag2(C(2, 0), C(0.5, 0));
  v(0, 1) = C(0.3, 0.1);
  Rep<C> upper{klein_bottle_presentation(), {u, v}, {}};
  CHECK_FALSE(is_irreducible(upper));
}

TEST_CASE("is_metabelian") {
  // abelian representations are metabelian
  Rep<C> ab{torus_knot_presentation(1),
            {diag2(std::polar(1.0, 0.7), std::polar(1.0, -0.7)),
             diag2(std::polar(1.0, 0.2), std::polar(1.0, -0.2))},
            {}};
  CHECK(is_metabelian(ab));

  // the irreducible metabelian representatives
  CHECK(is_metabelian(metabelian_rep<C>(1, 2)));
  CHECK(is_metabelian(metabelian_rep<C>(-2, 3)));

  // a generic irreducible pair is not metabelian
  auto rng = std::mt19937_64(33);
  Rep<C> generic{torus_knot_presentation(1), {random_sl2<C>(rng), random_sl2<C>(rng)}, {}};
  CHECK_FALSE(is_metabelian(generic));

  // requires a two-generator presentation
  Rep<C> four{surgery_presentation(1),
              {Matrix<C>::identity(2), Matrix<C>::identity(2), Matrix<C>::identity(2),
               Matrix<C>::identity(2)},
              {}};
  CHECK_THROWS_AS(is_metabelian(four), std::invalid_argument);
}

TEST_CASE("distinct metabelian classes count") {
  for (int n : {1, 2, -2, 3}) {
    const int count = metabelian_class_count(n);
    std::vector<double> us;
    for (int k = 1; k <= count; ++k) us.push_back(*metabelian_rep<C>(n, k).meta.u);
    for (size_t i = 0; i < us.size(); ++i)
      for (size_t j = i + 1; j < us.size(); ++j)
        CHECK(std::abs(us[i] - us[j]) > 1e-9);
  }
}

TEST_CASE("x-image sign choice does not change the relations") {
  for (int n : {1, -2})
    for (int j = 1; j <= metabelian_class_count(n); ++j) {
      CHECK(verify_relations(graph_manifold_rep<C>(n, j, false)).max_residual < 1e-12);
      CHECK(verify_relations(graph_manifold_rep<C>(n, j, true)).max_residual < 1e-12);
    }
}
