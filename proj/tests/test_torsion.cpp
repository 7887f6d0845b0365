#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "torsionlab/asymptotics.hpp"
#include "torsionlab/sampling.hpp"
#include "torsionlab/torsion_formulas.hpp"

using namespace torsionlab;
using C = Cplx;

namespace {

Matrix<C> diag2(const C& top, const C& bottom) {
  Matrix<C> m(2, 2);
  m(0, 0) = top;
  m(1, 1) = bottom;
  return m;
}

Rep<C> klein_case2(const C& eta) {
  Matrix<C> x(2, 2);
  x(0, 1) = C(-1, 0);
  x(1, 0) = C(1, 0);
  return Rep<C>{klein_bottle_presentation(), {x, diag2(eta, C(1, 0) / eta)}, {}};
}

Rep<C> abelian_torus_knot_rep(int n, const RootOfUnity& xi) {
  Rep<C> rep{torus_knot_presentation(n),
             {diag2(xi.pow(2 * n + 1).embed<C>(), xi.pow(-(2 * n + 1)).embed<C>()),
              diag2(xi.pow(2).embed<C>(), xi.pow(-2).embed<C>())},
             {}};
  rep.meta.xi = xi;
  return rep;
}

}  // namespace

TEST_CASE("generic engine: identity boundary has torsion 1") {
  TwistedChainComplex<C> cx;
  cx.degrees = {3, 3};
  cx.boundaries = {Matrix<C>::identity(3)};
  const auto t = generic_torsion_product(cx);
  CHECK(std::abs(t.log_magnitude) < 1e-14);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(1, 0)) < 1e-14);
}

TEST_CASE("generic engine: an upper-triangular boundary") {
  TwistedChainComplex<C> cx;
  cx.degrees = {2, 2};
  Matrix<C> b(2, 2);
  b(0, 0) = C(2, 0);
  b(0, 1) = C(7, 0);
  b(1, 1) = C(3, 0);
  cx.boundaries = {b};
  const auto t = generic_torsion_product(cx);
  // single degree-0 matrix, exponent -1: torsion = 1/det = 1/6
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(1.0 / 6.0, 0)) < 1e-13);
}

TEST_CASE("generic engine: rank defect is reported with its degree") {
  Rep<C> trivial{klein_bottle_presentation(),
                 {Matrix<C>::identity(2), Matrix<C>::identity(2)},
                 {}};
  const auto cx = klein_bottle_complex(trivial, 1);
  try {
    generic_torsion_product(cx);
    FAIL("expected TorsionUndefined");
  } catch (const TorsionUndefined& e) {
    CHECK(e.degree() == 0);
  }
}

TEST_CASE("generic engine: dimension cap") {
  TwistedChainComplex<C> cx;
  cx.degrees = {300, 300};
  cx.boundaries = {Matrix<C>::identity(300)};
  CHECK_THROWS_AS(generic_torsion_product(cx), std::invalid_argument);
}

TEST_CASE("klein complex: shape, labels and chain condition") {
  const Rep<C> rep = klein_case2(std::polar(1.0, std::acos(-1.0) / 5));
  for (int N : {1, 2, 3}) {
    const auto cx = klein_bottle_complex(rep, N);
    CHECK(cx.degrees == std::vector<int>{2 * N, 4 * N, 2 * N});
    CHECK(cx.chain_condition_residual() < 1e-12);
    CHECK(cx.labels[1].size() == size_t(4 * N));
  }
}

TEST_CASE("klein complex: boundary blocks match group-ring evaluation") {
  const Rep<C> rep = restrict_to_klein(graph_manifold_rep<C>(1, 1));
  const int dim = 4;
  const auto cx = klein_bottle_complex(rep, 2);
  const Matrix<C> one_minus_y =
      eval_group_ring(GroupRingElement::one() - GroupRingElement(Word::generator(1)),
                      rep, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      CHECK(std::abs(cx.boundaries[1](i, j) - one_minus_y(i, j)) < 1e-13);
}

TEST_CASE("klein complex: acyclic for the irreducible case, not for the trivial rep") {
  const auto cx = klein_bottle_complex(klein_case2(std::polar(1.0, 0.61)), 1);
  CHECK_NOTHROW(generic_torsion_product(cx));

  Rep<C> trivial{klein_bottle_presentation(),
                 {Matrix<C>::identity(2), Matrix<C>::identity(2)},
                 {}};
  CHECK_THROWS_AS(generic_torsion_product(klein_bottle_complex(trivial, 2)),
                  TorsionUndefined);
}

TEST_CASE("klein complex: rejects a rep violating the relation") {
  auto rng = std::mt19937_64(41);
  Rep<C> bad{klein_bottle_presentation(), {random_sl2<C>(rng), random_sl2<C>(rng)}, {}};
  CHECK_THROWS_AS(klein_bottle_complex(bad, 1), std::domain_error);
}

TEST_CASE("klein torsion: equals 1 for irreducible-case reps, any N") {
  for (double angle : {0.3, 1.1, 2.9}) {
    const Rep<C> rep = klein_case2(std::polar(1.0, angle));
    for (int N = 1; N <= 10; ++N) {
      const auto t = klein_bottle_torsion(rep, N);
      CHECK(std::abs(t.log_magnitude) < 1e-10);
      REQUIRE(t.value);
      CHECK(std::abs(*t.value - C(1, 0)) < 1e-10);
    }
  }
}

TEST_CASE("klein torsion: generic engine agrees on dimensions 2, 4, 6") {
  const Rep<C> rep = restrict_to_klein(graph_manifold_rep<C>(2, 1));
  for (int N : {1, 2, 3}) {
    const auto closed = klein_bottle_torsion(rep, N);
    const auto engine = generic_torsion_product(klein_bottle_complex(rep, N));
    CHECK(std::abs(engine.log_magnitude - closed.log_magnitude) < 1e-10);
    REQUIRE(engine.value);
    REQUIRE(closed.value);
    CHECK(std::abs(*engine.value - *closed.value) < 1e-10);
    CHECK(std::abs(*closed.value - C(1, 0)) < 1e-10);
  }
}

TEST_CASE("klein torsion: second branch when det(Y-1) = 0") {
  // y -> identity, x -> diag(2, 1/2): branch two gives det(-XY-1)/det(X-1) = -9
  Rep<C> rep{klein_bottle_presentation(),
             {diag2(C(2, 0), C(0.5, 0)), Matrix<C>::identity(2)},
             {}};
  const auto t = klein_bottle_torsion(rep, 1);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(-9, 0)) < 1e-12);

  // engine agrees on the same complex
  const auto engine = generic_torsion_product(klein_bottle_complex(rep, 1));
  REQUIRE(engine.value);
  CHECK(std::abs(*engine.value - C(-9, 0)) < 1e-10);
}

TEST_CASE("klein torsion: the two branches agree when both are defined") {
  const Rep<C> rep = klein_case2(std::polar(1.0, 0.77));
  for (int N : {1, 2}) {
    const int dim = 2 * N;
    const Matrix<C> X = dim == 2 ? rep.image(0) : sym_power(rep.image(0), dim);
    const Matrix<C> Y = dim == 2 ? rep.image(1) : sym_power(rep.image(1), dim);
    const Matrix<C> I = Matrix<C>::identity(dim);
    const C b1 = det(I - Y) / det(Y - I);
    const C b2 = det(-(X * Y) - I) / det(X - I);
    CHECK(std::abs(b1 - b2) < 1e-10);
    CHECK(std::abs(b1 - C(1, 0)) < 1e-12);  // (-1)^(2N)
  }
}

TEST_CASE("klein torsion: undefined when both branches degenerate") {
  // y -> identity and x -> unipotent: det(Y-1) = det(X-1) = 0
  Matrix<C> x = Matrix<C>::identity(2);
  x(0, 1) = C(1, 0);
  Rep<C> rep{klein_bottle_presentation(), {x, Matrix<C>::identity(2)}, {}};
  CHECK_THROWS_AS(klein_bottle_torsion(rep, 1), TorsionUndefined);
}

TEST_CASE("lift independence of the engine value") {
  auto rng = std::mt19937_64(42);
  const Rep<C> rep = klein_case2(random_unit<C>(rng));
  const auto cx = klein_bottle_complex(rep, 2);
  const auto base = generic_torsion_product(cx);
  REQUIRE(base.value);
  for (int it = 0; it < 10; ++it) {
    std::vector<std::vector<int>> prefs(cx.degrees.size());
    for (size_t d = 1; d < cx.degrees.size(); ++d) {
      prefs[d].resize(size_t(cx.degrees[d]));
      std::iota(prefs[d].begin(), prefs[d].end(), 0);
      std::shuffle(prefs[d].begin(), prefs[d].end(), rng);
    }
    const auto sel = select_lifts(cx, &prefs);
    const auto v = generic_torsion_product(cx, &sel);
    REQUIRE(v.value);
    CHECK(std::abs(*v.value - *base.value) < 1e-10);
  }
  for (int it = 0; it < 5; ++it) {
    std::vector<Matrix<C>> lifts(cx.degrees.size());
    for (size_t d = 1; d < cx.degrees.size(); ++d) {
      const int dim = cx.degrees[size_t(d)];
      const int r = int(independent_columns(cx.boundaries[d - 1]).size());
      Matrix<C> lift(dim, r);
      for (int i = 0; i < dim; ++i)
        for (int c = 0; c < r; ++c) lift(i, c) = random_complex<C>(rng);
      lifts[d] = lift;
    }
    const auto v = generic_torsion_product_with_lifts(cx, lifts);
    REQUIRE(v.value);
    CHECK(std::abs(*v.value - *base.value) < 1e-9);
  }
}

TEST_CASE("basis permutation invariance in even dimensions") {
  auto rng = std::mt19937_64(43);
  const Rep<C> rep = restrict_to_klein(graph_manifold_rep<C>(1, 2));
  for (int N : {1, 2}) {
    const auto cx = klein_bottle_complex(rep, N);
    const auto base = generic_torsion_product(cx);
    REQUIRE(base.value);
    const int dim = 2 * N;

    // swap the two edge cells (a cell reordering)
    {
      auto swapped = cx;
      Matrix<C> b1(cx.degrees[0], cx.degrees[1]);
      Matrix<C> b2(cx.degrees[1], cx.degrees[2]);
      for (int i = 0; i < cx.degrees[0]; ++i)
        for (int j = 0; j < cx.degrees[1]; ++j)
          b1(i, (j + dim) % (2 * dim)) = cx.boundaries[0](i, j);
      for (int i = 0; i < cx.degrees[1]; ++i)
        for (int j = 0; j < cx.degrees[2]; ++j)
          b2((i + dim) % (2 * dim), j) = cx.boundaries[1](i, j);
      swapped.boundaries = {b1, b2};
      const auto v = generic_torsion_product(swapped);
      REQUIRE(v.value);
      CHECK(std::abs(*v.value - *base.value) < 1e-10);
    }

    // one random permutation of the coefficient basis applied in every degree
    {
      std::vector<int> perm(size_t(dim), 0);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto apply = [&](int idx) {
        const int block = idx / dim, off = idx % dim;
        return block * dim + perm[size_t(off)];
      };
      auto permuted = cx;
      Matrix<C> b1(cx.degrees[0], cx.degrees[1]);
      Matrix<C> b2(cx.degrees[1], cx.degrees[2]);
      for (int i = 0; i < cx.degrees[0]; ++i)
        for (int j = 0; j < cx.degrees[1]; ++j)
          b1(apply(i), apply(j)) = cx.boundaries[0](i, j);
      for (int i = 0; i < cx.degrees[1]; ++i)
        for (int j = 0; j < cx.degrees[2]; ++j)
          b2(apply(i), apply(j)) = cx.boundaries[1](i, j);
      permuted.boundaries = {b1, b2};
      const auto v = generic_torsion_product(permuted);
      REQUIRE(v.value);
      CHECK(std::abs(*v.value - *base.value) < 1e-10);
    }
  }
}

TEST_CASE("abelian torsion: hand-checked value 9/4 at xi = -1, N = 1") {
  const auto t =
      abelian_knot_torsion<C>(alexander_torus(1), RootOfUnity::minus_one(), 1);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(2.25, 0)) < 1e-13);
  CHECK(t.log_magnitude == doctest::Approx(std::log(2.25)).epsilon(1e-12));
}

TEST_CASE("abelian torsion: empty product at N = 0") {
  const auto t = abelian_knot_torsion<C>(alexander_torus(1), RootOfUnity(1, 5), 0);
  REQUIRE(t.value);
  CHECK(*t.value == C(1, 0));
  CHECK(t.log_magnitude == 0.0);
}

TEST_CASE("abelian torsion: full cycle at N = 5 gives 9/4; half cycle gives 3/2") {
  const RootOfUnity xi(1, 5);
  const LaurentPolynomial delta = alexander_torus(1);
  const auto t = abelian_knot_torsion<C>(delta, xi, 5);
  // full conjugate-pair product over one cycle: (3/2)^2 = 9/4
  CHECK(t.log_magnitude == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-12));
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(2.25, 0)) < 1e-12);

  // the positive-power half of the cycle alone has magnitude 3/2
  double half = 0.0;
  for (int i = 1; i <= 5; ++i) {
    const RootOfUnity r = xi.pow(2 * i - 1);
    half += std::log(std::abs(eval_laurent<C>(delta, r))) -
            std::log(std::abs(r.embed<C>() - C(1, 0)));
  }
  CHECK(std::exp(half) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("abelian torsion: pole is reported with its index") {
  // xi of odd order 5: the pole xi^(2i-1) = 1 occurs at i = 3
  try {
    abelian_knot_torsion<C>(alexander_torus(1), RootOfUnity(2, 5), 5);
    FAIL("expected pole error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("i = 3") != std::string::npos);
  }
}

TEST_CASE("fox oracle: 9/4 at xi = -1 through the swapped generator roles") {
  const RootOfUnity xi = RootOfUnity::minus_one();
  const auto t = fox_oracle_torsion(torus_knot_presentation(1),
                                    abelian_torus_knot_rep(1, xi), 1);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(2.25, 0)) < 1e-12);
}

TEST_CASE("fox oracle: equals the abelian closed form, including the swap case") {
  for (int n : {1, 2}) {
    const LaurentPolynomial delta = alexander_torus(n);
    for (const RootOfUnity& xi :
         {RootOfUnity(1, 5), RootOfUnity(1, 9), RootOfUnity::minus_one()}) {
      const Rep<C> rep = abelian_torus_knot_rep(n, xi);
      for (int N = 1; N <= 4; ++N) {
        const auto fox = fox_oracle_torsion(torus_knot_presentation(n), rep, N);
        const auto closed = abelian_knot_torsion<C>(delta, xi, N);
        REQUIRE(fox.value);
        REQUIRE(closed.value);
        CHECK(std::abs(*fox.value - *closed.value) <=
              1e-9 * (1.0 + std::abs(*closed.value)));
        // at an Alexander root both sides are (numerically) zero; the log
        // comparison only makes sense away from that locus
        const bool degenerate =
            fox.log_magnitude < -30.0 || closed.log_magnitude < -30.0;
        if (!degenerate)
          CHECK(std::abs(fox.log_magnitude - closed.log_magnitude) < 1e-9);
      }
    }
  }
}

TEST_CASE("fox oracle and abelian product both vanish at Alexander roots") {
  // odd powers of exp(i pi/5) are roots of the T(2,5) Alexander polynomial,
  // so the twisted homology jumps and both routes return exactly 0
  const auto closed = abelian_knot_torsion<C>(alexander_torus(2), RootOfUnity(1, 5), 1);
  REQUIRE(closed.value);
  CHECK(std::abs(*closed.value) < 1e-12);
  CHECK(std::isinf(closed.log_magnitude));
  const auto fox = fox_oracle_torsion(torus_knot_presentation(2),
                                      abelian_torus_knot_rep(2, RootOfUnity(1, 5)), 1);
  REQUIRE(fox.value);
  CHECK(*fox.value == C(0, 0));
}

TEST_CASE("fox oracle: generic engine agrees on the presentation complex") {
  const RootOfUnity xi(1, 5);
  const Rep<C> rep = abelian_torus_knot_rep(1, xi);
  for (int N : {1, 2}) {
    const auto cx = presentation_complex(torus_knot_presentation(1), rep, N);
    CHECK(cx.chain_condition_residual() < 1e-12);
    const auto engine = generic_torsion_product(cx);
    const auto fox = fox_oracle_torsion(torus_knot_presentation(1), rep, N);
    CHECK(std::abs(engine.log_magnitude - fox.log_magnitude) < 1e-10);
    REQUIRE(engine.value);
    REQUIRE(fox.value);
    CHECK(std::abs(*engine.value - *fox.value) < 1e-10 * (1.0 + std::abs(*fox.value)));
  }
}

TEST_CASE("fox oracle: trivial coefficients are not acyclic") {
  Rep<C> trivial{torus_knot_presentation(1),
                 {Matrix<C>::identity(2), Matrix<C>::identity(2)},
                 {}};
  CHECK_THROWS_AS(fox_oracle_torsion(torus_knot_presentation(1), trivial, 1),
                  TorsionUndefined);
}

TEST_CASE("torus torsion: 1 for generic diagonal parameters") {
  Rep<C> rep{torus_presentation(),
             {diag2(std::polar(1.0, std::acos(-1.0) / 5),
                    std::polar(1.0, -std::acos(-1.0) / 5)),
              diag2(std::polar(1.0, std::acos(-1.0) / 7),
                    std::polar(1.0, -std::acos(-1.0) / 7))},
             {}};
  const auto t = torus_torsion_check(rep, 1);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(1, 0)) < 1e-10);
}

TEST_CASE("torus torsion: undefined for the trivial representation") {
  Rep<C> trivial{torus_presentation(),
                 {Matrix<C>::identity(2), Matrix<C>::identity(2)},
                 {}};
  CHECK_THROWS_AS(torus_torsion_check(trivial, 1), TorsionUndefined);
}

TEST_CASE("torus torsion: splitting torus of the surgery representation") {
  const Rep<C> rep = graph_manifold_rep<C>(1, 1);
  const auto t = torus_torsion_check(restrict_to_splitting_torus(rep, 1), 1);
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(1, 0)) < 1e-10);
}

TEST_CASE("torus torsion: conjugated (non-diagonal) commuting pair") {
  auto rng = std::mt19937_64(44);
  Matrix<C> u = diag2(random_unit<C>(rng), C(1, 0)), v = diag2(random_unit<C>(rng), C(1, 0));
  u(1, 1) = C(1, 0) / u(0, 0);
  v(1, 1) = C(1, 0) / v(0, 0);
  const Matrix<C> g = random_sl2<C>(rng), ginv = inverse2(g);
  Rep<C> rep{torus_presentation(), {g * u * ginv, g * v * ginv}, {}};
  for (int N : {1, 2}) {
    const auto t = torus_torsion_check(rep, N);
    REQUIRE(t.value);
    CHECK(std::abs(*t.value - C(1, 0)) < 1e-10);
  }
}

TEST_CASE("graph manifold torsion: full-cycle value at (1, 1, 5)") {
  const auto t = graph_manifold_torsion<C>(1, 1, 5);
  CHECK(t.log_magnitude ==
        doctest::Approx(2.0 * (std::log(3.0) - std::log(2.0))).epsilon(1e-12));
  REQUIRE(t.value);
  CHECK(std::abs(*t.value - C(2.25, 0)) < 1e-12);
  CHECK(t.provenance == Provenance::product_of_pieces);
}

TEST_CASE("graph manifold torsion: empty product at N = 0") {
  const auto t = graph_manifold_torsion<C>(1, 1, 0);
  REQUIRE(t.value);
  CHECK(*t.value == C(1, 0));
}

TEST_CASE("graph manifold torsion: conjugation symmetry in xi") {
  const auto ev = eigenvalue_index(2, 2);
  const auto direct = graph_manifold_torsion<C>(2, 2, 3);
  const auto conj =
      abelian_knot_torsion<C>(alexander_torus(2), ev.xi.inverse(), 3);
  CHECK(std::abs(direct.log_magnitude - conj.log_magnitude) < 1e-12);
  REQUIRE(direct.value);
  REQUIRE(conj.value);
  CHECK(std::abs(*direct.value - *conj.value) < 1e-12 * (1.0 + std::abs(*conj.value)));
}

TEST_CASE("graph manifold torsion: x-image sign does not change the value") {
  for (int n : {1, -2})
    for (int j = 1; j <= metabelian_class_count(n); ++j)
      for (int N : {1, 3}) {
        const auto plus =
            klein_bottle_torsion(restrict_to_klein(graph_manifold_rep<C>(n, j, false)), N);
        const auto minus =
            klein_bottle_torsion(restrict_to_klein(graph_manifold_rep<C>(n, j, true)), N);
        REQUIRE(plus.value);
        REQUIRE(minus.value);
        CHECK(std::abs(*plus.value - *minus.value) < 1e-12);
      }
}

TEST_CASE("graph manifold torsion: gluing means the Klein factor contributes zero") {
  for (int n : {1, 2, -2})
    for (int j = 1; j <= metabelian_class_count(n); ++j) {
      const auto ev = eigenvalue_index(n, j);
      const auto whole = graph_manifold_torsion<C>(n, j, 6);
      const auto piece = abelian_knot_torsion<C>(alexander_torus(n), ev.xi, 6);
      CHECK(std::abs(whole.log_magnitude - piece.log_magnitude) < 1e-12);
    }
}

TEST_CASE("torsion value: log magnitude matches the value when both exist") {
  for (int N : {1, 4, 9}) {
    const auto t = graph_manifold_torsion<C>(2, 1, N);
    REQUIRE(t.value);
    CHECK(std::log(std::abs(*t.value)) == doctest::Approx(t.log_magnitude).epsilon(1e-10));
  }
}

TEST_CASE("klein torsion: the large-dimension path needs exact metadata") {
  // without the exact eigenvalue the determinant ratio cannot be certified
  // beyond the dense cap
  const Rep<C> bare = klein_case2(std::polar(1.0, 0.3));
  CHECK_THROWS_AS(klein_bottle_torsion(bare, 300), std::invalid_argument);
  // with the metadata the log-magnitude is exactly 0
  Rep<C> tagged = restrict_to_klein(graph_manifold_rep<C>(1, 1));
  const auto t = klein_bottle_torsion(tagged, 300);
  CHECK(t.log_magnitude == 0.0);
  CHECK_FALSE(t.value);
}

TEST_CASE("large-N path: log magnitudes only, no overflow") {
  const auto t = graph_manifold_torsion<C>(1, 1, 5000);
  CHECK_FALSE(t.value);
  CHECK(t.log_magnitude ==
        doctest::Approx(2 * 5000 * (std::log(3.0) - std::log(2.0)) / 5.0).epsilon(1e-9));
  CHECK(std::isfinite(t.log_magnitude));
}
