#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torsionlab/asymptotics.hpp"
#include "torsionlab/precision_tiers.hpp"
#include "torsionlab/torsion_formulas.hpp"

using namespace torsionlab;

TEST_CASE("tier selection") {
  CHECK(precision_tier(53) == 53);
  CHECK(precision_tier(54) == 64);
  CHECK(precision_tier(64) == 64);
  CHECK(precision_tier(100) == 128);
  CHECK(precision_tier(128) == 128);
  CHECK(precision_tier(200) == 256);
  CHECK(precision_tier(256) == 256);
  CHECK_THROWS_AS(precision_tier(52), std::invalid_argument);
  CHECK_THROWS_AS(precision_tier(257), std::invalid_argument);
}

TEST_CASE("embedding a root of unity at 256 bits stays on the unit circle") {
  using R = scalar_traits<Cplx256>::real_type;
  const Cplx256 z = RootOfUnity(3, 7).embed<Cplx256>();
  const R dev = abs(abs(z) - R(1));
  CHECK(dev < R("1e-70"));
}

TEST_CASE("surgery relators hold to 256-bit accuracy") {
  for (int j = 1; j <= metabelian_class_count(1); ++j) {
    const auto rep = graph_manifold_rep<Cplx256>(1, j);
    const auto residual = verify_relations(rep).max_residual;
    CHECK(residual < scalar_traits<Cplx256>::real_type("1e-70"));
  }
}

TEST_CASE("metabelian relators hold to high accuracy at every tier") {
  {
    const auto rep = metabelian_rep<std::complex<long double>>(2, 1);
    CHECK(verify_relations(rep).max_residual < 1e-15L);
  }
  {
    const auto rep = metabelian_rep<Cplx128>(2, 1);
    CHECK(verify_relations(rep).max_residual < scalar_traits<Cplx128>::real_type("1e-30"));
  }
}

TEST_CASE("cycle identity sharpens with precision") {
  using R = scalar_traits<Cplx256>::real_type;
  const auto ev = eigenvalue_index(2, 2);
  const LaurentPolynomial delta = alexander_torus(2);
  R log_num(0);
  for (int i = 1; i <= ev.p_k; ++i)
    log_num += log(abs(eval_laurent<Cplx256>(delta, ev.xi.pow(2 * i - 1))));
  CHECK(abs(exp(log_num) - R(5)) < R("1e-70"));
}

TEST_CASE("klein torsion equals 1 at 256 bits") {
  const auto rep = restrict_to_klein(graph_manifold_rep<Cplx256>(2, 1));
  for (int N : {1, 3}) {
    const auto t = klein_bottle_torsion(rep, N);
    CHECK(abs(t.log_magnitude) < scalar_traits<Cplx256>::real_type("1e-70"));
  }
}

TEST_CASE("graph-manifold torsion agrees across tiers") {
  const auto d53 = graph_manifold_torsion<Cplx>(2, 1, 9);
  const auto d64 = graph_manifold_torsion<std::complex<long double>>(2, 1, 9);
  const auto d256 = graph_manifold_torsion<Cplx256>(2, 1, 9);
  const double l53 = d53.log_magnitude;
  const double l64 = scalar_traits<std::complex<long double>>::to_double(d64.log_magnitude);
  const double l256 = scalar_traits<Cplx256>::to_double(d256.log_magnitude);
  CHECK(std::abs(l53 - l256) < 1e-12);
  CHECK(std::abs(l64 - l256) < 1e-14);
}

TEST_CASE("sequence kernel runs at a wide tier") {
  const auto rep = leading_coefficient_sequence_at<Cplx128>(1, 1, 10);
  CHECK(rep.abs_error[4] < 1e-15);   // N = 5 = p_k, computed at 128 bits
  CHECK(rep.abs_error[9] < 1e-15);   // N = 10
}
