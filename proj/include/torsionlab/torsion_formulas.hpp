#pragma once

#include <optional>
#include <string>

#include "torsionlab/chain_complex.hpp"
#include "torsionlab/knot_invariants.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/twist_reps.hpp"

namespace torsionlab {

enum class Provenance { generic_engine, closed_form, fox_oracle, product_of_pieces };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::generic_engine: return "generic-engine";
    case Provenance::closed_form: return "closed-form";
    case Provenance::fox_oracle: return "fox-oracle";
    case Provenance::product_of_pieces: return "product-of-pieces";
  }
  return "?";
}

/// A torsion value: log-magnitude always (accumulated additively, so it stays
/// finite when |torsion| overflows the scalar range), the complex value when
/// it was materialized (small cases), and where it came from.
template <class C>
struct TorsionValue {
  using real_type = typename scalar_traits<C>::real_type;
  real_type log_magnitude;
  std::optional<C> value;
  Provenance provenance;
};

// ---- Klein bottle ----------------------------------------------------------

/// Twisted complex of the one-vertex/two-edge/one-face cell structure of the
/// Klein bottle: degrees (2N, 4N, 2N),
///   bnd2 = [1 - Y; -XY - 1],   bnd1 = [X - 1 | Y - 1],
/// with X, Y the 2N-dimensional lifts of the images of x and y.
template <class C>
TwistedChainComplex<C> klein_bottle_complex(const Rep<C>& rep, int N) {
  if (N < 0) throw std::invalid_argument("klein_bottle_complex: N must be >= 0");
  if (rep.images.size() != 2)
    throw std::invalid_argument("klein_bottle_complex: expected generators x, y");
  {
    Rep<C> on_klein{klein_bottle_presentation(), rep.images, rep.meta};
    if (verify_relations(on_klein).max_residual > rel_tol<C>(2) * 100)
      throw std::domain_error("klein_bottle_complex: Klein-bottle relation violated");
  }
  const int dim = 2 * N;
  const Matrix<C> X = dim == 0 ? Matrix<C>(0, 0)
                               : (dim == 2 ? rep.image(0) : sym_power(rep.image(0), dim));
  const Matrix<C> Y = dim == 0 ? Matrix<C>(0, 0)
                               : (dim == 2 ? rep.image(1) : sym_power(rep.image(1), dim));
  const Matrix<C> I = Matrix<C>::identity(dim);

  TwistedChainComplex<C> cx;
  cx.degrees = {dim, 2 * dim, dim};
  cx.boundaries.resize(2);
  cx.boundaries[0] = Matrix<C>::hcat(X - I, Y - I);          // bnd1
  cx.boundaries[1] = Matrix<C>::vcat(I - Y, -(X * Y) - I);   // bnd2
  cx.labels = {{}, {}, {}};
  for (int v = 0; v < dim; ++v) {
    cx.labels[0].push_back("vertex*v" + std::to_string(v));
    cx.labels[1].push_back("edge_x*v" + std::to_string(v));
    cx.labels[2].push_back("face*v" + std::to_string(v));
  }
  for (int v = 0; v < dim; ++v) cx.labels[1].push_back("edge_y*v" + std::to_string(v));
  return cx;
}

/// Closed-form Klein-bottle torsion: det(1-Y)/det(Y-1) when det(Y-1) != 0,
/// else det(-XY-1)/det(X-1). Throws TorsionUndefined when both branches
/// degenerate. Uses dense determinants up to dimension 512 and the exact
/// eigenvalue product for larger diagonal images.
template <class C>
TorsionValue<C> klein_bottle_torsion(const Rep<C>& rep, int N) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  using std::exp;
  using std::log;
  if (N < 0) throw std::invalid_argument("klein_bottle_torsion: N must be >= 0");
  if (N == 0) return {R(0), C(1), Provenance::closed_form};
  const int dim = 2 * N;

  if (dim > 512) {
    // large-dimension path: each eigenvalue pair of Y contributes
    // |1 - l|/|l - 1| = 1 exactly, so the log-magnitude is 0 as soon as no
    // odd power of the exact eigenvalue equals 1. Requires the exact
    // eigenvalue metadata the surgery constructions carry.
    if (!rep.meta.xi)
      throw std::invalid_argument(
          "klein_bottle_torsion: dimension above 512 needs exact eigenvalue metadata");
    const std::int64_t ord = rep.meta.xi->order();
    if (ord % 2 == 1 && ord <= 2 * std::int64_t(N) - 1)
      throw TorsionUndefined("klein_bottle_torsion: det(Y-1) = 0 (odd-order eigenvalue)");
    return {R(0), std::nullopt, Provenance::closed_form};
  }

  const Matrix<C> Y = dim == 2 ? rep.image(1) : sym_power(rep.image(1), dim);
  const Matrix<C> I = Matrix<C>::identity(dim);

  const R degeneracy = rank_tol<C>();
  auto den1 = detail::lu_det(Y - I);
  const R scale1 = (Y - I).max_abs() + R(1);
  if (exp(den1.log_abs) > degeneracy * scale1) {
    auto num1 = detail::lu_det(I - Y);
    TorsionValue<C> out{num1.log_abs - den1.log_abs, std::nullopt,
                        Provenance::closed_form};
    if (num1.value_finite && den1.value_finite && den1.value != C(0))
      out.value = num1.value / den1.value;
    return out;
  }
  const Matrix<C> X = dim == 2 ? rep.image(0) : sym_power(rep.image(0), dim);
  auto den2 = detail::lu_det(X - I);
  const R scale2 = (X - I).max_abs() + R(1);
  if (exp(den2.log_abs) > degeneracy * scale2) {
    auto num2 = detail::lu_det(-(X * Y) - I);
    TorsionValue<C> out{num2.log_abs - den2.log_abs, std::nullopt,
                        Provenance::closed_form};
    if (num2.value_finite && den2.value_finite && den2.value != C(0))
      out.value = num2.value / den2.value;
    return out;
  }
  throw TorsionUndefined(
      "klein_bottle_torsion: both branches degenerate (det(Y-1) = det(X-1) = 0)");
}

// ---- abelian knot-exterior torsion ----------------------------------------

/// Torsion of a knot exterior for the abelian representation with meridian
/// eigenvalues xi^(+-1), twisted by the dimension-2N lift:
///   prod_{i=1..N} Delta(xi^(2i-1)) Delta(xi^-(2i-1))
///               / ((xi^(2i-1) - 1)(xi^-(2i-1) - 1)).
/// Precondition (the no-pole hypothesis): no odd power xi^(2i-1), i <= N,
/// equals 1. The log-magnitude is accumulated additively so large N cannot
/// overflow; the complex value is materialized for N <= 16.
template <class C>
TorsionValue<C> abelian_knot_torsion(const LaurentPolynomial& delta,
                                     const RootOfUnity& xi, int N) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  using std::log;
  if (N < 0) throw std::invalid_argument("abelian_knot_torsion: N must be >= 0");
  TorsionValue<C> out{R(0), C(1), Provenance::closed_form};
  const bool keep_value = N <= 16;
  if (!keep_value) out.value.reset();
  for (int i = 1; i <= N; ++i) {
    const RootOfUnity r = xi.pow(2 * i - 1);
    if (r.is_one())
      throw std::domain_error(
          "abelian_knot_torsion: pole, xi^(2i-1) = 1 at i = " + std::to_string(i));
    const C z = r.template embed<C>();
    const C zc = r.inverse().template embed<C>();
    const C num1 = eval_laurent<C>(delta, r);
    const C num2 = eval_laurent<C>(delta, r.inverse());
    const C den1 = z - C(1), den2 = zc - C(1);
    out.log_magnitude += log(abs(num1)) + log(abs(num2)) - log(abs(den1)) - log(abs(den2));
    if (keep_value) *out.value = *out.value * num1 * num2 / (den1 * den2);
  }
  return out;
}

// ---- Fox-calculus presentation-complex oracle ------------------------------

/// Presentation 2-complex of a two-generator one-relator presentation,
/// twisted by the dimension-2N lift of the representation. Boundary blocks
/// are the transposed Fox-derivative images (chains as row vectors written
/// in column convention), so bnd1 o bnd2 = 0 is the Fox fundamental identity.
template <class C>
TwistedChainComplex<C> presentation_complex(const Presentation& pres,
                                            const Rep<C>& rep, int N) {
  if (pres.generators().size() != 2 || pres.relators().size() != 1)
    throw std::invalid_argument(
        "presentation_complex: expected two generators and one relator");
  const int dim = 2 * N;
  const Word& r = pres.relators()[0];
  const Matrix<C> d1 = fox_derivative_image(rep, r, 0, dim).transpose();
  const Matrix<C> d2 = fox_derivative_image(rep, r, 1, dim).transpose();
  const Matrix<C> g1 = evaluate_word(rep, Word::generator(0), dim).transpose();
  const Matrix<C> g2 = evaluate_word(rep, Word::generator(1), dim).transpose();
  const Matrix<C> I = Matrix<C>::identity(dim);

  TwistedChainComplex<C> cx;
  cx.degrees = {dim, 2 * dim, dim};
  cx.boundaries.resize(2);
  cx.boundaries[0] = Matrix<C>::hcat(g1 - I, g2 - I);
  cx.boundaries[1] = Matrix<C>::vcat(d1, d2);
  cx.labels = {{}, {}, {}};
  for (int v = 0; v < dim; ++v) {
    cx.labels[0].push_back("vertex*v" + std::to_string(v));
    cx.labels[1].push_back("edge_" + pres.generators()[0] + "*v" + std::to_string(v));
    cx.labels[2].push_back("face*v" + std::to_string(v));
  }
  for (int v = 0; v < dim; ++v)
    cx.labels[1].push_back("edge_" + pres.generators()[1] + "*v" + std::to_string(v));
  return cx;
}

/// Fox-calculus torsion of a two-generator one-relator knot-group
/// presentation: det(lift(d r/d g1)) / det(lift(g2) - 1). When that
/// denominator degenerates the generator roles are swapped (the two ratios
/// agree in even dimensions); if both denominators degenerate the twisted
/// complex is not acyclic and TorsionUndefined is thrown.
template <class C>
TorsionValue<C> fox_oracle_torsion(const Presentation& pres, const Rep<C>& rep, int N) {
  using R = typename scalar_traits<C>::real_type;
  using std::exp;
  if (pres.generators().size() != 2 || pres.relators().size() != 1)
    throw std::invalid_argument(
        "fox_oracle_torsion: expected two generators and one relator");
  if (N < 0) throw std::invalid_argument("fox_oracle_torsion: N must be >= 0");
  if (N == 0) return {R(0), C(1), Provenance::fox_oracle};
  const int dim = 2 * N;
  const Word& r = pres.relators()[0];

  auto ratio = [&](int num_gen, int den_gen) -> std::optional<TorsionValue<C>> {
    const Matrix<C> den =
        evaluate_word(rep, Word::generator(den_gen), dim) - Matrix<C>::identity(dim);
    auto dd = detail::lu_det(den);
    if (exp(dd.log_abs) <= rank_tol<C>() * (den.max_abs() + R(1))) return std::nullopt;
    const Matrix<C> num = fox_derivative_image(rep, r, num_gen, dim);
    auto nd = detail::lu_det(num);
    if (exp(nd.log_abs) <= rank_tol<C>() * (num.max_abs() + R(1))) {
      // a vanishing derivative block means the twisted homology is nonzero
      // (an Alexander-polynomial root); the ratio is exactly 0 there, which
      // matches the closed-form product having a zero factor
      return TorsionValue<C>{-std::numeric_limits<R>::infinity(), C(0),
                             Provenance::fox_oracle};
    }
    TorsionValue<C> out{nd.log_abs - dd.log_abs, std::nullopt, Provenance::fox_oracle};
    if (nd.value_finite && dd.value_finite && dd.value != C(0))
      out.value = nd.value / dd.value;
    return out;
  };

  if (auto v = ratio(0, 1)) return *v;
  if (auto v = ratio(1, 0)) return *v;  // swapped generator roles
  throw TorsionUndefined(
      "fox_oracle_torsion: twisted complex is not acyclic "
      "(both generator blocks lift(g)-1 are singular)");
}

// ---- torus -----------------------------------------------------------------

/// Torsion of the one-vertex torus cell structure for a representation of
/// < u, v | uv = vu >, computed by the generic engine. Expected to be 1
/// whenever the twisted complex is acyclic.
template <class C>
TorsionValue<C> torus_torsion_check(const Rep<C>& rep, int N) {
  using R = typename scalar_traits<C>::real_type;
  if (rep.images.size() != 2)
    throw std::invalid_argument("torus_torsion_check: expected generators u, v");
  if (N < 0) throw std::invalid_argument("torus_torsion_check: N must be >= 0");
  if (N == 0) return {R(0), C(1), Provenance::generic_engine};
  Rep<C> on_torus{torus_presentation(), rep.images, rep.meta};
  if (verify_relations(on_torus).max_residual > rel_tol<C>(2) * 100)
    throw std::domain_error("torus_torsion_check: commutator relation violated");
  TwistedChainComplex<C> cx = presentation_complex(torus_presentation(), on_torus, N);
  auto prod = generic_torsion_product(cx);
  return {prod.log_magnitude, prod.value, Provenance::generic_engine};
}

// ---- graph manifold --------------------------------------------------------

/// Torsion of the 4-surgered manifold as the product of the pieces in its
/// torus decomposition: the torus-knot exterior contributes the abelian
/// closed form at xi, the Klein-bottle piece contributes 1 (asserted as part
/// of the contract, not assumed).
template <class C>
TorsionValue<C> graph_manifold_torsion(int n, int j, int N) {
  using std::abs;
  if (N < 0) throw std::invalid_argument("graph_manifold_torsion: N must be >= 0");
  const EigenvalueIndex ev = eigenvalue_index(n, j);
  TorsionValue<C> abelian =
      abelian_knot_torsion<C>(alexander_torus(n), ev.xi, N);

  const Rep<C> surgery = graph_manifold_rep<C>(n, j);
  TorsionValue<C> kb = klein_bottle_torsion(restrict_to_klein(surgery), N);
  if (kb.value) {
    if (abs(*kb.value - C(1)) > rel_tol<C>(2 * N) * 100)
      throw std::logic_error(
          "graph_manifold_torsion: Klein-bottle factor differs from 1");
  } else if (abs(kb.log_magnitude) > rel_tol<C>(2 * N) * 100) {
    throw std::logic_error(
        "graph_manifold_torsion: Klein-bottle factor log-magnitude differs from 0");
  }

  TorsionValue<C> out{abelian.log_magnitude + kb.log_magnitude, std::nullopt,
                      Provenance::product_of_pieces};
  if (abelian.value && kb.value) out.value = *abelian.value * *kb.value;
  return out;
}

}  // namespace torsionlab
