#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "torsionlab/knot_invariants.hpp"
#include "torsionlab/rep.hpp"
#include "torsionlab/root_of_unity.hpp"

namespace torsionlab {

/// Irreducible metabelian representative of the twist-knot group
/// < a, b | w^n a = b w^n >:
///   a -> [[i, -i], [0, -i]],  b -> [[i, 0], [-u_k i, -i]],
///   u_k = -4 sin^2(k pi / (4n+1)),  k = 1 .. (|4n+1|-1)/2.
template <class C>
Rep<C> metabelian_rep(int n, int k) {
  using T = scalar_traits<C>;
  using R = typename T::real_type;
  using std::sin;
  const int p = twist_knot_determinant(n);
  if (k < 1 || k > (p - 1) / 2)
    throw std::invalid_argument("metabelian_rep: index k out of range 1..(|4n+1|-1)/2");
  // sin^2 is even, so |4n+1| serves for both signs of n
  R s = sin(T::pi() * R(k) / R(p));
  R u = R(-4) * s * s;

  const C i = T::make(0, 1);
  Matrix<C> ma(2, 2), mb(2, 2);
  ma(0, 0) = i;
  ma(0, 1) = -i;
  ma(1, 1) = -i;
  mb(0, 0) = i;
  mb(1, 0) = C(-u) * i;
  mb(1, 1) = -i;

  Rep<C> rep{twist_knot_presentation(n), {ma, mb}, {}};
  rep.meta.n = n;
  rep.meta.k = k;
  rep.meta.u = T::to_double(u);
  return rep;
}

/// Representation of the fundamental group of the 4-surgered manifold in
/// diagonal normal form: with xi = exp(i pi (2j-1)/p),
///   y -> diag(1/xi, xi)   (so the torus-knot meridian mu = b^-n a maps to
///   diag(xi, 1/xi)),
///   b -> diag(xi^2, xi^-2),  a -> diag(xi^(2n+1), xi^-(2n+1)),
///   x -> [[0, 1], [-1, 0]].
/// All four relators hold exactly by construction; verify_relations certifies
/// this numerically.
template <class C>
Rep<C> graph_manifold_rep(int n, int j, bool flip_x_sign = false) {
  const EigenvalueIndex ev = eigenvalue_index(n, j);
  const RootOfUnity& xi = ev.xi;

  auto diag = [](const C& top, const C& bottom) {
    Matrix<C> m(2, 2);
    m(0, 0) = top;
    m(1, 1) = bottom;
    return m;
  };
  Matrix<C> ma = diag(xi.pow(2 * n + 1).template embed<C>(), xi.pow(-(2 * n + 1)).template embed<C>());
  Matrix<C> mb = diag(xi.pow(2).template embed<C>(), xi.pow(-2).template embed<C>());
  Matrix<C> my = diag(xi.inverse().template embed<C>(), xi.template embed<C>());
  Matrix<C> mx(2, 2);
  mx(0, 1) = flip_x_sign ? C(-1) : C(1);
  mx(1, 0) = flip_x_sign ? C(1) : C(-1);

  Rep<C> rep{surgery_presentation(n), {ma, mb, mx, my}, {}};
  rep.meta.n = n;
  rep.meta.j = j;
  rep.meta.xi = xi;
  return rep;
}

/// Restriction of a surgery representation to the Klein-bottle piece <x, y>.
template <class C>
Rep<C> restrict_to_klein(const Rep<C>& rep) {
  if (rep.images.size() != 4)
    throw std::invalid_argument("restrict_to_klein: expected a surgery representation");
  Rep<C> r{klein_bottle_presentation(), {rep.image(2), rep.image(3)}, rep.meta};
  return r;
}

/// Restriction of a surgery representation to the torus-knot piece <a, b>.
template <class C>
Rep<C> restrict_to_torus_knot(const Rep<C>& rep, int n) {
  if (rep.images.size() != 4)
    throw std::invalid_argument("restrict_to_torus_knot: expected a surgery representation");
  Rep<C> r{torus_knot_presentation(n), {rep.image(0), rep.image(1)}, rep.meta};
  return r;
}

/// Restriction to the splitting torus <mu, h> = <b^-n a, a^2>, as a
/// representation of the one-relator torus group.
template <class C>
Rep<C> restrict_to_splitting_torus(const Rep<C>& rep, int n) {
  Matrix<C> mu = evaluate_word(rep, surgery_meridian_word(n));
  Matrix<C> h = evaluate_word(rep, surgery_fiber_word());
  Rep<C> r{torus_presentation(), {mu, h}, rep.meta};
  return r;
}

// ---- classification -------------------------------------------------------

enum class KleinCaseKind { abelian, irreducible, reducible_non_abelian };

/// One of the three conjugacy normal forms of a Klein-bottle representation:
/// (1) y -> +-1, x arbitrary; (2) y -> diag(eta, 1/eta) with eta != +-1,
/// x -> [[0,-1],[1,0]]; (3) y -> +-unipotent nontrivial, x upper triangular
/// with diagonal +-i.
template <class C>
struct KleinCase {
  KleinCaseKind kind;
  std::optional<C> eta;       // case 2
  std::optional<C> omega;     // case 3: off-diagonal of y in normal form
  std::optional<C> omega_p;   // case 3: off-diagonal of x in normal form
};

template <class C>
bool is_plus_minus_identity(const Matrix<C>& m,
                            typename scalar_traits<C>::real_type tol) {
  using std::abs;
  return (m - Matrix<C>::identity(2)).max_abs() <= tol ||
         (m + Matrix<C>::identity(2)).max_abs() <= tol;
}

namespace detail {

/// Eigenvalues of a 2x2 with det 1: roots of t^2 - tr t + 1.
template <class C>
std::pair<C, C> sl2_eigenvalues(const Matrix<C>& m) {
  using std::sqrt;
  const C tr = m(0, 0) + m(1, 1);
  const C disc = tr * tr - C(4);
  const C root = sqrt(disc);
  return {(tr + root) / C(2), (tr - root) / C(2)};
}

/// Eigenvectors (up to two) of a 2x2 matrix, skipping near-defective pairs.
template <class C>
std::vector<std::pair<C, C>> sl2_eigenvectors(const Matrix<C>& m) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  auto [l1, l2] = sl2_eigenvalues(m);
  std::vector<std::pair<C, C>> vs;
  const R scale = m.max_abs() + R(1);
  for (const C& l : {l1, l2}) {
    // rows of (m - l): pick the better-conditioned null vector
    C r1a = m(0, 0) - l, r1b = m(0, 1);
    C r2a = m(1, 0), r2b = m(1, 1) - l;
    std::pair<C, C> v;
    if (abs(r1a) + abs(r1b) >= abs(r2a) + abs(r2b))
      v = {-r1b, r1a};
    else
      v = {-r2b, r2a};
    R nv = abs(v.first) + abs(v.second);
    if (nv <= rank_tol<C>() * scale) v = {C(1), C(0)};  // m is scalar: any vector
    vs.push_back(v);
    if (abs(l1 - l2) <= rank_tol<C>() * scale) break;  // repeated eigenvalue
  }
  return vs;
}

/// Is v (nonzero) an eigenvector of m, within tolerance `tol` on the
/// normalized cross product?
template <class C>
bool is_eigenvector(const Matrix<C>& m, const std::pair<C, C>& v,
                    typename scalar_traits<C>::real_type tol) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  const C w1 = m(0, 0) * v.first + m(0, 1) * v.second;
  const C w2 = m(1, 0) * v.first + m(1, 1) * v.second;
  const C cross = w1 * v.second - w2 * v.first;
  R nv = abs(v.first) + abs(v.second);
  R nw = abs(w1) + abs(w2) + nv;
  return abs(cross) <= tol * nv * nw;
}

}  // namespace detail

/// True iff the generator images share no common eigenvector. Checked over
/// all eigenvectors of one non-central image against all images (tolerance
/// 1e-8 on eigenvector membership at binary64).
template <class C>
bool is_irreducible(const Rep<C>& rep) {
  using R = typename scalar_traits<C>::real_type;
  const R tol = rel_tol<C>(2) * 100;  // 1e-8 at binary64
  int pivot = -1;
  for (int g = 0; g < int(rep.images.size()); ++g)
    if (!is_plus_minus_identity(rep.image(g), tol)) {
      pivot = g;
      break;
    }
  if (pivot < 0) return false;  // all images central: abelian, reducible
  for (const auto& v : detail::sl2_eigenvectors(rep.image(pivot))) {
    bool common = true;
    for (const auto& img : rep.images)
      if (!detail::is_eigenvector(img, v, tol)) {
        common = false;
        break;
      }
    if (common) return false;
  }
  return true;
}

/// True iff the image of every generator commutes with every other, within
/// tolerance.
template <class C>
bool is_abelian(const Rep<C>& rep) {
  const auto tol = rel_tol<C>(2) * 100;
  for (size_t i = 0; i < rep.images.size(); ++i)
    for (size_t j = i + 1; j < rep.images.size(); ++j)
      if ((rep.images[i] * rep.images[j] - rep.images[j] * rep.images[i]).max_abs() > tol)
        return false;
  return true;
}

/// Semi-decision for metabelian structure on a two-generator group: images of
/// a sampled generating set of the commutator subgroup (the basic commutator,
/// its conjugates by the generators, and nested commutators to depth 2) must
/// pairwise commute. Sound for "false"; sampled for "true".
template <class C>
bool is_metabelian(const Rep<C>& rep) {
  if (rep.images.size() != 2)
    throw std::invalid_argument("is_metabelian: requires a two-generator presentation");
  const auto tol = rel_tol<C>(2) * 100;
  const Word a = Word::generator(0), b = Word::generator(1);
  auto comm = [](const Word& u, const Word& v) {
    return u * v * u.inverse() * v.inverse();
  };
  const Word c = comm(a, b);
  std::vector<Word> samples = {
      c,
      b * a.inverse() * b.inverse() * a,  // the twist-knot commutator word
      a * c * a.inverse(),
      b * c * b.inverse(),
      a.inverse() * c * a,
      b.inverse() * c * b,
      a * b * c * (a * b).inverse(),
      comm(a, c),
      comm(b, c),
  };
  std::vector<Matrix<C>> imgs;
  imgs.reserve(samples.size());
  for (const Word& w : samples) imgs.push_back(evaluate_word(rep, w));
  for (size_t i = 0; i < imgs.size(); ++i)
    for (size_t j = i + 1; j < imgs.size(); ++j)
      if ((imgs[i] * imgs[j] - imgs[j] * imgs[i]).max_abs() > tol) return false;
  return true;
}

/// Classify a representation of < x, y | y x = x y^-1 > into the three
/// conjugacy cases; throws std::domain_error when the relation is violated.
template <class C>
KleinCase<C> classify_klein(const Rep<C>& rep) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  if (rep.images.size() != 2)
    throw std::invalid_argument("classify_klein: expected generators x, y");
  const R tol = rel_tol<C>(2) * 100;
  Rep<C> on_klein{klein_bottle_presentation(), {rep.image(0), rep.image(1)}, rep.meta};
  if (verify_relations(on_klein).max_residual > tol)
    throw std::domain_error("classify_klein: Klein-bottle relation violated");

  const Matrix<C>& y = rep.image(1);
  const Matrix<C>& x = rep.image(0);
  KleinCase<C> out{KleinCaseKind::abelian, {}, {}, {}};
  if (is_plus_minus_identity(y, tol)) {
    out.kind = KleinCaseKind::abelian;
    return out;
  }
  const C tr = y(0, 0) + y(1, 1);
  if (abs(tr - C(2)) <= tol || abs(tr + C(2)) <= tol) {
    // +-unipotent, nontrivial: reducible non-abelian
    out.kind = KleinCaseKind::reducible_non_abelian;
    const bool y_upper = abs(y(1, 0)) <= tol;
    const bool x_upper = abs(x(1, 0)) <= tol;
    if (y_upper && x_upper) {
      out.omega = y(0, 1);
      out.omega_p = x(0, 1);
    } else {
      // conjugate the common invariant line to e1, then read the normal form
      using std::conj;
      auto vs = detail::sl2_eigenvectors(y);
      const auto& v = vs.front();
      R nv = abs(v.first) + abs(v.second);
      C s1 = v.first / C(nv), s2 = v.second / C(nv);
      // second basis column orthogonal to the line, scaled to det 1
      C t1 = -conj(s2), t2 = conj(s1);
      C dets = s1 * t2 - t1 * s2;
      Matrix<C> s(2, 2);
      s(0, 0) = s1;
      s(1, 0) = s2;
      s(0, 1) = t1 / dets;
      s(1, 1) = t2 / dets;
      Matrix<C> sinv = inverse2(s);
      Matrix<C> yn = sinv * y * s, xn = sinv * x * s;
      out.omega = yn(0, 1);
      out.omega_p = xn(0, 1);
    }
    return out;
  }
  // distinct eigenvalues eta != +-1: the irreducible case
  out.kind = KleinCaseKind::irreducible;
  const bool y_diag = abs(y(0, 1)) <= tol && abs(y(1, 0)) <= tol;
  if (y_diag) {
    out.eta = y(0, 0);
  } else {
    auto [l1, l2] = detail::sl2_eigenvalues(y);
    using T = scalar_traits<C>;
    // deterministic pick: nonnegative imaginary part, ties by real part
    out.eta = (T::to_double(l1.imag()) > T::to_double(l2.imag()) ||
               (T::to_double(l1.imag()) == T::to_double(l2.imag()) &&
                T::to_double(l1.real()) >= T::to_double(l2.real())))
                  ? l1
                  : l2;
  }
  return out;
}

}  // namespace torsionlab
