#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionlab/matrix.hpp"
#include "torsionlab/scalar.hpp"

namespace torsionlab {

/// Thrown when a torsion computation is requested for a complex that is not
/// acyclic (or whose closed-form branches all degenerate).
class TorsionUndefined : public std::runtime_error {
 public:
  explicit TorsionUndefined(const std::string& what, int degree = -1)
      : std::runtime_error(what), degree_(degree) {}
  /// Degree at which acyclicity failed, or -1 when not degree-specific.
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Finite based chain complex of complex vector spaces with distinguished
/// (standard) bases: degrees d_0..d_m and boundaries bnd[k] : C_(k+1) -> C_k.
/// Basis labels record "cell x basis-vector" provenance for reports.
template <class C>
struct TwistedChainComplex {
  std::vector<int> degrees;            // dimensions, lowest degree first
  std::vector<Matrix<C>> boundaries;   // boundaries[k] maps C_(k+1) -> C_k
  std::vector<std::vector<std::string>> labels;  // optional, per degree

  int top_degree() const { return int(degrees.size()) - 1; }

  void validate() const {
    if (boundaries.size() + 1 != degrees.size())
      throw std::invalid_argument("chain complex: need one boundary per adjacent pair");
    for (size_t k = 0; k < boundaries.size(); ++k) {
      if (boundaries[k].rows() != degrees[k] || boundaries[k].cols() != degrees[k + 1])
        throw std::invalid_argument("chain complex: boundary shape mismatch at degree " +
                                    std::to_string(k + 1));
    }
  }

  /// max entry of bnd_k o bnd_(k+1) over all k.
  typename scalar_traits<C>::real_type chain_condition_residual() const {
    using R = typename scalar_traits<C>::real_type;
    R worst(0);
    for (size_t k = 0; k + 1 < boundaries.size(); ++k) {
      R r = (boundaries[k] * boundaries[k + 1]).max_abs();
      if (r > worst) worst = r;
    }
    return worst;
  }
};

/// A lift selection: for each degree i >= 1, the column indices of C_i whose
/// standard basis vectors span a complement of ker(bnd_i).
using LiftSelection = std::vector<std::vector<int>>;

namespace detail {

template <class C>
struct TorsionProduct {
  typename scalar_traits<C>::real_type log_magnitude;
  std::optional<C> value;  // dropped when a determinant over/underflows
};

/// Alternating product of base-change determinants for the given complex and
/// per-degree lifts of the boundary images.
template <class C>
TorsionProduct<C> torsion_from_lifts(const TwistedChainComplex<C>& cx,
                                     const std::vector<Matrix<C>>& lifts) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  using std::isfinite;
  const int m = cx.top_degree();
  R logsum(0);
  C value(1);
  bool value_ok = true;
  for (int i = 0; i <= m; ++i) {
    // columns: bnd_(i+1) applied to the lift in degree i+1, then the lift in
    // degree i (empty in degree 0: the lift of im bnd_0 = 0 is empty)
    Matrix<C> t(cx.degrees[i], 0);
    if (i < m) t = cx.boundaries[i] * lifts[i + 1];
    if (i > 0) t = Matrix<C>::hcat(t, lifts[i]);
    if (t.rows() != t.cols())
      throw TorsionUndefined("torsion: lift sizes do not match chain dimensions", i);
    if (t.rows() == 0) continue;
    auto dr = detail::lu_det(t);
    if (dr.log_abs == -std::numeric_limits<R>::infinity())
      throw TorsionUndefined("torsion: base-change matrix is singular at degree " +
                                 std::to_string(i),
                             i);
    const int sign = (i % 2 == 0) ? -1 : +1;  // exponent (-1)^(i+1)
    logsum += sign > 0 ? dr.log_abs : -dr.log_abs;
    if (value_ok && dr.value_finite && dr.value != C(0)) {
      value = sign > 0 ? value * dr.value : value / dr.value;
      if (!isfinite(scalar_traits<C>::to_double(abs(value)))) value_ok = false;
    } else {
      value_ok = false;
    }
  }
  TorsionProduct<C> out{logsum, std::nullopt};
  if (value_ok) out.value = value;
  return out;
}

}  // namespace detail

/// Greedy pivoted lift selection for each degree; `preferences`, when given,
/// reorders the greedy column scan per degree (used by the lift-independence
/// tests). Returns ascending index sets.
template <class C>
LiftSelection select_lifts(const TwistedChainComplex<C>& cx,
                           const std::vector<std::vector<int>>* preferences = nullptr) {
  const int m = cx.top_degree();
  LiftSelection sel(m + 1);
  for (int i = 1; i <= m; ++i)
    sel[i] = independent_columns(cx.boundaries[i - 1],
                                 preferences ? &(*preferences)[i] : nullptr);
  return sel;
}

/// Reidemeister torsion of an acyclic based chain complex: for each degree the
/// base-change matrix from the distinguished basis to
/// (bnd_(i+1) lift_(i+1)) u lift_i, multiplied with alternating exponents
/// (-1)^(i+1). Throws TorsionUndefined (naming the degree) when the complex
/// is not acyclic. The result is independent of the lift choice.
template <class C>
detail::TorsionProduct<C> generic_torsion_product(
    const TwistedChainComplex<C>& cx, const LiftSelection* selection = nullptr) {
  cx.validate();
  constexpr int kDimensionCap = 512;
  int total = 0;
  for (int d : cx.degrees) total += d;
  if (total > kDimensionCap)
    throw std::invalid_argument("generic torsion: total dimension exceeds the engine cap");

  const int m = cx.top_degree();
  LiftSelection sel = selection ? *selection : select_lifts(cx);

  // acyclicity: rank(bnd_i) + rank(bnd_(i+1)) must exhaust every degree
  std::vector<int> ranks(m + 2, 0);  // ranks[i] = rank bnd_i (bnd_0 = bnd_(m+1) = 0)
  for (int i = 1; i <= m; ++i) ranks[i] = int(sel[i].size());
  for (int i = 0; i <= m; ++i) {
    if (ranks[i] + ranks[i + 1] != cx.degrees[i])
      throw TorsionUndefined(
          "torsion undefined: complex is not acyclic at degree " + std::to_string(i) +
              " (rank defect " +
              std::to_string(cx.degrees[i] - ranks[i] - ranks[i + 1]) + ")",
          i);
  }

  std::vector<Matrix<C>> lifts(m + 1);
  for (int i = 1; i <= m; ++i) {
    Matrix<C> e(cx.degrees[i], int(sel[i].size()));
    for (int c = 0; c < int(sel[i].size()); ++c) e(sel[i][c], c) = C(1);
    lifts[i] = e;
  }
  return detail::torsion_from_lifts(cx, lifts);
}

/// As above but with explicit dense lift matrices (degree i >= 1 gets a
/// degrees[i] x rank(bnd_i) block); used to exercise lift-independence with
/// random admissible lifts.
template <class C>
detail::TorsionProduct<C> generic_torsion_product_with_lifts(
    const TwistedChainComplex<C>& cx, const std::vector<Matrix<C>>& lifts) {
  cx.validate();
  return detail::torsion_from_lifts(cx, lifts);
}

}  // namespace torsionlab
