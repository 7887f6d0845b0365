#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "torsionlab/parallel.hpp"
#include "torsionlab/torsion_formulas.hpp"

namespace torsionlab {

/// Per-index torsion factor: t_i = 2 (log|Delta(xi^(2i-1))| - log|xi^(2i-1) - 1|),
/// the log-magnitude contribution of the i-th conjugate factor pair in the
/// torus-knot piece. Periodic in i with period p_k.
template <class C>
typename scalar_traits<C>::real_type torsion_log_term(const LaurentPolynomial& delta,
                                                      const RootOfUnity& xi,
                                                      std::int64_t i) {
  using std::abs;
  using std::log;
  const RootOfUnity r = xi.pow(2 * i - 1);
  const C z = r.template embed<C>();
  const C num = eval_laurent<C>(delta, r);
  return 2 * (log(abs(num)) - log(abs(z - C(1))));
}

/// Growth-rate sequence and its predicted limit.
struct AsymptoticsReport {
  int n = 0, j = 0, p_k = 0;
  std::vector<std::int64_t> N;     // 1..N_max
  std::vector<double> sequence;    // log|torsion| / (2N)
  double predicted_limit = 0.0;    // (log|2n+1| - log 2) / p_k
  std::vector<double> abs_error;   // |sequence - predicted_limit|
  double decay_exponent = 0.0;     // least-squares fit of error ~ C / N^e
};

namespace detail {

/// Least-squares slope of log(err) against log(N), restricted to indices
/// that are not multiples of p_k (those sit at floating-point noise and
/// would corrupt the fit); returns the positive decay exponent.
inline double fit_decay_exponent(const std::vector<std::int64_t>& N,
                                 const std::vector<double>& err, int p_k) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < N.size(); ++i) {
    if (N[i] % p_k == 0) continue;
    if (err[i] < 1e-13) continue;  // below noise floor
    const double x = std::log(double(N[i])), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return 0.0;
  const double denom = m * sxx - sx * sx;
  if (denom == 0) return 0.0;
  return -(m * sxy - sx * sy) / denom;
}

}  // namespace detail

/// Sequence log|torsion|/(2N) for N = 1..N_max via the per-term kernel:
/// the N_max log-terms are tabulated in parallel, prefix-summed serially (so
/// output does not depend on thread count), and normalized. The Klein-bottle
/// factor contributes identical eigenvalue sets to numerator and denominator,
/// hence exactly zero log-magnitude.
template <class C>
AsymptoticsReport leading_coefficient_sequence_at(int n, int j, std::int64_t N_max) {
  using R = typename scalar_traits<C>::real_type;
  if (N_max < 1)
    throw std::invalid_argument("leading_coefficient_sequence: N_max must be >= 1");
  const EigenvalueIndex ev = eigenvalue_index(n, j);
  const LaurentPolynomial delta = alexander_torus(n);
  std::int64_t q = 2 * std::int64_t(n) + 1;
  if (q < 0) q = -q;

  AsymptoticsReport rep;
  rep.n = n;
  rep.j = j;
  rep.p_k = ev.p_k;
  {
    using std::log;
    R lim = (log(R(double(q))) - log(R(2))) / R(ev.p_k);
    rep.predicted_limit = scalar_traits<C>::to_double(lim);
  }

  std::vector<R> terms;
  parallel_tabulate(terms, N_max, [&](std::int64_t i) {
    return torsion_log_term<C>(delta, ev.xi, i + 1);
  });
  rep.N.resize(size_t(N_max));
  rep.sequence.resize(size_t(N_max));
  rep.abs_error.resize(size_t(N_max));
  R prefix(0);
  for (std::int64_t i = 0; i < N_max; ++i) {
    prefix += terms[size_t(i)];
    rep.N[size_t(i)] = i + 1;
    rep.sequence[size_t(i)] = scalar_traits<C>::to_double(prefix / R(2 * (i + 1)));
    rep.abs_error[size_t(i)] = std::abs(rep.sequence[size_t(i)] - rep.predicted_limit);
  }
  rep.decay_exponent = detail::fit_decay_exponent(rep.N, rep.abs_error, rep.p_k);
  return rep;
}

inline AsymptoticsReport leading_coefficient_sequence(int n, int j, std::int64_t N_max) {
  return leading_coefficient_sequence_at<Cplx>(n, j, N_max);
}

/// Serial reference: each sequence entry recomputed from scratch through the
/// full product of pieces (abelian closed form times the Klein-bottle
/// determinant ratio). Quadratic in N_max; kept for testing the kernel above.
inline AsymptoticsReport leading_coefficient_sequence_serial(int n, int j,
                                                             std::int64_t N_max) {
  if (N_max < 1)
    throw std::invalid_argument("leading_coefficient_sequence_serial: N_max must be >= 1");
  const EigenvalueIndex ev = eigenvalue_index(n, j);
  std::int64_t q = 2 * std::int64_t(n) + 1;
  if (q < 0) q = -q;

  AsymptoticsReport rep;
  rep.n = n;
  rep.j = j;
  rep.p_k = ev.p_k;
  rep.predicted_limit = (std::log(double(q)) - std::log(2.0)) / double(ev.p_k);
  for (std::int64_t N = 1; N <= N_max; ++N) {
    const auto tv = graph_manifold_torsion<Cplx>(n, j, int(N));
    rep.N.push_back(N);
    rep.sequence.push_back(tv.log_magnitude / double(2 * N));
    rep.abs_error.push_back(std::abs(rep.sequence.back() - rep.predicted_limit));
  }
  rep.decay_exponent = detail::fit_decay_exponent(rep.N, rep.abs_error, rep.p_k);
  return rep;
}

}  // namespace torsionlab
