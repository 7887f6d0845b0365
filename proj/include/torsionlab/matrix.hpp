#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torsionlab/scalar.hpp"

namespace torsionlab {

/// Dense complex matrix. Square where an operation requires it (det, inverse);
/// boundary maps of chain complexes are general rectangular blocks.
template <class C>
class Matrix {
 public:
  using real_type = typename scalar_traits<C>::real_type;

  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, C(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = C(1);
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  C& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const C& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const C aik = (*this)(i, k);
        if (aik == C(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  Matrix operator*(const C& s) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  real_type max_abs() const {
    using std::abs;
    real_type m(0);
    for (const C& z : a_) {
      real_type v = abs(z);
      if (v > m) m = v;
    }
    return m;
  }

  /// Entrywise max-norm distance to the identity.
  real_type residual_vs_identity() const {
    using std::abs;
    if (!is_square()) throw std::invalid_argument("residual_vs_identity: not square");
    real_type m(0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        real_type v = abs((*this)(i, j) - (i == j ? C(1) : C(0)));
        if (v > m) m = v;
      }
    return m;
  }

  /// Stack vertically: [top; bottom].
  static Matrix vcat(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw std::invalid_argument("vcat: column mismatch");
    Matrix r(top.rows_ + bottom.rows_, top.cols_);
    for (int i = 0; i < top.rows_; ++i)
      for (int j = 0; j < top.cols_; ++j) r(i, j) = top(i, j);
    for (int i = 0; i < bottom.rows_; ++i)
      for (int j = 0; j < top.cols_; ++j) r(i + top.rows_, j) = bottom(i, j);
    return r;
  }
  /// Concatenate horizontally: [left | right].
  static Matrix hcat(const Matrix& left, const Matrix& right) {
    if (left.rows_ != right.rows_) throw std::invalid_argument("hcat: row mismatch");
    Matrix r(left.rows_, left.cols_ + right.cols_);
    for (int i = 0; i < left.rows_; ++i) {
      for (int j = 0; j < left.cols_; ++j) r(i, j) = left(i, j);
      for (int j = 0; j < right.cols_; ++j) r(i, j + left.cols_) = right(i, j);
    }
    return r;
  }

  Matrix columns(const std::vector<int>& idx) const {
    Matrix r(rows_, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j) {
      if (idx[j] < 0 || idx[j] >= cols_) throw std::out_of_range("columns: bad index");
      for (int i = 0; i < rows_; ++i) r(i, j) = (*this)(i, idx[j]);
    }
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<C> a_;
};

namespace detail {

/// LU elimination with partial pivoting on magnitude; ties break to the
/// lowest row index.
/// Returns {log|det|, det, swaps_parity}; a zero pivot yields det = 0 and
/// log|det| = -inf.
template <class C>
struct LUResult {
  typename scalar_traits<C>::real_type log_abs;
  C value;
  bool value_finite;
};

template <class C>
LUResult<C> lu_det(Matrix<C> m) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  using std::isfinite;
  using std::log;
  if (!m.is_square()) throw std::invalid_argument("det: matrix not square");
  const int n = m.rows();
  R log_abs(0);
  C value(1);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    R best = abs(m(k, k));
    for (int r = k + 1; r < n; ++r) {
      R v = abs(m(r, k));
      if (v > best) {  // strict: lowest row index wins ties
        best = v;
        piv = r;
      }
    }
    if (best == R(0)) {
      return {-std::numeric_limits<R>::infinity(), C(0), true};
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    const C p = m(k, k);
    log_abs += log(abs(p));
    value = value * p;
    for (int r = k + 1; r < n; ++r) {
      C f = m(r, k) / p;
      if (f == C(0)) continue;
      for (int j = k + 1; j < n; ++j) m(r, j) -= f * m(k, j);
      m(r, k) = C(0);
    }
  }
  if (sign < 0) value = -value;
  bool finite = isfinite(scalar_traits<C>::to_double(abs(value)));
  return {log_abs, finite ? value : C(0), finite};
}

}  // namespace detail

/// Determinant via partially pivoted elimination; singular input returns 0.
template <class C>
C det(const Matrix<C>& m) {
  if (m.rows() == 0) return C(1);
  auto r = detail::lu_det(m);
  return r.value;
}

/// log|det|; -inf for singular input.
template <class C>
typename scalar_traits<C>::real_type log_abs_det(const Matrix<C>& m) {
  if (m.rows() == 0) return typename scalar_traits<C>::real_type(0);
  return detail::lu_det(m).log_abs;
}

/// Inverse via Gauss-Jordan with the same pivoting policy. Throws on
/// (numerically) singular input.
template <class C>
Matrix<C> inverse(const Matrix<C>& m) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
  const int n = m.rows();
  Matrix<C> a = m, inv = Matrix<C>::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    R best = abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      R v = abs(a(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == R(0)) throw std::domain_error("inverse: singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const C p = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) = a(k, j) / p;
      inv(k, j) = inv(k, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == k) continue;
      C f = a(r, k);
      if (f == C(0)) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(k, j);
        inv(r, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Greedy pivoted column selection: returns indices (ascending) of a maximal
/// set of columns that are linearly independent relative to the rank
/// threshold (residual norm <= rank_tol * largest pivot counts as dependent).
/// `preference` optionally reorders the greedy scan for lift-independence
/// experiments; the returned set is always sorted ascending.
template <class C>
std::vector<int> independent_columns(const Matrix<C>& m,
                                     const std::vector<int>* preference = nullptr) {
  using R = typename scalar_traits<C>::real_type;
  using std::abs;
  using std::conj;
  using std::sqrt;
  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<C>> resid(cols, std::vector<C>(rows));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) resid[j][i] = m(i, j);
  auto col_norm = [&](int j) {
    R s(0);
    for (int i = 0; i < rows; ++i) {
      R v = abs(resid[j][i]);
      s += v * v;
    }
    return sqrt(s);
  };
  std::vector<int> order(cols);
  for (int j = 0; j < cols; ++j) order[j] = preference ? (*preference)[j] : j;

  std::vector<int> picked;
  std::vector<bool> used(cols, false);
  R largest_pivot(-1);
  const R tol_factor = rank_tol<C>();
  for (int step = 0; step < std::min(rows, cols); ++step) {
    int best_j = -1;
    R best(0);
    for (int oj : order) {
      if (used[oj]) continue;
      R v = col_norm(oj);
      if (v > best) {
        best = v;
        best_j = oj;
      }
    }
    if (best_j < 0) break;
    if (largest_pivot < R(0)) largest_pivot = best;
    if (best <= tol_factor * largest_pivot) break;
    used[best_j] = true;
    picked.push_back(best_j);
    // normalize and project out of the remaining columns (modified Gram-Schmidt)
    R nv = best;
    std::vector<C> u = resid[best_j];
    for (int i = 0; i < rows; ++i) u[i] = u[i] / nv;
    for (int j = 0; j < cols; ++j) {
      if (used[j]) continue;
      C dot(0);
      for (int i = 0; i < rows; ++i) dot += conj(u[i]) * resid[j][i];
      if (dot == C(0)) continue;
      for (int i = 0; i < rows; ++i) resid[j][i] -= dot * u[i];
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

/// Numerical rank under the scale-relative threshold policy.
template <class C>
int rank(const Matrix<C>& m) {
  return int(independent_columns(m).size());
}

}  // namespace torsionlab
