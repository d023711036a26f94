#pragma once

// Dense symmetric linear algebra and real-rooted monic polynomials.
//
// Everything here is templated on the scalar type; the rest of the library
// instantiates it with double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "hypercone/errors.hpp"
#include "hypercone/tolerances.hpp"

namespace hypercone {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Symmetry { require, symmetrize };

/// Real symmetric n x n matrix. Entries (i,j) and (j,i) are bitwise equal.
template <typename Scalar>
class SymMatrix {
 public:
  using Matrix = MatrixX<Scalar>;

  /// With Symmetry::require the input must satisfy |m(i,j) - m(j,i)| <= asym_tol;
  /// either way the stored matrix is (m + m^T) / 2.
  explicit SymMatrix(const Matrix& m, Symmetry policy = Symmetry::require,
                     Scalar asym_tol = Scalar(0)) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
      std::ostringstream msg;
      msg << "SymMatrix: expected a non-empty square matrix, got " << m.rows()
          << "x" << m.cols();
      throw ArgumentError(msg.str());
    }
    if (policy == Symmetry::require) {
      const Scalar asym = (m - m.transpose()).cwiseAbs().maxCoeff();
      if (!(asym <= asym_tol)) {
        std::ostringstream msg;
        msg << "SymMatrix: input is not symmetric (max |X - X^T| = " << asym
            << ")";
        throw ArgumentError(msg.str());
      }
    }
    data_ = (m + m.transpose()) / Scalar(2);
  }

  static SymMatrix identity(Index n) {
    return SymMatrix(Matrix::Identity(n, n));
  }
  static SymMatrix zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }
  template <typename Derived>
  static SymMatrix diagonal(const Eigen::MatrixBase<Derived>& values) {
    return SymMatrix(Matrix(values.asDiagonal()));
  }

  Index n() const noexcept { return data_.rows(); }
  const Matrix& matrix() const noexcept { return data_; }
  Scalar operator()(Index i, Index j) const { return data_(i, j); }

  Scalar trace() const { return data_.trace(); }
  Scalar max_abs() const { return data_.cwiseAbs().maxCoeff(); }

  /// Q X Q^T.
  SymMatrix conjugated(const Matrix& q) const {
    return SymMatrix(Matrix(q * data_ * q.transpose()), Symmetry::symmetrize);
  }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix(Matrix(a.data_ + b.data_));
  }
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix(Matrix(a.data_ - b.data_));
  }
  friend SymMatrix operator*(Scalar s, const SymMatrix& a) {
    return SymMatrix(Matrix(s * a.data_));
  }

 private:
  Matrix data_;
};

using SymMatrixd = SymMatrix<double>;

/// Eigenvalues in ascending order together with an orthogonal diagonalizer,
/// X = Q diag(mu) Q^T.
template <typename Scalar>
struct Spectrum {
  VectorX<Scalar> eigenvalues;
  MatrixX<Scalar> diagonalizer;

  Index n() const noexcept { return eigenvalues.size(); }
  Scalar min() const { return eigenvalues(0); }

  MatrixX<Scalar> reconstruct() const {
    return diagonalizer * eigenvalues.asDiagonal() * diagonalizer.transpose();
  }

  /// Ordered by decreasing absolute value, so that the i-th entry of the view
  /// for X^2 is the square of the i-th entry for X. Ties keep ascending order.
  VectorX<Scalar> abs_descending() const {
    std::vector<Index> order(static_cast<std::size_t>(n()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [this](Index a, Index b) {
      return std::abs(eigenvalues(a)) > std::abs(eigenvalues(b));
    });
    VectorX<Scalar> out(n());
    for (Index i = 0; i < n(); ++i) out(i) = eigenvalues(order[i]);
    return out;
  }
};

/// Cyclic Jacobi eigen-decomposition.
template <typename Scalar>
Spectrum<Scalar> eigh(const SymMatrix<Scalar>& x,
                      const Tolerances& tol = default_tolerances()) {
  using std::abs;
  using std::sqrt;
  const Index n = x.n();
  MatrixX<Scalar> a = x.matrix();
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);

  const Scalar threshold = Scalar(tol.jacobiThreshold) * a.norm();
  auto off_norm = [&a, n]() {
    Scalar s(0);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return sqrt(s);
  };

  int sweep = 0;
  Scalar off = off_norm();
  while (off > threshold) {
    if (sweep == tol.jacobiSweeps) {
      std::ostringstream msg;
      msg << "eigh: Jacobi iteration did not converge after " << sweep
          << " sweeps (||X||_F = " << x.matrix().norm()
          << ", off-diagonal norm = " << off << ")";
      throw NumericalFailure(msg.str());
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (abs(theta) > Scalar(1) / std::numeric_limits<Scalar>::epsilon()) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = Scalar(1) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
          if (theta < Scalar(0)) t = -t;
        }
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    ++sweep;
    off = off_norm();
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Index i, Index j) { return a(i, i) < a(j, j); });
  Spectrum<Scalar> out{VectorX<Scalar>(n), MatrixX<Scalar>(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]);
    out.diagonalizer.col(i) = v.col(order[i]);
  }
  return out;
}

/// e_0, ..., e_m of the m given values via the prefix recurrence
/// e_k(x_1..x_j) = e_k(x_1..x_{j-1}) + x_j e_{k-1}(x_1..x_{j-1}).
template <typename Derived>
VectorX<typename Derived::Scalar> elem_sym_all(
    const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Index m = values.size();
  VectorX<Scalar> e = VectorX<Scalar>::Zero(m + 1);
  e(0) = Scalar(1);
  for (Index j = 0; j < m; ++j) {
    const Scalar x = values(j);
    for (Index k = j + 1; k >= 1; --k) e(k) += x * e(k - 1);
  }
  return e;
}

template <typename Derived>
typename Derived::Scalar elem_sym(const Eigen::MatrixBase<Derived>& values,
                                  Index k) {
  using Scalar = typename Derived::Scalar;
  const Index m = values.size();
  if (k < 0 || k > m) {
    std::ostringstream msg;
    msg << "elem_sym: degree " << k << " outside 0.." << m;
    throw ArgumentError(msg.str());
  }
  VectorX<Scalar> e = VectorX<Scalar>::Zero(k + 1);
  e(0) = Scalar(1);
  for (Index j = 0; j < m; ++j) {
    const Scalar x = values(j);
    for (Index i = std::min(j + 1, k); i >= 1; --i) e(i) += x * e(i - 1);
  }
  return e(k);
}

/// E_k(X) = e_k(lambda(X)).
template <typename Scalar>
Scalar big_E(const SymMatrix<Scalar>& x, Index k,
             const Tolerances& tol = default_tolerances()) {
  if (k < 0 || k > x.n()) {
    std::ostringstream msg;
    msg << "big_E: degree " << k << " outside 0.." << x.n();
    throw ArgumentError(msg.str());
  }
  return elem_sym(eigh(x, tol).eigenvalues, k);
}

/// Monic polynomial in t, coefficients stored by ascending power.
template <typename Scalar>
class MonicPoly {
 public:
  explicit MonicPoly(VectorX<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 1 || coeffs_(coeffs_.size() - 1) != Scalar(1))
      throw ArgumentError("MonicPoly: leading coefficient must be exactly 1");
  }

  Index degree() const noexcept { return coeffs_.size() - 1; }
  const VectorX<Scalar>& coeffs() const noexcept { return coeffs_; }
  Scalar coeff(Index power) const { return coeffs_(power); }

  Scalar operator()(Scalar t) const {
    Scalar acc(0);
    for (Index i = degree(); i >= 0; --i) acc = acc * t + coeffs_(i);
    return acc;
  }

  /// Forward error bound of Horner evaluation at t.
  Scalar eval_error_bound(Scalar t) const {
    using std::abs;
    Scalar acc(0);
    for (Index i = degree(); i >= 0; --i) acc = acc * abs(t) + abs(coeffs_(i));
    return Scalar(4 * (degree() + 1)) * std::numeric_limits<Scalar>::epsilon() *
           acc;
  }

 private:
  VectorX<Scalar> coeffs_;
};

/// prod_i (t - values_i).
template <typename Derived>
MonicPoly<typename Derived::Scalar> monic_from_roots(
    const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Index n = values.size();
  const VectorX<Scalar> e = elem_sym_all(values);
  VectorX<Scalar> c(n + 1);
  for (Index k = 0; k <= n; ++k)
    c(n - k) = (k % 2 == 0) ? e(k) : Scalar(-e(k));
  return MonicPoly<Scalar>(std::move(c));
}

template <typename Scalar>
MonicPoly<Scalar> char_poly(const Spectrum<Scalar>& spec) {
  return monic_from_roots(spec.eigenvalues);
}

/// k-th derivative rescaled to be monic.
template <typename Scalar>
MonicPoly<Scalar> poly_derivative(const MonicPoly<Scalar>& p, Index k) {
  if (k < 0 || k > p.degree()) {
    std::ostringstream msg;
    msg << "poly_derivative: order " << k << " outside 0.." << p.degree();
    throw ArgumentError(msg.str());
  }
  const Index m = p.degree() - k;
  VectorX<Scalar> c(m + 1);
  for (Index j = 0; j <= m; ++j) {
    // (j+k)!/j! divided by the leading factor (m+k)!/m!
    Scalar factor(1);
    for (Index i = 1; i <= k; ++i) factor *= Scalar(j + i) / Scalar(m + i);
    c(j) = p.coeff(j + k) * factor;
  }
  c(m) = Scalar(1);
  return MonicPoly<Scalar>(std::move(c));
}

/// Roots of p = (monic) derivative of prod_i (t - parent_roots_i).
///
/// Equal parent roots (within rootTol) of multiplicity m contribute that value
/// m-1 times; every gap between distinct consecutive parent roots holds exactly
/// one simple root, located by bisection using the known sign pattern of p on
/// the gap.
template <typename Scalar>
std::vector<Scalar> real_roots_interlaced(
    const MonicPoly<Scalar>& p, const std::vector<Scalar>& parent_roots,
    const Tolerances& tol = default_tolerances()) {
  using std::abs;
  const Index deg = p.degree();
  if (static_cast<Index>(parent_roots.size()) != deg + 1) {
    std::ostringstream msg;
    msg << "real_roots_interlaced: expected " << deg + 1
        << " parent roots, got " << parent_roots.size();
    throw ArgumentError(msg.str());
  }
  if (!std::is_sorted(parent_roots.begin(), parent_roots.end()))
    throw ArgumentError("real_roots_interlaced: parent roots must be sorted");

  struct Cluster {
    Scalar value;
    Index size;
  };
  std::vector<Cluster> clusters;
  {
    std::size_t i = 0;
    while (i < parent_roots.size()) {
      std::size_t j = i + 1;
      Scalar sum = parent_roots[i];
      while (j < parent_roots.size() &&
             parent_roots[j] - parent_roots[j - 1] <=
                 Scalar(tol.rootTol) *
                     (Scalar(1) + abs(parent_roots[j]) + abs(parent_roots[j - 1]))) {
        sum += parent_roots[j];
        ++j;
      }
      clusters.push_back({sum / Scalar(j - i), static_cast<Index>(j - i)});
      i = j;
    }
  }

  auto sign = [](Scalar v) { return v > Scalar(0) ? 1 : (v < Scalar(0) ? -1 : 0); };

  std::vector<Scalar> roots;
  roots.reserve(static_cast<std::size_t>(deg));
  // Number of parent roots at or beyond the right end of the current gap.
  Index beyond = deg + 1;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (Index r = 1; r < clusters[c].size; ++r) roots.push_back(clusters[c].value);
    beyond -= clusters[c].size;
    if (c + 1 == clusters.size()) break;

    const Scalar a = clusters[c].value;
    const Scalar b = clusters[c + 1].value;
    // parent has sign (-1)^beyond on (a,b); p starts with that sign at a+
    // and ends with the opposite sign at b-.
    const int left_sign = (beyond % 2 == 0) ? 1 : -1;

    auto check_end = [&](Scalar at, int expected) {
      const Scalar v = p(at);
      if (sign(v) != expected && abs(v) > p.eval_error_bound(at)) {
        std::ostringstream msg;
        msg << "real_roots_interlaced: no sign change on bracket [" << a << ", "
            << b << "]; parent roots are inconsistent with the polynomial";
        throw NumericalFailure(msg.str());
      }
    };
    if (clusters[c].size == 1) check_end(a, left_sign);
    if (clusters[c + 1].size == 1) check_end(b, -left_sign);

    const Scalar width_tol =
        Scalar(tol.rootTol) * (Scalar(1) + std::max(abs(a), abs(b)));
    Scalar lo = a;
    Scalar hi = b;
    for (int iter = 0; iter < 400 && hi - lo > width_tol; ++iter) {
      const Scalar mid = lo + (hi - lo) / Scalar(2);
      if (mid <= lo || mid >= hi) break;
      const int s = sign(p(mid));
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      if (s == left_sign)
        lo = mid;
      else
        hi = mid;
    }
    roots.push_back(lo + (hi - lo) / Scalar(2));
  }
  return roots;
}

/// Roots of the k-th derivative of prod_i (t - values_i), ascending.
template <typename Scalar>
std::vector<Scalar> derivative_roots(const VectorX<Scalar>& values, Index k,
                                     const Tolerances& tol = default_tolerances()) {
  if (k < 0 || k >= values.size()) {
    std::ostringstream msg;
    msg << "derivative_roots: order " << k << " outside 0.." << values.size() - 1;
    throw ArgumentError(msg.str());
  }
  std::vector<Scalar> roots(values.data(), values.data() + values.size());
  std::sort(roots.begin(), roots.end());
  VectorX<Scalar> sorted = Eigen::Map<const VectorX<Scalar>>(
      roots.data(), static_cast<Index>(roots.size()));
  MonicPoly<Scalar> current = monic_from_roots(sorted);
  for (Index stage = 0; stage < k; ++stage) {
    current = poly_derivative(current, 1);
    roots = real_roots_interlaced(current, roots, tol);
  }
  return roots;
}

/// X^{-1/2} for positive definite X.
template <typename Scalar>
SymMatrix<Scalar> inv_sqrt(const SymMatrix<Scalar>& x,
                           const Tolerances& tol = default_tolerances()) {
  const Spectrum<Scalar> spec = eigh(x, tol);
  if (!(spec.min() > Scalar(tol.pdTol))) {
    std::ostringstream msg;
    msg << "inv_sqrt: matrix is not positive definite (smallest eigenvalue "
        << spec.min() << ")";
    throw NotPositiveDefinite(msg.str(), static_cast<double>(spec.min()));
  }
  const VectorX<Scalar> scale = spec.eigenvalues.cwiseSqrt().cwiseInverse();
  return SymMatrix<Scalar>(MatrixX<Scalar>(spec.diagonalizer * scale.asDiagonal() *
                                           spec.diagonalizer.transpose()),
                           Symmetry::symmetrize);
}

}  // namespace hypercone
