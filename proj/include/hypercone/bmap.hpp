#pragma once

// The representation X -> B(X), B(X)_ij = tr(B_i X B_j), and the linear matrix
// inequalities built from it.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hypercone/basis.hpp"

namespace hypercone {

/// {x : sum_i x_i coeffs_i >= 0}.
template <typename Scalar>
struct LmiSystem {
  Index size = 0;
  Index numVars = 0;
  std::vector<SymMatrix<Scalar>> coeffs;
  std::vector<std::string> varLabels;

  template <typename Derived>
  SymMatrix<Scalar> evaluate(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != numVars) throw ArgumentError("LmiSystem::evaluate: wrong number of variables");
    MatrixX<Scalar> acc = MatrixX<Scalar>::Zero(size, size);
    for (Index i = 0; i < numVars; ++i) acc += x(i) * coeffs[i].matrix();
    return SymMatrix<Scalar>(acc);
  }
};

namespace detail {
template <typename Scalar>
void require_side(const SymMatrix<Scalar>& x, const TracelessBasis<Scalar>& b,
                  const char* who) {
  if (x.n() != b.n) {
    std::ostringstream msg;
    msg << who << ": matrix side " << x.n() << " does not match basis side " << b.n;
    throw ArgumentError(msg.str());
  }
}

template <typename Scalar>
void require_orthonormal(const TracelessBasis<Scalar>& b, const Tolerances& tol,
                         const char* who) {
  const Index d = b.d();
  const Scalar err =
      (gram(b).matrix() - MatrixX<Scalar>::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(err <= Scalar(tol.orthTol))) {
    std::ostringstream msg;
    msg << who << ": basis must be orthonormal under the trace inner product "
        << "(||G - I||_max = " << err << ")";
    throw ArgumentError(msg.str());
  }
}

/// Unit matrix of the (p,q) entry: E_pp, or E_pq + E_qp off the diagonal.
template <typename Scalar>
SymMatrix<Scalar> entry_unit(Index n, Index p, Index q) {
  MatrixX<Scalar> e = MatrixX<Scalar>::Zero(n, n);
  e(p, q) = Scalar(1);
  e(q, p) = Scalar(1);
  return SymMatrix<Scalar>(e);
}

inline std::string entry_label(Index p, Index q) {
  return "X[" + std::to_string(p) + "][" + std::to_string(q) + "]";
}

/// LMI in the upper-triangular entries of X for a map linear in X.
template <typename Scalar, typename Map>
LmiSystem<Scalar> entrywise_lmi(Index n, Index size, Map&& map) {
  LmiSystem<Scalar> lmi;
  lmi.size = size;
  for (Index p = 0; p < n; ++p) {
    for (Index q = p; q < n; ++q) {
      lmi.coeffs.push_back(map(entry_unit<Scalar>(n, p, q)));
      lmi.varLabels.push_back(entry_label(p, q));
    }
  }
  lmi.numVars = static_cast<Index>(lmi.coeffs.size());
  return lmi;
}
}  // namespace detail

/// d x d matrix with entries tr(B_i X B_j).
template <typename Scalar>
SymMatrix<Scalar> bmatrix(const SymMatrix<Scalar>& x, const TracelessBasis<Scalar>& b) {
  detail::require_side(x, b, "bmatrix");
  const Index d = b.d();
  std::vector<MatrixX<Scalar>> bx;
  bx.reserve(b.mats.size());
  for (const auto& m : b.mats) bx.push_back(m.matrix() * x.matrix());
  MatrixX<Scalar> out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      out(i, j) = out(j, i) = b.mats[i].matrix().cwiseProduct(bx[j]).sum();
  return SymMatrix<Scalar>(out);
}

/// One coefficient per upper-triangular entry of X, row-major.
template <typename Scalar>
LmiSystem<Scalar> bmap_lmi(const TracelessBasis<Scalar>& b) {
  return detail::entrywise_lmi<Scalar>(
      b.n, b.d(), [&b](const SymMatrix<Scalar>& e) { return bmatrix(e, b); });
}

/// Hyperbolicity cone of the derivative of det(sum_i A_i x_i) in direction e:
/// coefficients B(A_0^{-1/2} A_i A_0^{-1/2}) with A_0 = sum_i e_i A_i.
template <typename Scalar>
LmiSystem<Scalar> derivative_cone_lmi(const std::vector<SymMatrix<Scalar>>& a,
                                      const VectorX<Scalar>& e,
                                      const TracelessBasis<Scalar>& b,
                                      const Tolerances& tol = default_tolerances()) {
  if (a.empty() || static_cast<Index>(a.size()) != e.size()) {
    std::ostringstream msg;
    msg << "derivative_cone_lmi: " << a.size() << " matrices but direction of length "
        << e.size();
    throw ArgumentError(msg.str());
  }
  const Index side = a.front().n();
  MatrixX<Scalar> a0 = MatrixX<Scalar>::Zero(side, side);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].n() != side) throw ArgumentError("derivative_cone_lmi: matrices differ in size");
    a0 += e(static_cast<Index>(i)) * a[i].matrix();
  }
  if (b.n != side) {
    std::ostringstream msg;
    msg << "derivative_cone_lmi: basis side " << b.n << " does not match matrix side "
        << side;
    throw ArgumentError(msg.str());
  }
  const SymMatrix<Scalar> w = inv_sqrt(SymMatrix<Scalar>(a0, Symmetry::symmetrize), tol);

  LmiSystem<Scalar> lmi;
  lmi.size = b.d();
  lmi.numVars = static_cast<Index>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lmi.coeffs.push_back(bmatrix(a[i].conjugated(w.matrix()), b));
    lmi.varLabels.push_back("x[" + std::to_string(i) + "]");
  }
  return lmi;
}

/// Second derivative relaxation of the orthant, size C(n,2) - 1: the
/// derivative cone of det(V^T diag(x) V) in direction 1_n.
template <typename Scalar>
LmiSystem<Scalar> orthant2_lmi(Index n, const TracelessBasis<Scalar>& b,
                               const OnesPerpBasis<Scalar>& v,
                               const Tolerances& tol = default_tolerances()) {
  if (n < 3 || v.n != n || v.columns.rows() != n || v.columns.cols() != n - 1 ||
      b.n != n - 1) {
    std::ostringstream msg;
    msg << "orthant2_lmi: need n >= 3, V of size n x (n-1) and a basis over side n-1 "
        << "(n = " << n << ", V " << v.columns.rows() << "x" << v.columns.cols()
        << ", basis side " << b.n << ")";
    throw ArgumentError(msg.str());
  }
  std::vector<SymMatrix<Scalar>> family;
  family.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const auto row = v.columns.row(k);
    family.emplace_back(MatrixX<Scalar>(row.transpose() * row), Symmetry::symmetrize);
  }
  return derivative_cone_lmi(family, VectorX<Scalar>(VectorX<Scalar>::Ones(n)), b, tol);
}

/// sqrt((n-1)/n) tr(X) I_d plus the arrow matrix with head tr(B_1 X), first
/// row and column tr(B_i X), and -tr(B_1 X) on the remaining diagonal.
template <typename Scalar>
SymMatrix<Scalar> quad_cone_matrix(const SymMatrix<Scalar>& x,
                                   const TracelessBasis<Scalar>& b,
                                   const Tolerances& tol = default_tolerances()) {
  detail::require_side(x, b, "quad_cone_matrix");
  detail::require_orthonormal(b, tol, "quad_cone_matrix");
  using std::sqrt;
  const Index n = x.n();
  const Index d = b.d();
  VectorX<Scalar> t(d);
  for (Index i = 0; i < d; ++i) t(i) = detail::trace_product(b.mats[i], x);

  const Scalar s = sqrt(Scalar(n - 1) / Scalar(n)) * x.trace();
  MatrixX<Scalar> m = s * MatrixX<Scalar>::Identity(d, d);
  m(0, 0) += t(0);
  for (Index i = 1; i < d; ++i) {
    m(0, i) = m(i, 0) = t(i);
    m(i, i) -= t(0);
  }
  return SymMatrix<Scalar>(m);
}

/// quad_cone_matrix as an LMI in the upper-triangular entries of X.
template <typename Scalar>
LmiSystem<Scalar> quad_cone_lmi(const TracelessBasis<Scalar>& b,
                                const Tolerances& tol = default_tolerances()) {
  detail::require_orthonormal(b, tol, "quad_cone_lmi");
  return detail::entrywise_lmi<Scalar>(b.n, b.d(), [&](const SymMatrix<Scalar>& e) {
    return quad_cone_matrix(e, b, tol);
  });
}

}  // namespace hypercone
