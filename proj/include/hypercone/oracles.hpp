#pragma once

// Membership oracles for the PSD cone, its derivative relaxations, the
// derivative relaxations of the orthant, the pairwise-sum cone and the
// representation B(X) >= 0.
//
// Cones are closed; a point is accepted when its margin is at least
// -tol * scale, with the scale stated per oracle.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "hypercone/bmap.hpp"

namespace hypercone {

enum class Method { roots, representation, pairwise, closedQuad };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::roots:
      return "roots";
    case Method::representation:
      return "representation";
    case Method::pairwise:
      return "pairwise";
    case Method::closedQuad:
      return "closedQuad";
  }
  return "roots";
}

template <typename Scalar>
struct Verdict {
  bool member = false;
  Scalar margin = Scalar(0);
  Method method = Method::roots;
  std::optional<SymMatrix<Scalar>> witness;
};

template <typename Scalar>
struct WitnessCheck {
  Scalar value;  // tr(Y X Y)
  bool valid;    // Y is traceless and value < 0
};

namespace detail {
template <typename Scalar>
Verdict<Scalar> verdict(Scalar margin, Scalar scale, Scalar tol, Method method) {
  return {margin >= -tol * scale, margin, method, std::nullopt};
}

inline void require_order(Index k, Index n, const char* who) {
  if (k < 0 || k > n - 1) {
    std::ostringstream msg;
    msg << who << ": derivative order " << k << " outside 0.." << n - 1;
    throw ArgumentError(msg.str());
  }
}
}  // namespace detail

/// mu_1(X) >= -tol (1 + ||X||_max).
template <typename Scalar>
Verdict<Scalar> in_psd(const SymMatrix<Scalar>& x,
                       Scalar tol = Scalar(default_tolerances().membershipTol),
                       const Tolerances& tols = default_tolerances()) {
  return detail::verdict(eigh(x, tols).min(), Scalar(1) + x.max_abs(), tol, Method::roots);
}

/// Smallest root of the k-th derivative of the characteristic polynomial,
/// i.e. of t -> E_{n-k}(X - tI).
template <typename Scalar>
Verdict<Scalar> in_dpsd(const SymMatrix<Scalar>& x, Index k,
                        Scalar tol = Scalar(default_tolerances().membershipTol),
                        const Tolerances& tols = default_tolerances()) {
  detail::require_order(k, x.n(), "in_dpsd");
  const auto roots = derivative_roots(eigh(x, tols).eigenvalues, k, tols);
  return detail::verdict(roots.front(), Scalar(1) + x.max_abs(), tol, Method::roots);
}

/// Same test on prod_i (t - x_i): membership in the hyperbolicity cone of
/// e_{n-k} with direction 1_n.
template <typename Scalar>
Verdict<Scalar> in_dorthant(const VectorX<Scalar>& x, Index k,
                            Scalar tol = Scalar(default_tolerances().membershipTol),
                            const Tolerances& tols = default_tolerances()) {
  if (x.size() < 1) throw ArgumentError("in_dorthant: empty vector");
  detail::require_order(k, x.size(), "in_dorthant");
  const auto roots = derivative_roots(x, k, tols);
  return detail::verdict(roots.front(), Scalar(1) + x.cwiseAbs().maxCoeff(), tol,
                         Method::roots);
}

/// lambda_i + lambda_j >= 0 for all pairs; the two smallest eigenvalues decide.
template <typename Scalar>
Verdict<Scalar> in_qcone(const SymMatrix<Scalar>& x,
                         Scalar tol = Scalar(default_tolerances().membershipTol),
                         const Tolerances& tols = default_tolerances()) {
  if (x.n() < 2) throw ArgumentError("in_qcone: n must be at least 2");
  const auto mu = eigh(x, tols).eigenvalues;
  return detail::verdict(mu(0) + mu(1), Scalar(1) + x.max_abs(), tol, Method::pairwise);
}

/// B(X) >= 0. A rejected X carries the witness Y = sum_i y_i B_i for the
/// eigenvector y of the smallest eigenvalue of B(X), scaled to tr(Y^2) = 1.
template <typename Scalar>
Verdict<Scalar> in_s1_repr(const SymMatrix<Scalar>& x, const TracelessBasis<Scalar>& b,
                           Scalar tol = Scalar(default_tolerances().membershipTol),
                           const Tolerances& tols = default_tolerances()) {
  const SymMatrix<Scalar> bx = bmatrix(x, b);
  const Spectrum<Scalar> spec = eigh(bx, tols);
  Verdict<Scalar> out = detail::verdict(spec.min(), Scalar(1) + bx.max_abs(), tol,
                                        Method::representation);
  if (!out.member) {
    const VectorX<Scalar> y = spec.diagonalizer.col(0);
    MatrixX<Scalar> w = MatrixX<Scalar>::Zero(b.n, b.n);
    for (Index i = 0; i < b.d(); ++i) w += y(i) * b.mats[i].matrix();
    w /= std::sqrt(w.cwiseAbs2().sum());
    out.witness = SymMatrix<Scalar>(w, Symmetry::symmetrize);
  }
  return out;
}

/// Y certifies X outside the first derivative relaxation when tr(Y) = 0 and
/// tr(Y X Y) < 0.
template <typename Scalar>
WitnessCheck<Scalar> witness_check(const SymMatrix<Scalar>& x, const SymMatrix<Scalar>& y,
                                   Scalar tol = Scalar(default_tolerances().membershipTol)) {
  using std::abs;
  if (x.n() != y.n()) {
    std::ostringstream msg;
    msg << "witness_check: X has side " << x.n() << " but Y has side " << y.n();
    throw ArgumentError(msg.str());
  }
  const Scalar value = (y.matrix() * x.matrix() * y.matrix()).trace();
  return {value, abs(y.trace()) <= tol && value < -tol};
}

/// tr(X) >= 0 and tr(X)^2 - tr(X^2) >= 0.
template <typename Scalar>
Verdict<Scalar> in_quadcone_closed(const SymMatrix<Scalar>& x,
                                   Scalar tol = Scalar(default_tolerances().membershipTol)) {
  if (x.n() < 2) throw ArgumentError("in_quadcone_closed: n must be at least 2");
  const Scalar tr = x.trace();
  const Scalar tr_sq = x.matrix().cwiseAbs2().sum();
  const Scalar quad = tr * tr - tr_sq;
  Verdict<Scalar> out;
  out.member = tr >= -tol && quad >= -tol * (Scalar(1) + tr_sq);
  out.margin = std::min(tr, quad);
  out.method = Method::closedQuad;
  return out;
}

}  // namespace hypercone
