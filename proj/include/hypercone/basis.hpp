#pragma once

// Bases of the trace-zero symmetric matrices and of the sum-zero vectors.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hypercone/symlinalg.hpp"

namespace hypercone {

enum class BasisKind { canonical, orthonormal, custom };

inline const char* to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::canonical:
      return "canonical";
    case BasisKind::orthonormal:
      return "orthonormal";
    case BasisKind::custom:
      return "custom";
  }
  return "custom";
}

/// Columns span the vectors with zero coordinate sum.
template <typename Scalar>
struct OnesPerpBasis {
  Index n;
  MatrixX<Scalar> columns;  // n x (n-1)
};

/// Ordered basis B_1..B_d of the symmetric n x n matrices with trace zero,
/// d = n(n+1)/2 - 1.
template <typename Scalar>
struct TracelessBasis {
  Index n;
  BasisKind kind;
  std::vector<SymMatrix<Scalar>> mats;

  Index d() const noexcept { return static_cast<Index>(mats.size()); }
};

constexpr Index traceless_dimension(Index n) { return n * (n + 1) / 2 - 1; }

namespace detail {
inline void require_n_at_least_2(Index n, const char* who) {
  if (n < 2) {
    std::ostringstream msg;
    msg << who << ": n must be at least 2 (got " << n
        << "); the trace-zero subspace is trivial for n = 1";
    throw ArgumentError(msg.str());
  }
}

template <typename Scalar>
Scalar trace_product(const SymMatrix<Scalar>& a, const SymMatrix<Scalar>& b) {
  // tr(AB) for symmetric A, B
  return a.matrix().cwiseProduct(b.matrix()).sum();
}
}  // namespace detail

/// Difference chain v_i = e_i - e_{i+1}.
template <typename Scalar = double>
OnesPerpBasis<Scalar> ones_perp_basis(Index n) {
  detail::require_n_at_least_2(n, "ones_perp_basis");
  MatrixX<Scalar> v = MatrixX<Scalar>::Zero(n, n - 1);
  for (Index i = 0; i + 1 < n; ++i) {
    v(i, i) = Scalar(1);
    v(i + 1, i) = Scalar(-1);
  }
  return {n, std::move(v)};
}

/// M_ij: ones at (i,j) and (j,i).
template <typename Scalar = double>
SymMatrix<Scalar> off_diagonal_unit(Index n, Index i, Index j) {
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(n, n);
  m(i, j) = Scalar(1);
  m(j, i) = Scalar(1);
  return SymMatrix<Scalar>(m);
}

/// diag(v_1), ..., diag(v_{n-1}) for the columns of v, then M_ij for i < j in
/// lexicographic order.
template <typename Scalar>
TracelessBasis<Scalar> traceless_basis_from(const OnesPerpBasis<Scalar>& v) {
  const Index n = v.n;
  detail::require_n_at_least_2(n, "traceless_basis_from");
  TracelessBasis<Scalar> b{n, BasisKind::canonical, {}};
  b.mats.reserve(static_cast<std::size_t>(traceless_dimension(n)));
  for (Index c = 0; c + 1 < n; ++c)
    b.mats.push_back(SymMatrix<Scalar>::diagonal(v.columns.col(c)));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) b.mats.push_back(off_diagonal_unit<Scalar>(n, i, j));
  return b;
}

template <typename Scalar = double>
TracelessBasis<Scalar> canonical_traceless_basis(Index n) {
  detail::require_n_at_least_2(n, "canonical_traceless_basis");
  return traceless_basis_from(ones_perp_basis<Scalar>(n));
}

/// G_ij = tr(B_i B_j).
template <typename Scalar>
SymMatrix<Scalar> gram(const TracelessBasis<Scalar>& b) {
  const Index d = b.d();
  MatrixX<Scalar> g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      g(i, j) = g(j, i) = detail::trace_product(b.mats[i], b.mats[j]);
  return SymMatrix<Scalar>(g);
}

/// Modified Gram-Schmidt under <A,B> = tr(AB).
template <typename Scalar>
TracelessBasis<Scalar> orthonormalize(const TracelessBasis<Scalar>& b,
                                      const Tolerances& tol = default_tolerances()) {
  using std::sqrt;
  std::vector<MatrixX<Scalar>> work;
  work.reserve(b.mats.size());
  for (const auto& m : b.mats) work.push_back(m.matrix());

  TracelessBasis<Scalar> out{b.n, BasisKind::orthonormal, {}};
  out.mats.reserve(b.mats.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    const Scalar scale = sqrt(b.mats[i].matrix().cwiseAbs2().sum());
    const Scalar norm = sqrt(work[i].cwiseAbs2().sum());
    if (!(norm > Scalar(tol.rankTol) * (Scalar(1) + scale))) {
      std::ostringstream msg;
      msg << "orthonormalize: basis element " << i
          << " is linearly dependent on its predecessors (pivot " << norm << ")";
      throw DegenerateBasis(msg.str());
    }
    work[i] /= norm;
    for (std::size_t j = i + 1; j < work.size(); ++j)
      work[j] -= work[i].cwiseProduct(work[j]).sum() * work[i];
    out.mats.emplace_back(work[i], Symmetry::symmetrize);
  }
  return out;
}

/// Throws DegenerateBasis unless b has the right size, traceless elements and
/// a positive definite Gram matrix.
template <typename Scalar>
void validate_basis(const TracelessBasis<Scalar>& b,
                    const Tolerances& tol = default_tolerances()) {
  using std::abs;
  std::ostringstream msg;
  if (b.n < 2) {
    msg << "basis: n must be at least 2 (got " << b.n << ")";
    throw DegenerateBasis(msg.str());
  }
  if (b.d() != traceless_dimension(b.n)) {
    msg << "basis: expected " << traceless_dimension(b.n) << " matrices for n = "
        << b.n << ", got " << b.d();
    throw DegenerateBasis(msg.str());
  }
  for (Index i = 0; i < b.d(); ++i) {
    if (b.mats[i].n() != b.n) {
      msg << "basis: element " << i << " has side " << b.mats[i].n()
          << ", expected " << b.n;
      throw DegenerateBasis(msg.str());
    }
    if (abs(b.mats[i].trace()) > Scalar(tol.traceTol)) {
      msg << "basis: element " << i << " has trace " << b.mats[i].trace();
      throw DegenerateBasis(msg.str());
    }
  }
  const Scalar min_eig = eigh(gram(b), tol).min();
  if (!(min_eig > Scalar(tol.rankTol))) {
    msg << "basis: elements are linearly dependent (smallest Gram eigenvalue "
        << min_eig << ")";
    throw DegenerateBasis(msg.str());
  }
  if (b.kind == BasisKind::orthonormal) {
    const Scalar err =
        (gram(b).matrix() - MatrixX<Scalar>::Identity(b.d(), b.d())).cwiseAbs().maxCoeff();
    if (err > Scalar(tol.orthTol)) {
      msg << "basis: marked orthonormal but ||G - I||_max = " << err;
      throw DegenerateBasis(msg.str());
    }
  }
}

/// {Q B_i Q^T}.
template <typename Scalar>
TracelessBasis<Scalar> conjugated(const TracelessBasis<Scalar>& b,
                                  const MatrixX<Scalar>& q) {
  TracelessBasis<Scalar> out{
      b.n, b.kind == BasisKind::orthonormal ? BasisKind::orthonormal : BasisKind::custom, {}};
  out.mats.reserve(b.mats.size());
  for (const auto& m : b.mats) out.mats.push_back(m.conjugated(q));
  return out;
}

}  // namespace hypercone
