#pragma once

// Numerical checks of the determinantal identities behind the representation,
// and of the structural facts used to prove it.

#include <cstdint>
#include <string>

#include "hypercone/oracles.hpp"
#include "hypercone/sampling.hpp"

namespace hypercone {

struct IdentityReport {
  int trials = 0;
  double constant = 0.0;
  double maxRelResidual = 0.0;
  std::uint64_t seed = 0;
  bool passed = false;
};

/// prod_{i<j} (lambda_i(X) + lambda_j(X)).
double q_eval(const SymMatrixd& x, const Tolerances& tol = default_tolerances());

/// c = det(V^T diag(x0) V) / e_{n-1}(x0) at a generic random x0 drawn from
/// (seed, stream).
double estimate_sanyal_constant(const OnesPerpBasis<double>& v, std::uint64_t seed,
                                Stream stream = Stream::estimate,
                                const Tolerances& tol = default_tolerances());

/// c = det(B(X0)) / (q(X0) E_{n-1}(X0)) at a generic random X0.
double estimate_main_constant(const TracelessBasis<double>& b, std::uint64_t seed,
                              Stream stream = Stream::estimate,
                              const Tolerances& tol = default_tolerances());

/// c e_{n-1}(x) = det(V^T diag(x) V) over `trials` random x. Residuals are
/// |c e - det| / (1 + |c e|); passed iff the max is at most identity_tol.
IdentityReport sanyal_constant(const OnesPerpBasis<double>& v, int trials, std::uint64_t seed,
                               double identity_tol = 1e-10,
                               const Tolerances& tol = default_tolerances());

/// c q(X) E_{n-1}(X) = det(B(X)) over `trials` random symmetric X.
IdentityReport main_identity(const TracelessBasis<double>& b, int trials, std::uint64_t seed,
                             double identity_tol = 1e-8,
                             const Tolerances& tol = default_tolerances());

struct BlockStructureReport {
  bool passed = false;
  double maxCrossBlock = 0.0;    // |tr(diag(v_i) diag(x) M_jk)|
  double maxDiagBlockError = 0.0;  // vs V^T diag(x) V
  double maxPairBlockError = 0.0;  // vs diag(x_i + x_j)
  double detResidual = 0.0;      // relative, det(B(diag x)) vs product formula
  std::string violation;         // location of the largest violation, if any
};

/// With the basis built from V, B(diag(x)) splits into V^T diag(x) V and the
/// scalars x_i + x_j, so its determinant factors accordingly.
BlockStructureReport block_structure_check(const VectorX<double>& x,
                                           const OnesPerpBasis<double>& v,
                                           double identity_tol = 1e-10);

/// diag(Y^2) is majorized by the eigenvalues of Y^2.
bool majorization_check(const SymMatrixd& y, double tol = 1e-10);

struct SliceReport {
  bool passed = false;
  bool reprMember = false;
  bool rootMember = false;
  double margin = 0.0;       // smallest root of the first derivative
  double minSampled = 0.0;   // min over sampled unit-norm traceless Y of tr(Y diag(x) Y)
};

/// Compares B(diag x) >= 0, the first-derivative root test on x, and sampled
/// values of tr(Y diag(x) Y).
SliceReport slice_lemma_check(const VectorX<double>& x, int trials, std::uint64_t seed,
                              const Tolerances& tol = default_tolerances());

}  // namespace hypercone
