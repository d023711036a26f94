#include "hypercone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hypercone {

namespace {

double det(const MatrixX<double>& m) { return m.partialPivLu().determinant(); }

double relative_residual(double predicted, double actual) {
  return std::abs(predicted - actual) / (1.0 + std::abs(predicted));
}

double q_from_eigenvalues(const VectorX<double>& mu) {
  double q = 1.0;
  for (Index i = 0; i < mu.size(); ++i)
    for (Index j = i + 1; j < mu.size(); ++j) q *= mu(i) + mu(j);
  return q;
}

// q(X) E_{n-1}(X) from one eigen-decomposition.
double q_times_e(const SymMatrixd& x, const Tolerances& tol) {
  const VectorX<double> mu = eigh(x, tol).eigenvalues;
  return q_from_eigenvalues(mu) * elem_sym(mu, mu.size() - 1);
}

double sanyal_det(const OnesPerpBasis<double>& v, const VectorX<double>& x) {
  return det(v.columns.transpose() * x.asDiagonal() * v.columns);
}

// First sample with |denominator| > genericTol within the resample budget.
template <typename Sample>
double estimate_ratio(std::uint64_t seed, Stream stream, const Tolerances& tol,
                      const char* who, Sample&& sample) {
  for (int attempt = 0; attempt < tol.genericResamples; ++attempt) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(attempt), stream);
    const auto [numerator, denominator] = sample(rng);
    if (std::abs(denominator) > tol.genericTol) return numerator / denominator;
  }
  std::ostringstream msg;
  msg << who << ": no generic sample found in " << tol.genericResamples << " draws";
  throw DegenerateSampling(msg.str());
}

}  // namespace

double q_eval(const SymMatrixd& x, const Tolerances& tol) {
  if (x.n() < 2) throw ArgumentError("q_eval: n must be at least 2");
  return q_from_eigenvalues(eigh(x, tol).eigenvalues);
}

double estimate_sanyal_constant(const OnesPerpBasis<double>& v, std::uint64_t seed,
                                Stream stream, const Tolerances& tol) {
  if (v.n < 2) throw ArgumentError("sanyal_constant: n must be at least 2");
  return estimate_ratio(seed, stream, tol, "sanyal_constant", [&](std::mt19937_64& rng) {
    const VectorX<double> x = gaussian_matrix(v.n, 1, rng);
    return std::pair{sanyal_det(v, x), elem_sym(x, v.n - 1)};
  });
}

double estimate_main_constant(const TracelessBasis<double>& b, std::uint64_t seed,
                              Stream stream, const Tolerances& tol) {
  if (b.n < 2) throw ArgumentError("main_identity: n must be at least 2");
  return estimate_ratio(seed, stream, tol, "main_identity", [&](std::mt19937_64& rng) {
    const SymMatrixd x = random_symmetric(b.n, rng);
    return std::pair{det(bmatrix(x, b).matrix()), q_times_e(x, tol)};
  });
}

IdentityReport sanyal_constant(const OnesPerpBasis<double>& v, int trials, std::uint64_t seed,
                               double identity_tol, const Tolerances& tol) {
  IdentityReport report;
  report.trials = trials;
  report.seed = seed;
  report.constant = estimate_sanyal_constant(v, seed, Stream::estimate, tol);
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const VectorX<double> x = random_vector_stratified(v.n, rng);
    report.maxRelResidual =
        std::max(report.maxRelResidual,
                 relative_residual(report.constant * elem_sym(x, v.n - 1), sanyal_det(v, x)));
  }
  report.passed = report.maxRelResidual <= identity_tol && report.constant > 0.0;
  return report;
}

IdentityReport main_identity(const TracelessBasis<double>& b, int trials, std::uint64_t seed,
                             double identity_tol, const Tolerances& tol) {
  IdentityReport report;
  report.trials = trials;
  report.seed = seed;
  report.constant = estimate_main_constant(b, seed, Stream::estimate, tol);
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const SymMatrixd x = random_symmetric_stratified(b.n, rng);
    report.maxRelResidual =
        std::max(report.maxRelResidual, relative_residual(report.constant * q_times_e(x, tol),
                                                          det(bmatrix(x, b).matrix())));
  }
  report.passed = report.maxRelResidual <= identity_tol && report.constant > 0.0;
  return report;
}

BlockStructureReport block_structure_check(const VectorX<double>& x,
                                           const OnesPerpBasis<double>& v,
                                           double identity_tol) {
  const Index n = v.n;
  if (x.size() != n) throw ArgumentError("block_structure_check: x and V differ in size");
  const TracelessBasis<double> basis = traceless_basis_from(v);
  const MatrixX<double> bx = bmatrix(SymMatrixd::diagonal(x), basis).matrix();
  const Index nd = n - 1;
  const Index d = basis.d();
  const double scale = 1.0 + x.cwiseAbs().maxCoeff();

  BlockStructureReport report;
  std::ostringstream where;
  double worst = 0.0;
  auto note = [&](double err, double& field, const std::string& what) {
    field = std::max(field, err);
    if (err / scale > worst) {
      worst = err / scale;
      where.str("");
      where << what;
    }
  };

  const MatrixX<double> vdv = v.columns.transpose() * x.asDiagonal() * v.columns;
  for (Index i = 0; i < nd; ++i)
    for (Index j = 0; j < nd; ++j)
      note(std::abs(bx(i, j) - vdv(i, j)), report.maxDiagBlockError,
           "diagonal block entry (" + std::to_string(i) + "," + std::to_string(j) + ")");

  for (Index i = 0; i < nd; ++i)
    for (Index j = nd; j < d; ++j)
      note(std::abs(bx(i, j)), report.maxCrossBlock,
           "cross block entry (" + std::to_string(i) + "," + std::to_string(j) + ")");

  double pair_product = 1.0;
  {
    Index r = nd;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j, ++r) {
        pair_product *= x(i) + x(j);
        for (Index c = nd; c < d; ++c) {
          const double expected = (c == r) ? x(i) + x(j) : 0.0;
          note(std::abs(bx(r, c) - expected), report.maxPairBlockError,
               "pair block entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
        }
      }
    }
  }

  report.detResidual = relative_residual(pair_product * det(vdv), det(bx));
  const double exact_tol = 1e-14 * scale;
  report.passed = report.maxCrossBlock <= exact_tol && report.maxPairBlockError <= exact_tol &&
                  report.maxDiagBlockError <= 1e-12 * scale &&
                  report.detResidual <= identity_tol;
  if (!report.passed) {
    if (report.detResidual > identity_tol && worst <= 1e-14)
      report.violation = "determinant factorization";
    else
      report.violation = where.str();
  }
  return report;
}

bool majorization_check(const SymMatrixd& y, double tol) {
  const SymMatrixd y2(MatrixX<double>(y.matrix() * y.matrix()), Symmetry::symmetrize);
  VectorX<double> diag = y2.matrix().diagonal();
  VectorX<double> eig = eigh(y2).eigenvalues;
  std::sort(diag.data(), diag.data() + diag.size(), std::greater<>());
  std::sort(eig.data(), eig.data() + eig.size(), std::greater<>());
  const double scale = 1.0 + std::abs(y2.trace());
  double sum_diag = 0.0;
  double sum_eig = 0.0;
  for (Index i = 0; i < diag.size(); ++i) {
    sum_diag += diag(i);
    sum_eig += eig(i);
    if (sum_diag > sum_eig + tol * scale) return false;
  }
  return std::abs(sum_diag - sum_eig) <= tol * scale;
}

SliceReport slice_lemma_check(const VectorX<double>& x, int trials, std::uint64_t seed,
                              const Tolerances& tol) {
  const Index n = x.size();
  const SymMatrixd dx = SymMatrixd::diagonal(x);
  const Verdict<double> repr = in_s1_repr(dx, canonical_traceless_basis(n),
                                          tol.membershipTol, tol);
  const Verdict<double> roots = in_dorthant(x, 1, tol.membershipTol, tol);

  SliceReport report;
  report.reprMember = repr.member;
  report.rootMember = roots.member;
  report.margin = roots.margin;
  report.minSampled = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t), Stream::probe);
    const SymMatrixd y = random_traceless(n, rng);
    report.minSampled = std::min(report.minSampled, witness_check(dx, y).value);
  }

  const double scale = 1.0 + x.cwiseAbs().maxCoeff();
  const bool in_band = std::abs(roots.margin) <= 1e-6 * scale;
  bool ok = in_band || repr.member == roots.member;
  // Sampling can only refute membership.
  if (roots.member && report.minSampled < -tol.membershipTol * scale) ok = false;
  if (!repr.member && !(repr.witness && witness_check(dx, *repr.witness).valid) && !in_band)
    ok = false;
  report.passed = ok;
  return report;
}

}  // namespace hypercone
