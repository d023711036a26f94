// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "hypercone/bmap.hpp"
#include "hypercone/verify.hpp"

namespace {

using namespace hypercone;

constexpr double kBand = 1e-6;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (passed) detail << "first failure: " << what << "; ";
    passed = false;
  }
};

double band(double scale) { return kBand * scale; }

bool lmi_psd(const SymMatrixd& m, double tol) { return eigh(m).min() >= -tol * (1 + m.max_abs()); }

double binom(Index n, Index k) {
  double r = 1.0;
  for (Index i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

void representation_equivalence(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  int compared = 0, excluded = 0;
  for (Index n = 2; n <= 7; ++n) {
    const auto canonical = canonical_traceless_basis(n);
    const auto orthonormal = orthonormalize(canonical);
    for (int t = 0; t < 1000; ++t) {
      auto rng = trial_rng(101, static_cast<std::uint64_t>(n * 100000 + t));
      const SymMatrixd x = random_symmetric_stratified(n, rng);
      const auto roots = in_dpsd(x, 1);
      if (std::abs(roots.margin) <= band(1 + x.max_abs())) {
        ++excluded;
        continue;
      }
      for (const auto* b : {&canonical, &orthonormal}) {
        ++compared;
        if (in_s1_repr(x, *b).member != roots.member)
          out.fail("n=" + std::to_string(n) + " trial " + std::to_string(t) + " basis " +
                   to_string(b->kind));
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 60.0) out.fail("runtime " + std::to_string(secs) + " s");
  out.detail << compared << " comparisons, " << excluded << " samples in band, " << secs << " s";
}

void main_identity_check(Outcome& out) {
  double worst = 0.0, worst_drift = 0.0;
  for (Index n = 2; n <= 6; ++n) {
    const auto canonical = canonical_traceless_basis(n);
    const auto orthonormal = orthonormalize(canonical);
    for (const auto* b : {&canonical, &orthonormal}) {
      const auto r = main_identity(*b, 500, 202, 1e-8);
      worst = std::max(worst, r.maxRelResidual);
      const std::string where = "n=" + std::to_string(n) + " " + to_string(b->kind);
      if (!r.passed) out.fail(where + " residual " + std::to_string(r.maxRelResidual));
      if (!(r.constant > 0)) out.fail(where + " c <= 0");
      const double again = estimate_main_constant(*b, 203, Stream::refit);
      const double drift = std::abs(again - r.constant) / std::abs(r.constant);
      worst_drift = std::max(worst_drift, drift);
      if (!(drift <= 1e-9)) out.fail(where + " c drift " + std::to_string(drift));
    }
  }
  out.detail << "max residual " << worst << ", max relative drift of c " << worst_drift;
}

void sanyal_check(Outcome& out) {
  double worst = 0.0;
  for (Index n = 2; n <= 8; ++n) {
    const auto r = sanyal_constant(ones_perp_basis(n), 500, 303, 1e-10);
    worst = std::max(worst, r.maxRelResidual);
    if (!r.passed) out.fail("n=" + std::to_string(n) + " residual " + std::to_string(r.maxRelResidual));
    if (n <= 3 && !(std::abs(r.constant - 1.0) <= 1e-9))
      out.fail("n=" + std::to_string(n) + " c = " + std::to_string(r.constant));
  }
  out.detail << "max residual " << worst;
}

void size_checks(Outcome& out) {
  for (Index n = 2; n <= 8; ++n) {
    const auto lmi = bmap_lmi(canonical_traceless_basis(n));
    if (lmi.size != n * (n + 1) / 2 - 1) out.fail("s1 n=" + std::to_string(n));
    if (lmi.numVars != n * (n + 1) / 2) out.fail("s1 vars n=" + std::to_string(n));
  }
  for (Index n = 3; n <= 8; ++n) {
    const auto lmi = orthant2_lmi(n, canonical_traceless_basis(n - 1), ones_perp_basis(n));
    if (lmi.size != n * (n - 1) / 2 - 1) out.fail("orthant2 n=" + std::to_string(n));
  }
  out.detail << "s1 for n=2..8, orthant2 for n=3..8";
}

void q_identity(Outcome& out) {
  for (Index n = 2; n <= 8; ++n) {
    const double expected = std::ldexp(1.0, static_cast<int>(binom(n, 2)));
    const double got = q_eval(SymMatrixd::identity(n));
    if (got != expected) out.fail("n=" + std::to_string(n) + " got " + std::to_string(got));
  }
  out.detail << "exact for n=2..8";
}

void inclusion_chain(Outcome& out) {
  int violations = 0;
  for (Index n = 2; n <= 7; ++n) {
    for (int t = 0; t < 1000; ++t) {
      auto rng = trial_rng(606, static_cast<std::uint64_t>(n * 100000 + t));
      const SymMatrixd x = random_symmetric_stratified(n, rng);
      const double b = band(1 + x.max_abs());
      const auto psd = in_psd(x);
      const auto s1 = in_dpsd(x, 1);
      const auto q = in_qcone(x);
      const std::string where = "n=" + std::to_string(n) + " trial " + std::to_string(t);
      if (psd.member && s1.margin < -b) ++violations, out.fail("PSD not in S(1) " + where);
      if (s1.member && q.margin < -b) ++violations, out.fail("S(1) not in q-cone " + where);
      if (q.member && x.trace() < -b) ++violations, out.fail("q-cone not in tr>=0 " + where);
    }
  }
  const SymMatrixd w(MatrixX<double>(VectorX<double>{{1, 1, -1}}.asDiagonal()));
  const bool strict = in_qcone(w).member && w.trace() >= 0 && !in_dpsd(w, 1).member;
  if (!strict) out.fail("diag(1,1,-1) strictness witness");
  out.detail << violations << " violations; diag(1,1,-1) strict: " << (strict ? "yes" : "no");
}

void certificate_soundness(Outcome& out) {
  int found = 0, draws = 0;
  double worst_trace = 0.0, worst_value = -INFINITY;
  while (found < 200 && draws < 100000) {
    const Index n = 2 + draws % 5;
    auto rng = trial_rng(707, static_cast<std::uint64_t>(draws++));
    const SymMatrixd x = random_symmetric_stratified(n, rng);
    const auto v = in_s1_repr(x, canonical_traceless_basis(n));
    if (v.member) continue;
    ++found;
    if (!v.witness) {
      out.fail("no witness returned");
      continue;
    }
    const SymMatrixd& y = *v.witness;
    const double tr = std::abs(y.trace());
    const double value = (y.matrix() * x.matrix() * y.matrix()).trace();
    worst_trace = std::max(worst_trace, tr);
    worst_value = std::max(worst_value, value);
    if (!(tr <= 1e-10)) out.fail("|tr Y| = " + std::to_string(tr));
    if (!(value < 0)) out.fail("tr(YXY) = " + std::to_string(value));
  }
  if (found < 200) out.fail("only " + std::to_string(found) + " non-members drawn");
  out.detail << found << " witnesses, max |tr Y| " << worst_trace << ", max tr(YXY) "
             << worst_value;
}

void quadratic_cone(Outcome& out) {
  const double tol = default_tolerances().membershipTol;
  int compared = 0;
  for (Index n = 3; n <= 6; ++n) {
    const auto o = orthonormalize(canonical_traceless_basis(n));
    for (int t = 0; t < 500; ++t) {
      auto rng = trial_rng(808, static_cast<std::uint64_t>(n * 100000 + t));
      const SymMatrixd x = random_symmetric_stratified(n, rng);
      const auto roots = in_dpsd(x, n - 2);
      if (std::abs(roots.margin) <= band(1 + x.max_abs())) continue;
      ++compared;
      const bool arrow = lmi_psd(quad_cone_matrix(x, o), tol);
      const bool closed = in_quadcone_closed(x).member;
      if (arrow != roots.member || closed != roots.member)
        out.fail("n=" + std::to_string(n) + " trial " + std::to_string(t));
    }
  }
  out.detail << compared << " samples compared";
}

void orthant2(Outcome& out) {
  const double tol = default_tolerances().membershipTol;
  int compared = 0;
  for (Index n = 3; n <= 7; ++n) {
    const auto lmi = orthant2_lmi(n, canonical_traceless_basis(n - 1), ones_perp_basis(n));
    for (int t = 0; t < 500; ++t) {
      auto rng = trial_rng(909, static_cast<std::uint64_t>(n * 100000 + t));
      const VectorX<double> x = random_vector_stratified(n, rng);
      const auto roots = in_dorthant(x, 2);
      if (std::abs(roots.margin) <= band(1 + x.cwiseAbs().maxCoeff())) continue;
      ++compared;
      if (lmi_psd(lmi.evaluate(x), tol) != roots.member)
        out.fail("n=" + std::to_string(n) + " trial " + std::to_string(t));
    }
  }
  out.detail << compared << " samples compared";
}

void proof_properties(Outcome& out) {
  double worst_det = 0.0;
  for (Index n = 2; n <= 8; ++n) {
    for (int t = 0; t < 50; ++t) {
      auto rng = trial_rng(1001, static_cast<std::uint64_t>(n * 1000 + t));
      const auto r =
          block_structure_check(random_vector_stratified(n, rng), ones_perp_basis(n), 1e-10);
      worst_det = std::max(worst_det, r.detResidual);
      if (!r.passed) out.fail("block n=" + std::to_string(n) + ": " + r.violation);
    }
  }
  for (Index n = 1; n <= 8; ++n) {
    for (int t = 0; t < 500; ++t) {
      auto rng = trial_rng(1002, static_cast<std::uint64_t>(n * 1000 + t));
      if (!majorization_check(random_symmetric(n, rng)))
        out.fail("majorization n=" + std::to_string(n));
    }
  }
  int compared = 0;
  for (Index n = 2; n <= 6; ++n) {
    const auto b = canonical_traceless_basis(n);
    const auto o = orthonormalize(b);
    for (int t = 0; t < 50; ++t) {
      auto rng = trial_rng(1003, static_cast<std::uint64_t>(n * 1000 + t));
      const SymMatrixd x = random_symmetric_stratified(n, rng);
      const SymMatrixd y = x.conjugated(random_orthogonal(n, rng));
      const double b_x = band(1 + x.max_abs());
      std::vector<std::pair<Verdict<double>, Verdict<double>>> pairs{
          {in_psd(x), in_psd(y)},
          {in_qcone(x), in_qcone(y)},
          {in_quadcone_closed(x), in_quadcone_closed(y)},
      };
      for (Index k = 0; k < n; ++k) pairs.emplace_back(in_dpsd(x, k), in_dpsd(y, k));
      const auto s1 = in_dpsd(x, 1);
      for (const auto& [a, c] : pairs) {
        const double scale = a.method == Method::closedQuad ? b_x * (1 + x.max_abs()) : b_x;
        if (std::abs(a.margin) <= scale) continue;
        ++compared;
        if (a.member != c.member) out.fail("invariance n=" + std::to_string(n));
      }
      if (std::abs(s1.margin) > b_x) {
        compared += 2;
        if (in_s1_repr(x, b).member != in_s1_repr(y, b).member ||
            in_s1_repr(x, o).member != in_s1_repr(y, o).member)
          out.fail("s1repr invariance n=" + std::to_string(n));
      }
    }
  }
  out.detail << "block det residual max " << worst_det << "; " << compared
             << " invariance comparisons";
}

void counterexample(Outcome& out) {
  const SymMatrixd x(MatrixX<double>(VectorX<double>{{-1, 0, 0}}.asDiagonal()));
  const auto v = in_dpsd(x, 1);
  const auto r = derivative_roots(eigh(x).eigenvalues, 1);
  if (v.member) out.fail("diag(-1,0,0) accepted");
  // bisection stops at rootTol (1 + |bracket end|); both brackets lie in [-1, 0]
  const double root_tol = 2 * default_tolerances().rootTol;
  if (!(std::abs(r[0] + 2.0 / 3.0) <= root_tol && std::abs(r[1]) <= root_tol))
    out.fail("roots differ from {-2/3, 0}");
  out.detail << std::setprecision(17) << "roots {" << r[0] << ", " << r[1] << "}";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"representation equivalence", representation_equivalence},
      {"main determinantal identity", main_identity_check},
      {"ones-perp determinant identity", sanyal_check},
      {"exact LMI sizes", size_checks},
      {"q at identity", q_identity},
      {"inclusion chain and sandwich", inclusion_chain},
      {"certificate soundness", certificate_soundness},
      {"quadratic cone", quadratic_cone},
      {"orthant-2 representation", orthant2},
      {"proof-technique properties", proof_properties},
      {"counterexample regression", counterexample},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s: %s\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
