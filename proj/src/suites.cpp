#include "hypercone/suites.hpp"

#include <cmath>
#include <functional>

#include "hypercone/io.hpp"
#include "hypercone/verify.hpp"

namespace hypercone {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

json report_json(const IdentityReport& r) {
  return {{"trials", r.trials},
          {"constant", r.constant},
          {"maxRelResidual", r.maxRelResidual},
          {"seed", r.seed},
          {"passed", r.passed}};
}

json tolerances_json(const Tolerances& t) {
  return {{"orthTol", t.orthTol},         {"reconTol", t.reconTol},
          {"rootTol", t.rootTol},         {"pdTol", t.pdTol},
          {"traceTol", t.traceTol},       {"rankTol", t.rankTol},
          {"membershipTol", t.membershipTol}, {"identityTol", t.identityTol},
          {"genericTol", t.genericTol},   {"jacobiSweeps", t.jacobiSweeps},
          {"jacobiThreshold", t.jacobiThreshold}, {"genericResamples", t.genericResamples}};
}

struct Failures {
  std::size_t count = 0;
  json samples = json::array();

  void add(json sample) {
    ++count;
    if (samples.size() < kMaxCounterexamples) samples.push_back(std::move(sample));
  }
};

json failed_sample(const SymMatrixd& x, int trial, const std::string& reason) {
  return {{"trial", trial}, {"rows", io::rows_json(x.matrix())}, {"reason", reason}};
}

json identities_for(Index n, const SuiteConfig& cfg, bool& passed) {
  const auto canonical = canonical_traceless_basis(n);
  const auto orthonormal = orthonormalize(canonical, cfg.tol);
  const auto v = ones_perp_basis(n);
  json out = {{"n", n}};
  try {
    const auto main_c = main_identity(canonical, cfg.trials, cfg.seed, cfg.tol.identityTol, cfg.tol);
    const auto main_o = main_identity(orthonormal, cfg.trials, cfg.seed, cfg.tol.identityTol, cfg.tol);
    const auto sanyal = sanyal_constant(v, cfg.trials, cfg.seed, 1e-10, cfg.tol);
    double block_residual = 0.0;
    bool block_ok = true;
    for (int t = 0; t < cfg.trials; ++t) {
      auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t), Stream::probe);
      const auto blk = block_structure_check(random_vector_stratified(n, rng), v);
      block_residual = std::max(block_residual, blk.detResidual);
      block_ok = block_ok && blk.passed;
    }
    out["mainCanonical"] = report_json(main_c);
    out["mainOrthonormal"] = report_json(main_o);
    out["sanyal"] = report_json(sanyal);
    out["blockStructure"] = {{"maxDetResidual", block_residual}, {"passed", block_ok}};
    passed = passed && main_c.passed && main_o.passed && sanyal.passed && block_ok;
  } catch (const std::exception& e) {
    out["error"] = e.what();
    passed = false;
  }
  return out;
}

json equivalence_for(Index n, const SuiteConfig& cfg, bool& passed) {
  const auto canonical = canonical_traceless_basis(n);
  const auto orthonormal = orthonormalize(canonical, cfg.tol);
  const double tol = cfg.tol.membershipTol;
  Failures failures;
  std::size_t banded = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const SymMatrixd x = random_symmetric_stratified(n, rng);
    try {
      const auto roots = in_dpsd(x, 1, tol, cfg.tol);
      if (std::abs(roots.margin) <= cfg.band * (1.0 + x.max_abs())) {
        ++banded;
        continue;
      }
      for (const auto* basis : {&canonical, &orthonormal}) {
        const auto repr = in_s1_repr(x, *basis, tol, cfg.tol);
        if (repr.member != roots.member) {
          json sample = failed_sample(x, t, "verdicts disagree");
          sample["basis"] = to_string(basis->kind);
          sample["rootMargin"] = roots.margin;
          sample["reprMargin"] = repr.margin;
          failures.add(std::move(sample));
        }
      }
    } catch (const std::exception& e) {
      failures.add(failed_sample(x, t, e.what()));
    }
  }
  passed = passed && failures.count == 0;
  return {{"n", n},
          {"samples", cfg.trials},
          {"banded", banded},
          {"disagreements", failures.count},
          {"counterexamples", failures.samples}};
}

json inclusions_for(Index n, const SuiteConfig& cfg, bool& passed) {
  const auto canonical = canonical_traceless_basis(n);
  const double tol = cfg.tol.membershipTol;
  Failures failures;
  std::size_t chain_violations = 0;
  std::size_t link_violations = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const SymMatrixd x = random_symmetric_stratified(n, rng);
    const double band = cfg.band * (1.0 + x.max_abs());
    // A in and B out (clearly) is a violation of A subset of B.
    auto violated = [band](const Verdict<double>& a, const Verdict<double>& b) {
      return a.member && !b.member && b.margin < -band;
    };
    try {
      std::vector<Verdict<double>> chain;
      for (Index k = 0; k < n; ++k) chain.push_back(in_dpsd(x, k, tol, cfg.tol));
      for (Index k = 1; k < n; ++k) {
        if (violated(chain[k - 1], chain[k])) {
          ++chain_violations;
          failures.add(failed_sample(x, t, "S(" + std::to_string(k - 1) + ") not inside S(" +
                                               std::to_string(k) + ")"));
        }
      }
      const auto psd = in_psd(x, tol, cfg.tol);
      const auto s1 = in_s1_repr(x, canonical, tol, cfg.tol);
      const auto q = in_qcone(x, tol, cfg.tol);
      const Verdict<double> tr{x.trace() >= -tol * (1.0 + x.max_abs()), x.trace(),
                               Method::roots, std::nullopt};
      const std::pair<const Verdict<double>*, const Verdict<double>*> links[] = {
          {&psd, &chain[1]}, {&chain[1], &q}, {&q, &tr}, {&s1, &q}};
      for (const auto& [a, b] : links) {
        if (violated(*a, *b)) {
          ++link_violations;
          failures.add(failed_sample(x, t, "inclusion PSD <= S(1) <= q-cone <= {tr >= 0} violated"));
        }
      }
    } catch (const std::exception& e) {
      failures.add(failed_sample(x, t, e.what()));
    }
  }
  passed = passed && failures.count == 0;
  return {{"n", n},
          {"samples", cfg.trials},
          {"chainViolations", chain_violations},
          {"linkViolations", link_violations},
          {"failures", failures.count},
          {"counterexamples", failures.samples}};
}

}  // namespace

SuiteOutcome run_suites(const SuiteConfig& cfg) {
  if (cfg.nMin < 2 || cfg.nMax > kMaxSuiteN || cfg.nMin > cfg.nMax) {
    throw ArgumentError("verify: n-range must lie within 2.." + std::to_string(kMaxSuiteN) +
                        " (got " + std::to_string(cfg.nMin) + ".." + std::to_string(cfg.nMax) +
                        ")");
  }
  if (cfg.trials < 1) throw ArgumentError("verify: trials must be positive");

  using Runner = json (*)(Index, const SuiteConfig&, bool&);
  std::vector<std::pair<std::string, Runner>> selected;
  const std::pair<const char*, Runner> all[] = {{"identities", identities_for},
                                                {"equivalence", equivalence_for},
                                                {"inclusions", inclusions_for}};
  for (const auto& [name, runner] : all)
    if (cfg.suite == "all" || cfg.suite == name) selected.emplace_back(name, runner);
  if (selected.empty()) throw ArgumentError("verify: unknown suite '" + cfg.suite + "'");

  SuiteOutcome outcome;
  outcome.passed = true;
  json suites = json::object();
  for (const auto& [name, runner] : selected) {
    bool passed = true;
    json per_n = json::array();
    for (int n = cfg.nMin; n <= cfg.nMax; ++n) per_n.push_back(runner(n, cfg, passed));
    suites[name] = {{"passed", passed}, {"results", std::move(per_n)}};
    outcome.passed = outcome.passed && passed;
  }
  outcome.report = {{"schemaVersion", io::kSchemaVersion},
                    {"config",
                     {{"suite", cfg.suite},
                      {"nMin", cfg.nMin},
                      {"nMax", cfg.nMax},
                      {"trials", cfg.trials},
                      {"seed", cfg.seed},
                      {"band", cfg.band},
                      {"tolerances", tolerances_json(cfg.tol)}}},
                    {"suites", std::move(suites)},
                    {"passed", outcome.passed}};
  return outcome;
}

}  // namespace hypercone
