// hypercone: membership checks, LMI export, certificates and verification runs.
//
// Exit codes: 0 success / member, 1 non-member (or no witness, or a direction
// that is not positive definite), 2 usage or input error, 3 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "hypercone/io.hpp"
#include "hypercone/suites.hpp"
#include "hypercone/verify.hpp"

namespace {

using namespace hypercone;
using nlohmann::json;

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kNumerical = 3 };

struct CommonInput {
  std::string path;
  bool symmetrize = false;
  bool plain = false;
  std::string basis = "canonical";
  std::string basisFile;
  std::string out;
  double tol = default_tolerances().membershipTol;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text(out, text);
}

TracelessBasis<double> select_basis(Index n, const std::string& kind, const std::string& file) {
  if (!file.empty()) {
    auto b = io::read_basis_file(file);
    if (b.n != n) {
      throw io::IoError(file + ": basis has side " + std::to_string(b.n) + ", expected " +
                        std::to_string(n));
    }
    return b;
  }
  if (kind == "canonical") return canonical_traceless_basis(n);
  if (kind == "orthonormal") return orthonormalize(canonical_traceless_basis(n));
  throw ArgumentError("unknown basis '" + kind + "' (canonical | orthonormal)");
}

io::MatrixReadOptions read_options(const CommonInput& in) {
  io::MatrixReadOptions opts;
  opts.symmetrize = in.symmetrize;
  opts.plain = in.plain;
  return opts;
}

// "dpsd:2" -> {"dpsd", 2}
std::pair<std::string, std::optional<Index>> parse_cone(const std::string& cone) {
  const auto colon = cone.find(':');
  if (colon == std::string::npos) return {cone, std::nullopt};
  const std::string order = cone.substr(colon + 1);
  std::size_t used = 0;
  long k = -1;
  try {
    k = std::stol(order, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != order.size())
    throw ArgumentError("--cone: bad derivative order in '" + cone + "'");
  return {cone.substr(0, colon), static_cast<Index>(k)};
}

int cmd_check(const CommonInput& in, const std::string& cone_spec) {
  const auto [cone, order] = parse_cone(cone_spec);
  const bool needs_order = cone == "dpsd" || cone == "dorthant";
  if (needs_order != order.has_value())
    throw ArgumentError("--cone: '" + cone_spec + "' (expected psd | dpsd:k | qcone | s1repr | "
                        "quad | dorthant:k)");
  Verdict<double> verdict;
  if (cone == "dorthant") {
    verdict = in_dorthant(io::read_vector_file(in.path, in.plain), *order, in.tol);
  } else {
    const SymMatrixd x = io::read_matrix_file(in.path, read_options(in));
    if (cone == "psd")
      verdict = in_psd(x, in.tol);
    else if (cone == "dpsd")
      verdict = in_dpsd(x, *order, in.tol);
    else if (cone == "qcone")
      verdict = in_qcone(x, in.tol);
    else if (cone == "s1repr")
      verdict = in_s1_repr(x, select_basis(x.n(), in.basis, in.basisFile), in.tol);
    else if (cone == "quad")
      verdict = in_quadcone_closed(x, in.tol);
    else
      throw ArgumentError("--cone: unknown cone '" + cone + "'");
  }
  emit(io::verdict_json(verdict, cone_spec).dump(2) + "\n", in.out);
  return verdict.member ? kOk : kNegative;
}

struct ReprInput {
  int n = 0;
  std::string kind = "s1";
  std::string family;
  std::string format = "json";
};

int cmd_repr(const CommonInput& in, const ReprInput& r) {
  if (r.format != "json" && r.format != "sdpa")
    throw ArgumentError("--format: expected json or sdpa");
  LmiSystem<double> lmi;
  try {
    if (r.kind == "derivative") {
      if (r.family.empty()) throw ArgumentError("repr --kind derivative requires --family");
      const auto family = io::read_family_file(r.family);
      lmi = derivative_cone_lmi(family.matrices, family.direction,
                                select_basis(family.matrices.front().n(), in.basis, in.basisFile));
    } else {
      if (r.n < 2) throw ArgumentError("repr: --n must be at least 2");
      if (r.kind == "s1") {
        lmi = bmap_lmi(select_basis(r.n, in.basis, in.basisFile));
      } else if (r.kind == "orthant2") {
        if (r.n < 3) throw ArgumentError("repr --kind orthant2: --n must be at least 3");
        lmi = orthant2_lmi<double>(r.n, select_basis(r.n - 1, in.basis, in.basisFile),
                                   ones_perp_basis(r.n));
      } else if (r.kind == "quad") {
        // the arrow form needs an orthonormal basis; Gram-Schmidt the chosen one
        lmi = quad_cone_lmi(orthonormalize(select_basis(r.n, in.basis, in.basisFile)));
      } else {
        throw ArgumentError("--kind: expected s1 | orthant2 | quad | derivative");
      }
    }
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: direction is not a definiteness direction: A_0 has smallest eigenvalue "
              << e.min_eigenvalue() << "\n";
    return kNegative;
  }
  emit(r.format == "json" ? io::lmi_json(lmi).dump(2) + "\n" : io::lmi_sdpa(lmi), in.out);
  return kOk;
}

int cmd_witness(const CommonInput& in) {
  const SymMatrixd x = io::read_matrix_file(in.path, read_options(in));
  const auto verdict = in_s1_repr(x, select_basis(x.n(), in.basis, in.basisFile), in.tol);
  if (verdict.member) {
    std::cerr << "no witness: X satisfies B(X) >= 0 (margin " << verdict.margin << ")\n";
    return kNegative;
  }
  const SymMatrixd& y = *verdict.witness;
  const auto check = witness_check(x, y, in.tol);
  emit(io::witness_json(y, check).dump(2) + "\n", in.out);
  std::cerr << "tr(YXY) = " << check.value << "\n";
  return check.valid ? kOk : kNumerical;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ArgumentError("--n-range: expected LO..HI, got '" + text + "'");
  }
}

int cmd_verify(const CommonInput& in, SuiteConfig cfg, const std::string& range) {
  std::tie(cfg.nMin, cfg.nMax) = parse_range(range);
  cfg.tol.membershipTol = in.tol;
  const SuiteOutcome outcome = run_suites(cfg);
  emit(outcome.report.dump(2) + "\n", in.out);
  return outcome.passed ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership oracles, spectrahedral representations and certificates for "
               "derivative relaxations of the PSD cone"};
  app.require_subcommand(1);

  CommonInput in;
  auto add_common = [&in](CLI::App* sub) {
    sub->add_option("--tol", in.tol, "Membership slack (relative)");
    sub->add_option("--out", in.out, "Write output to this file instead of stdout");
  };
  auto add_matrix_input = [&in](CLI::App* sub) {
    sub->add_option("path", in.path, "Matrix (or vector) file")->required();
    sub->add_flag("--symmetrize", in.symmetrize, "Replace X by (X + X^T)/2");
    sub->add_flag("--plain", in.plain, "Whitespace-delimited text instead of JSON");
  };
  auto add_basis = [&in](CLI::App* sub) {
    sub->add_option("--basis", in.basis, "canonical | orthonormal");
    sub->add_option("--basis-file", in.basisFile, "JSON array of trace-zero basis matrices");
  };

  std::string cone;
  auto* check = app.add_subcommand("check", "Decide membership of X in a cone");
  add_matrix_input(check);
  add_basis(check);
  add_common(check);
  check->add_option("--cone", cone, "psd | dpsd:k | qcone | s1repr | quad | dorthant:k")
      ->required();

  ReprInput repr_in;
  auto* repr = app.add_subcommand("repr", "Export a linear matrix inequality");
  add_basis(repr);
  add_common(repr);
  repr->add_option("--n", repr_in.n, "Matrix side (vector length for orthant2)");
  repr->add_option("--kind", repr_in.kind, "s1 | orthant2 | quad | derivative");
  repr->add_option("--family", repr_in.family, "Family file for --kind derivative");
  repr->add_option("--format", repr_in.format, "json | sdpa");

  auto* witness = app.add_subcommand("witness", "Certificate Y with tr(Y) = 0, tr(YXY) < 0");
  add_matrix_input(witness);
  add_basis(witness);
  add_common(witness);

  SuiteConfig cfg;
  std::string range = "2..6";
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "identities | equivalence | inclusions | all");
  verify->add_option("--n-range", range, "LO..HI within 2..8");
  verify->add_option("--trials", cfg.trials, "Samples per n");
  verify->add_option("--seed", cfg.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(in, cone);
    if (*repr) return cmd_repr(in, repr_in);
    if (*witness) return cmd_witness(in);
    if (*verify) return cmd_verify(in, cfg, range);
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateBasis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
