#pragma once

// File formats: matrix, vector, family and basis inputs; LMI, verdict and
// witness outputs.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "hypercone/oracles.hpp"

namespace hypercone::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed or unreadable input file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixReadOptions {
  bool symmetrize = false;  // otherwise |X - X^T| <= asymTol is required
  bool plain = false;       // whitespace-delimited rows instead of JSON
  double asymTol = 1e-12;
};

/// {"n": n, "rows": [[...], ...]}.
SymMatrixd matrix_from_json(const nlohmann::json& j, const MatrixReadOptions& opts = {});
SymMatrixd read_matrix_file(const std::string& path, const MatrixReadOptions& opts = {});

/// {"n": n, "x": [...]} or a bare JSON array; with plain, whitespace-separated.
VectorX<double> read_vector_file(const std::string& path, bool plain = false);

struct Family {
  std::vector<SymMatrixd> matrices;
  VectorX<double> direction;
};

/// {"matrices": [rows, rows, ...], "e": [...]}; each matrix is an array of rows.
Family read_family_file(const std::string& path);

/// JSON array of n x n row-major matrices, validated as a trace-zero basis.
TracelessBasis<double> basis_from_json(const nlohmann::json& j,
                                       const Tolerances& tol = default_tolerances());
TracelessBasis<double> read_basis_file(const std::string& path,
                                       const Tolerances& tol = default_tolerances());

nlohmann::json rows_json(const MatrixX<double>& m);
nlohmann::json matrix_json(const SymMatrixd& x);

/// {"size", "numVars", "labels", "coeffs"} plus schema and convention fields.
nlohmann::json lmi_json(const LmiSystem<double>& lmi);

/// SDPA sparse format with F_0 = 0: 1-based indices, upper triangle only,
/// entries with magnitude below 1e-14 dropped.
std::string lmi_sdpa(const LmiSystem<double>& lmi);

nlohmann::json verdict_json(const Verdict<double>& v, const std::string& cone);
nlohmann::json witness_json(const SymMatrixd& y, const WitnessCheck<double>& check);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace hypercone::io
