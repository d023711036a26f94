#include "hypercone/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hypercone::io {

using nlohmann::json;

namespace {

json parse_json_file(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": invalid JSON (" + e.what() + ")");
  }
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw IoError(where + ": expected a number");
  return j.get<double>();
}

MatrixX<double> rows_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw IoError(where + ": expected a non-empty array of rows");
  const Index n = static_cast<Index>(rows.size());
  MatrixX<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw IoError(row_where + ": expected an array");
    if (static_cast<Index>(row.size()) != n) {
      throw IoError(row_where + ": matrix is not square (row has " + std::to_string(row.size()) +
                    " entries, expected " + std::to_string(n) + ")");
    }
    for (Index k = 0; k < n; ++k)
      m(i, k) = number_at(row[static_cast<std::size_t>(k)],
                          row_where + "[" + std::to_string(k) + "]");
  }
  return m;
}

SymMatrixd to_sym(const MatrixX<double>& m, const MatrixReadOptions& opts,
                  const std::string& where) {
  if (opts.symmetrize) return SymMatrixd(m, Symmetry::symmetrize);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= opts.asymTol)) {
    std::ostringstream msg;
    msg << where << ": matrix is not symmetric (max |X - X^T| = " << asym
        << "); pass --symmetrize to use (X + X^T)/2";
    throw IoError(msg.str());
  }
  return SymMatrixd(m, Symmetry::symmetrize);
}

std::vector<std::vector<double>> plain_rows(const std::string& text, const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw IoError(path + ": write failed");
}

SymMatrixd matrix_from_json(const json& j, const MatrixReadOptions& opts) {
  if (!j.is_object()) throw IoError("matrix: expected an object with fields \"n\" and \"rows\"");
  if (!j.contains("rows")) throw IoError("matrix: missing field \"rows\"");
  const MatrixX<double> m = rows_from_json(j.at("rows"), "rows");
  if (j.contains("n")) {
    const json& n = j.at("n");
    if (!n.is_number_integer() || n.get<Index>() != m.rows())
      throw IoError("n: does not match the number of rows (" + std::to_string(m.rows()) + ")");
  }
  return to_sym(m, opts, "rows");
}

SymMatrixd read_matrix_file(const std::string& path, const MatrixReadOptions& opts) {
  if (!opts.plain) {
    try {
      return matrix_from_json(parse_json_file(path), opts);
    } catch (const IoError& e) {
      const std::string what = e.what();
      if (what.rfind(path, 0) == 0) throw;
      throw IoError(path + ": " + what);
    }
  }
  const auto rows = plain_rows(read_text(path), path);
  if (rows.empty()) throw IoError(path + ": no matrix rows found");
  const Index n = static_cast<Index>(rows.size());
  MatrixX<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != n) {
      throw IoError(path + ": row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " entries, matrix is not square");
    }
    for (Index k = 0; k < n; ++k) m(i, k) = rows[i][k];
  }
  return to_sym(m, opts, path);
}

VectorX<double> read_vector_file(const std::string& path, bool plain) {
  std::vector<double> values;
  if (plain) {
    for (const auto& row : plain_rows(read_text(path), path))
      values.insert(values.end(), row.begin(), row.end());
  } else {
    const json j = parse_json_file(path);
    const json* arr = &j;
    if (j.is_object()) {
      if (!j.contains("x")) throw IoError(path + ": missing field \"x\"");
      arr = &j.at("x");
    }
    if (!arr->is_array()) throw IoError(path + ": x: expected an array of numbers");
    for (std::size_t i = 0; i < arr->size(); ++i)
      values.push_back(number_at((*arr)[i], path + ": x[" + std::to_string(i) + "]"));
    if (j.is_object() && j.contains("n") &&
        (!j.at("n").is_number_integer() || j.at("n").get<std::size_t>() != values.size()))
      throw IoError(path + ": n: does not match the length of x");
  }
  if (values.empty()) throw IoError(path + ": empty vector");
  return Eigen::Map<const VectorX<double>>(values.data(), static_cast<Index>(values.size()));
}

Family read_family_file(const std::string& path) {
  const json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("matrices") || !j.contains("e"))
    throw IoError(path + ": expected an object with fields \"matrices\" and \"e\"");
  const json& mats = j.at("matrices");
  const json& e = j.at("e");
  if (!mats.is_array() || mats.empty()) throw IoError(path + ": matrices: expected a non-empty array");
  if (!e.is_array() || e.size() != mats.size())
    throw IoError(path + ": e: expected an array with one entry per matrix");
  Family family;
  family.direction.resize(static_cast<Index>(e.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const std::string where = path + ": matrices[" + std::to_string(i) + "]";
    const MatrixX<double> m = rows_from_json(mats[i], where);
    family.matrices.push_back(to_sym(m, {}, where));
    family.direction(static_cast<Index>(i)) =
        number_at(e[i], path + ": e[" + std::to_string(i) + "]");
  }
  return family;
}

TracelessBasis<double> basis_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_array() || j.empty()) throw IoError("basis: expected a non-empty array of matrices");
  TracelessBasis<double> b{0, BasisKind::custom, {}};
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "basis[" + std::to_string(i) + "]";
    b.mats.push_back(to_sym(rows_from_json(j[i], where), {}, where));
  }
  b.n = b.mats.front().n();
  try {
    validate_basis(b, tol);
  } catch (const DegenerateBasis& e) {
    throw IoError(e.what());
  }
  return b;
}

TracelessBasis<double> read_basis_file(const std::string& path, const Tolerances& tol) {
  try {
    return basis_from_json(parse_json_file(path), tol);
  } catch (const IoError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw IoError(path + ": " + what);
  }
}

json rows_json(const MatrixX<double>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const SymMatrixd& x) {
  return {{"schemaVersion", kSchemaVersion}, {"n", x.n()}, {"rows", rows_json(x.matrix())}};
}

json lmi_json(const LmiSystem<double>& lmi) {
  json coeffs = json::array();
  for (const auto& c : lmi.coeffs) coeffs.push_back(rows_json(c.matrix()));
  return {
      {"schemaVersion", kSchemaVersion},
      {"size", lmi.size},
      {"numVars", lmi.numVars},
      {"labels", lmi.varLabels},
      {"coeffs", std::move(coeffs)},
      {"convention",
       "sum_i x_i coeffs[i] >= 0; a variable labelled X[p][q] with p < q multiplies the image "
       "of E_pq + E_qp, i.e. it is the matrix entry itself, not a sqrt(2)-scaled coordinate"},
  };
}

std::string lmi_sdpa(const LmiSystem<double>& lmi) {
  std::ostringstream out;
  out << "\"hypercone LMI: sum_i x_i F_i >= 0 with F_0 = 0\n";
  out << "\"variables: ";
  for (std::size_t i = 0; i < lmi.varLabels.size(); ++i)
    out << (i ? " " : "") << lmi.varLabels[i];
  out << "\n";
  out << "\"off-diagonal X[p][q] variables multiply the image of E_pq + E_qp; "
         "entries below 1e-14 are dropped\n";
  out << lmi.numVars << "\n1\n" << lmi.size << "\n";
  for (Index i = 0; i < lmi.numVars; ++i) out << (i ? " " : "") << "0";
  out << "\n";
  for (Index v = 0; v < lmi.numVars; ++v) {
    const MatrixX<double>& c = lmi.coeffs[static_cast<std::size_t>(v)].matrix();
    for (Index r = 0; r < c.rows(); ++r) {
      for (Index k = r; k < c.cols(); ++k) {
        if (std::abs(c(r, k)) < 1e-14) continue;
        out << v + 1 << " 1 " << r + 1 << " " << k + 1 << " " << format_double(c(r, k)) << "\n";
      }
    }
  }
  return out.str();
}

json verdict_json(const Verdict<double>& v, const std::string& cone) {
  json out = {{"schemaVersion", kSchemaVersion},
              {"cone", cone},
              {"member", v.member},
              {"margin", v.margin},
              {"method", to_string(v.method)}};
  return out;
}

json witness_json(const SymMatrixd& y, const WitnessCheck<double>& check) {
  return {{"schemaVersion", kSchemaVersion}, {"n", y.n()},        {"rows", rows_json(y.matrix())},
          {"trace", y.trace()},              {"value", check.value}, {"valid", check.valid}};
}

}  // namespace hypercone::io
