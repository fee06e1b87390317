#include "lqham/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lqham/error.hpp"

namespace lqham {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorKind::kParseError, what);
}

std::size_t read_dim(const json& doc, const char* field) {
  if (!doc.contains(field)) {
    parse_fail(std::string("field '") + field + "': missing");
  }
  const json& v = doc.at(field);
  if (!v.is_number_unsigned()) {
    parse_fail(std::string("field '") + field +
               "': expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

Matrix read_matrix(const json& doc, const char* field, std::size_t rows,
                   std::size_t cols) {
  const std::string where = std::string("field '") + field + "'";
  if (!doc.contains(field)) parse_fail(where + ": missing");
  const json& arr = doc.at(field);
  if (!arr.is_array() || arr.size() != rows) {
    parse_fail(where + ": expected " + std::to_string(rows) + " rows, got " +
               (arr.is_array() ? std::to_string(arr.size()) : "a non-array"));
  }
  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = arr[i];
    if (!row.is_array() || row.size() != cols) {
      parse_fail(where + ": row " + std::to_string(i) + " must have " +
                 std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) {
        parse_fail(where + ": entry (" + std::to_string(i) + ", " +
                   std::to_string(j) + ") is not a number");
      }
      entries.push_back(row[j].get<double>());
    }
  }
  try {
    return Matrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    parse_fail(where + ": " + e.what());
  }
}

// Uniform in [−1, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so files match across platforms.
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = uniform_pm1(rng);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_matrix(const Matrix& mat, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string out = "[\n";
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    out += pad + "  [";
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      if (j > 0) out += ", ";
      out += format_double(mat(i, j));
    }
    out += i + 1 < mat.rows() ? "],\n" : "]\n";
  }
  out += pad + "]";
  return out;
}

ProblemInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("document must be an object");

  ProblemInstance inst;
  inst.n = read_dim(doc, "n");
  inst.m = read_dim(doc, "m");
  inst.kf = read_dim(doc, "kf");
  if (inst.n == 0) parse_fail("field 'n': must be at least 1");
  if (inst.m == 0) parse_fail("field 'm': must be at least 1");
  inst.A = read_matrix(doc, "A", inst.n, inst.n);
  inst.B = read_matrix(doc, "B", inst.n, inst.m);
  inst.Q = read_matrix(doc, "Q", inst.n, inst.n);
  inst.R = read_matrix(doc, "R", inst.m, inst.m);
  inst.S = read_matrix(doc, "S", inst.n, inst.m);
  inst.validate();
  return inst;
}

std::string serialize_instance(const ProblemInstance& inst) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(inst.n) + ",\n";
  out += "  \"m\": " + std::to_string(inst.m) + ",\n";
  out += "  \"kf\": " + std::to_string(inst.kf) + ",\n";
  out += "  \"A\": " + format_matrix(inst.A, 2) + ",\n";
  out += "  \"B\": " + format_matrix(inst.B, 2) + ",\n";
  out += "  \"Q\": " + format_matrix(inst.Q, 2) + ",\n";
  out += "  \"R\": " + format_matrix(inst.R, 2) + ",\n";
  out += "  \"S\": " + format_matrix(inst.S, 2) + "\n";
  out += "}\n";
  return out;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  }
  out << text;
}

ProblemInstance generate_instance(std::uint64_t seed, std::size_t n,
                                  std::size_t m, std::size_t kf) {
  if (n == 0 || m == 0 || kf == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "generate_instance: n, m and kf must be at least 1");
  }
  std::mt19937_64 rng(seed);
  Matrix A = random_matrix(rng, n, n);
  const double rho = spectral_radius_estimate(A);
  if (rho > 0.0) A *= 0.9 / rho;
  Matrix B = random_matrix(rng, n, m);
  const Matrix L = random_matrix(rng, n + m, n + m);
  const Matrix H = L * L.transpose();

  Matrix R = H.block(n, n, m, m);
  for (std::size_t i = 0; i < m; ++i) R(i, i) += 1e-6;
  return make_instance(kf, std::move(A), std::move(B), H.block(0, 0, n, n),
                       std::move(R), H.block(0, n, n, m));
}

}  // namespace lqham
