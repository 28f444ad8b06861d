#include "qd/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qd/errors.hpp"

namespace qd {

namespace {

std::string canonical_double(double x) {
  // 17 significant digits round-trips every finite double exactly.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_rows(std::string& out, const std::vector<std::vector<double>>& rows) {
  out += "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ", ";
      out += canonical_double(rows[i][j]);
    }
    out += (i + 1 < rows.size()) ? "],\n" : "]\n";
  }
  out += "  ]";
}

std::vector<std::vector<double>> read_2d(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ValidationError("state file: missing field '" + key + "'");
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ValidationError("state file: '" + key + "' must be a 2-D array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : arr) {
    if (!row.is_array()) throw ValidationError("state file: '" + key + "' must be a 2-D array");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw ValidationError("state file: '" + key + "' entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

StateFile parse_state_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw ValidationError(std::string("state file: syntax error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("state file: top level must be an object");

  StateFile file;
  if (!j.contains("dims")) throw ValidationError("state file: missing field 'dims'");
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer())
      throw ValidationError("state file: 'dims' entries must be integers");
    file.dims.push_back(d.get<int>());
  }
  file.matrix_re = read_2d(j, "matrix_re");
  file.matrix_im = read_2d(j, "matrix_im");
  if (j.contains("metadata")) {
    if (!j.at("metadata").is_object())
      throw ValidationError("state file: 'metadata' must be an object of strings");
    for (const auto& [k, v] : j.at("metadata").items()) {
      if (!v.is_string())
        throw ValidationError("state file: 'metadata' values must be strings");
      file.metadata[k] = v.get<std::string>();
    }
  }

  const int side = product_of_dims(file.dims);
  const auto check_shape = [&](const std::vector<std::vector<double>>& m, const char* name) {
    if (static_cast<int>(m.size()) != side)
      throw ValidationError(std::string("state file: '") + name + "' must be " +
                            std::to_string(side) + "x" + std::to_string(side) +
                            " to match dims");
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != side)
        throw ValidationError(std::string("state file: '") + name + "' rows must have length " +
                              std::to_string(side));
  };
  if (file.dims.empty()) throw ValidationError("state file: 'dims' must be nonempty");
  check_shape(file.matrix_re, "matrix_re");
  check_shape(file.matrix_im, "matrix_im");
  return file;
}

DensityMatrix to_density(const StateFile& file, double tol) {
  const int side = product_of_dims(file.dims);
  CMatrix m(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      m(i, j) = std::complex<double>(
          file.matrix_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
          file.matrix_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return DensityMatrix(std::move(m), file.dims, tol);
}

DensityMatrix parse_state(const std::string& text) {
  return to_density(parse_state_file(text));
}

StateFile to_state_file(const DensityMatrix& rho, std::map<std::string, std::string> metadata) {
  StateFile file;
  file.dims = rho.dims();
  const int side = rho.side();
  file.matrix_re.assign(static_cast<std::size_t>(side),
                        std::vector<double>(static_cast<std::size_t>(side)));
  file.matrix_im = file.matrix_re;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      file.matrix_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rho.matrix()(i, j).real();
      file.matrix_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rho.matrix()(i, j).imag();
    }
  file.metadata = std::move(metadata);
  return file;
}

std::string serialize_state_file(const StateFile& file) {
  std::string out = "{\n  \"dims\": [";
  for (std::size_t i = 0; i < file.dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(file.dims[i]);
  }
  out += "],\n  \"matrix_re\": ";
  append_rows(out, file.matrix_re);
  out += ",\n  \"matrix_im\": ";
  append_rows(out, file.matrix_im);
  out += ",\n  \"metadata\": {";
  bool first = true;
  for (const auto& [k, v] : file.metadata) {
    out += first ? "\n" : ",\n";
    out += "    \"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
    first = false;
  }
  out += first ? "}" : "\n  }";
  out += "\n}\n";
  return out;
}

std::string serialize_state(const DensityMatrix& rho) {
  return serialize_state_file(to_state_file(rho));
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DensityMatrix swap_bipartite(const DensityMatrix& rho_ab) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("swap: state must have exactly two subsystems");
  return permute_subsystems(rho_ab, {1, 0});
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace qd
