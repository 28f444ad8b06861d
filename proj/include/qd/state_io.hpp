#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qd/density.hpp"

namespace qd {

/// On-disk state document (.qst): a JSON object with fixed fields
///   dims       - subsystem dimensions
///   matrix_re  - real parts, row-major 2-D array
///   matrix_im  - imaginary parts, same shape
///   metadata   - optional string map
/// The canonical form fixes field order, serializes every float with 17
/// significant digits, and is newline-terminated, so equal states produce
/// byte-identical documents.
struct StateFile {
  std::vector<int> dims;
  std::vector<std::vector<double>> matrix_re;
  std::vector<std::vector<double>> matrix_im;
  std::map<std::string, std::string> metadata;
};

/// Parse a .qst document. Syntax errors carry line/column; semantic errors
/// name the violated invariant and the deviation.
StateFile parse_state_file(const std::string& text);

/// Parse straight to a validated DensityMatrix (validation tol 1e-8).
DensityMatrix parse_state(const std::string& text);

std::string serialize_state_file(const StateFile& file);

/// Canonical text for a state, empty metadata.
std::string serialize_state(const DensityMatrix& rho);

StateFile to_state_file(const DensityMatrix& rho,
                        std::map<std::string, std::string> metadata = {});

DensityMatrix to_density(const StateFile& file, double tol = 1e-8);

/// FNV-1a 64-bit content digest, as fnv1a64:<16 hex digits>.
std::string content_digest(const std::string& bytes);

/// Exchange the two factors of a bipartite state (covers D(B:A) with a
/// single measured-on-B code path).
DensityMatrix swap_bipartite(const DensityMatrix& rho_ab);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qd
