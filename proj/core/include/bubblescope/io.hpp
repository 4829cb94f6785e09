#pragma once

#include <iosfwd>
#include <string>

#include "bubblescope/discrete_map.hpp"

namespace bubblescope {

/// Library version string, e.g. "0.3.0".
[[nodiscard]] const char* version() noexcept;

/// Shortest round-trip-safe text for a double (17 significant digits).
[[nodiscard]] std::string format_double(double x);

/// JSON text {dim, kind, vertices, simplices, weights, ...}.
[[nodiscard]] std::string mesh_to_json(const Domain& d);
/// JSON text of the mesh fields plus {target: {kind, n, nu}, values}.
[[nodiscard]] std::string map_to_json(const DiscreteMap& f);

[[nodiscard]] Domain mesh_from_json(const std::string& text);
[[nodiscard]] DiscreteMap map_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
[[nodiscard]] std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a hash, rendered as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(const std::string& bytes);

}  // namespace bubblescope
