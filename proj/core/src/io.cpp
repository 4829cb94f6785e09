#include "bubblescope/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bubblescope/error.hpp"

namespace bubblescope {

namespace {
using nlohmann::json;

void append_point(std::string& out, const Point& p, int dim) {
  out += '[';
  for (int i = 0; i < dim; ++i) {
    if (i) out += ',';
    out += format_double(p[i]);
  }
  out += ']';
}

void append_mesh_fields(std::string& out, const Domain& d) {
  const int amb = d.ambient_dim();
  out += "\"dim\":" + std::to_string(d.dim);
  out += ",\"kind\":\"" + to_string(d.kind) + "\"";
  out += ",\"grid_n\":" + std::to_string(d.grid_n);
  out += ",\"level\":" + std::to_string(d.level);
  out += std::string(",\"graded\":") + (d.graded ? "true" : "false");
  out += ",\"vertices\":[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    append_point(out, d.vertices[i], amb);
  }
  out += "],\"simplices\":[";
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    if (c) out += ',';
    out += '[';
    for (int k = 0; k < d.corners; ++k) {
      if (k) out += ',';
      out += std::to_string(d.cell(c)[k]);
    }
    out += ']';
  }
  out += "],\"weights\":[";
  for (std::size_t i = 0; i < d.weights.size(); ++i) {
    if (i) out += ',';
    out += format_double(d.weights[i]);
  }
  out += ']';
}

Point point_from(const json& j) {
  if (!j.is_array() || j.size() > static_cast<std::size_t>(kMaxDim))
    throw InvalidArgument("coordinate arrays must have at most 4 entries");
  Point p{};
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = j[i].get<double>();
  return p;
}

Domain domain_from(const json& j) {
  Domain d;
  d.dim = j.at("dim").get<int>();
  d.kind = domain_kind_from_string(j.value("kind", std::string("sphere")));
  d.grid_n = j.value("grid_n", 0);
  d.level = j.value("level", -1);
  d.graded = j.value("graded", false);
  for (const auto& v : j.at("vertices")) d.vertices.push_back(point_from(v));
  for (const auto& w : j.at("weights")) d.weights.push_back(w.get<double>());
  const auto& s = j.at("simplices");
  if (!s.empty()) {
    d.corners = static_cast<int>(s.front().size());
    for (const auto& cell : s) {
      if (static_cast<int>(cell.size()) != d.corners)
        throw InvalidArgument("all simplices must have the same size");
      for (const auto& idx : cell) {
        const auto i = idx.get<std::uint32_t>();
        if (i >= d.vertices.size()) throw InvalidArgument("simplex index out of range");
        d.cells.push_back(i);
      }
    }
  }
  if (d.weights.size() != d.vertices.size())
    throw InvalidArgument("weights and vertices differ in length");
  return d;
}
}  // namespace

const char* version() noexcept {
#ifdef BUBBLESCOPE_VERSION_STRING
  return BUBBLESCOPE_VERSION_STRING;
#else
  return "unknown";
#endif
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string mesh_to_json(const Domain& d) {
  std::string out = "{";
  append_mesh_fields(out, d);
  out += '}';
  return out;
}

std::string map_to_json(const DiscreteMap& f) {
  std::string out = "{";
  append_mesh_fields(out, f.mesh());
  out += ",\"target\":{\"kind\":\"" + to_string(f.target.kind()) +
         "\",\"n\":" + std::to_string(f.target.dim()) +
         ",\"nu\":" + std::to_string(f.target.nu()) + "}";
  out += ",\"values\":[";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) out += ',';
    append_point(out, f.values[i], f.target.nu());
  }
  out += "]}";
  return out;
}

Domain mesh_from_json(const std::string& text) {
  try {
    return domain_from(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed mesh JSON: ") + e.what());
  }
}

DiscreteMap map_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Domain d = domain_from(j);
    const auto& t = j.at("target");
    const std::string kind = t.at("kind").get<std::string>();
    Target target = kind == "clifford_torus" ? Target::clifford_torus()
                    : kind == "sphere"
                        ? Target::sphere(t.contains("n") ? t.at("n").get<int>()
                                                         : t.at("nu").get<int>() - 1)
                        : throw InvalidArgument("unknown target kind '" + kind + "'");
    std::vector<Point> values;
    for (const auto& v : j.at("values")) values.push_back(point_from(v));
    return make_map(share(std::move(d)), target, std::move(values));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed map JSON: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bubblescope
