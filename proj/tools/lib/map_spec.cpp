#include "map_spec.hpp"

#include <string>
#include <vector>

#include "bubblescope/constructions.hpp"
#include "bubblescope/error.hpp"
#include "bubblescope/hopf.hpp"
#include "bubblescope/io.hpp"
#include "bubblescope/random.hpp"

namespace bubblescope::cli {

namespace {

Point point_from(const json& a) {
  Point p{};
  if (!a.is_array() || a.size() > static_cast<std::size_t>(kMaxDim))
    throw InvalidArgument("point must be an array of at most 4 numbers");
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i].get<double>();
  return p;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("map spec is missing '") + key + "'");
  return j.at(key).get<int>();
}

}  // namespace

std::shared_ptr<const Domain> mesh_from_spec(const json& spec) {
  const std::string domain = spec.value("domain", "sphere");
  if (domain == "sphere") return share(make_sphere_mesh(int_field(spec, "dim"), int_field(spec, "resolution")));
  if (domain == "cube") return share(make_cube_grid(int_field(spec, "dim"), int_field(spec, "n")));
  if (domain == "torus") return share(make_torus_grid(int_field(spec, "dim"), int_field(spec, "n")));
  if (domain == "graded_circle")
    return share(make_graded_circle(spec.at("s_max").get<double>(), spec.at("ds").get<double>()));
  throw InvalidArgument("unknown mesh domain '" + domain + "'");
}

DiscreteMap map_from_spec(const json& spec, std::uint64_t seed) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "file") return map_from_json(read_text_file(spec.at("path").get<std::string>()));
  auto mesh = mesh_from_spec(spec.at("mesh"));
  if (kind == "identity") return identity_map(mesh);
  if (kind == "antipodal") return antipodal_map(mesh);
  if (kind == "winding") return winding_map(int_field(spec, "k"), mesh);
  if (kind == "power") return power_map_s2(int_field(spec, "k"), mesh);
  if (kind == "dilation") return dilation_map(spec.at("lambda").get<double>(), mesh);
  if (kind == "flat_identity") return flat_identity(mesh);
  if (kind == "torus_loop") return torus_loop(int_field(spec, "k1"), int_field(spec, "k2"), mesh);
  if (kind == "hopf") return hopf_family(int_field(spec, "k"), mesh).map;
  if (kind == "constant") {
    const int m = mesh->dim;
    return constant_map(mesh, Target::sphere(m), point_from(spec.at("value")));
  }
  if (kind == "torus_linear") {
    const json& w = spec.at("windings");
    std::array<std::array<int, 2>, 2> a{};
    for (std::size_t r = 0; r < 2 && r < w.size(); ++r)
      for (std::size_t c = 0; c < 2 && c < w[r].size(); ++c) a[r][c] = w[r][c].get<int>();
    return torus_linear_map(mesh, a);
  }
  if (kind == "random_lipschitz") {
    Philox rng(seed, spec.value("stream", std::uint64_t{0}));
    return random_lipschitz_map(mesh, spec.at("lipschitz").get<double>(), rng);
  }
  if (kind == "bubbles") {
    std::vector<Bubble> caps;
    for (const json& c : spec.at("caps"))
      caps.push_back({point_from(c.at("center")), c.at("radius").get<double>(),
                      c.value("degree", 1)});
    return bubble_map(caps, point_from(spec.at("basepoint")), mesh);
  }
  throw InvalidArgument("unknown map kind '" + kind + "'");
}

}  // namespace bubblescope::cli
