#include "bubblescope/discrete_map.hpp"

#include <algorithm>
#include <cmath>

#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"

namespace bubblescope {

std::shared_ptr<const Domain> share(Domain d) {
  return std::make_shared<const Domain>(std::move(d));
}

std::string validate_map(const DiscreteMap& f, double tol) {
  if (!f.domain) return "map has no domain";
  if (f.values.size() != f.domain->size()) return "value count differs from vertex count";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    for (int k = f.target.nu(); k < kMaxDim; ++k)
      if (f.values[i][k] != 0.0) return "value " + std::to_string(i) + " has stray coordinates";
    const double d = f.target.distance_to_manifold(f.values[i]);
    if (!(d <= tol))
      return "value " + std::to_string(i) + " is " + std::to_string(d) + " off the target";
  }
  return {};
}

DiscreteMap make_map(std::shared_ptr<const Domain> domain, const Target& target,
                     std::vector<Point> values) {
  DiscreteMap f{std::move(domain), target, std::move(values)};
  if (auto why = validate_map(f); !why.empty()) throw InvalidArgument("invalid map: " + why);
  return f;
}

DiscreteMap restrict_to(const DiscreteMap& f, const Coarsening& c) {
  std::vector<Point> v;
  v.reserve(c.keep.size());
  for (std::size_t i : c.keep) v.push_back(f.values[i]);
  return DiscreteMap{share(c.domain), f.target, std::move(v)};
}

DiscreteMap constant_map(std::shared_ptr<const Domain> domain, const Target& target,
                         const Point& value) {
  const std::size_t n = domain->size();
  return make_map(std::move(domain), target, std::vector<Point>(n, value));
}

DiscreteMap rotate_values(const DiscreteMap& f, const std::array<Point, kMaxDim>& rows) {
  DiscreteMap g = f;
  for (auto& v : g.values) {
    Point r{};
    for (int i = 0; i < kMaxDim; ++i) r[i] = dot(rows[i], v);
    v = r;
  }
  return g;
}

Oscillation oscillation(const DiscreteMap& f, int threads) {
  const std::size_t n = f.size();
  std::vector<double> geo(n, 0.0), amb(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    double g = 0.0, a = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      a = std::max(a, distance(f.values[i], f.values[j]));
      g = std::max(g, f.target.geodesic_unchecked(f.values[i], f.values[j]));
    }
    geo[i] = g;
    amb[i] = a;
  });
  Oscillation o;
  for (std::size_t i = 0; i < n; ++i) {
    o.geodesic = std::max(o.geodesic, geo[i]);
    o.ambient = std::max(o.ambient, amb[i]);
  }
  return o;
}

double discrete_lipschitz(const DiscreteMap& f) {
  const Domain& d = f.mesh();
  if (d.corners == 0) throw InvalidArgument("discrete Lipschitz constant needs cells");
  double best = 0.0;
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const std::uint32_t* v = d.cell(c);
    for (int i = 0; i < d.corners; ++i)
      for (int j = i + 1; j < d.corners; ++j) {
        const double dx = d.distance(d.vertices[v[i]], d.vertices[v[j]], DistanceMode::geodesic);
        if (dx <= 0.0) continue;
        best = std::max(best, f.target.geodesic_unchecked(f.values[v[i]], f.values[v[j]]) / dx);
      }
  }
  return best;
}

}  // namespace bubblescope
