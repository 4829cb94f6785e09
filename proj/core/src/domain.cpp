#include "bubblescope/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "bubblescope/error.hpp"

namespace bubblescope {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_unit(double d) noexcept {
  d = std::fabs(d);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

double halton(std::uint64_t index, std::uint32_t base) noexcept {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

void circle_weights_from_arcs(Domain& d) {
  const std::size_t n = d.size();
  d.weights.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double arc = unit_angle(d.vertices[i], d.vertices[j]);
    d.weights[i] += 0.5 * arc;
    d.weights[j] += 0.5 * arc;
  }
}

void circle_cells(Domain& d) {
  const auto n = static_cast<std::uint32_t>(d.size());
  d.corners = 2;
  d.cells.clear();
  d.cells.reserve(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    d.cells.push_back(i);
    d.cells.push_back((i + 1) % n);
  }
}

Domain icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Domain d;
  d.kind = DomainKind::sphere;
  d.dim = 2;
  d.level = level;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& r : raw) d.vertices.push_back(normalized(make_point(r[0], r[1], r[2])));
  std::vector<std::uint32_t> faces = {0, 11, 5, 0, 5,  1,  0,  1, 7, 0, 7,  10, 0, 10, 11,
                                      1, 5,  9, 5, 11, 4,  11, 10, 2, 10, 7, 6,  7, 1,  8,
                                      3, 9,  4, 3, 4,  2,  3,  2, 6, 3, 6,  8,  3, 8,  9,
                                      4, 9,  5, 2, 4,  11, 6,  2, 10, 8, 6, 7,  9, 8,  1};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      const auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(d.vertices.size());
      d.vertices.push_back(normalized(d.vertices[a] + d.vertices[b]));
      mid.emplace(key, idx);
      return idx;
    };
    std::vector<std::uint32_t> next;
    next.reserve(faces.size() * 4);
    for (std::size_t f = 0; f < faces.size(); f += 3) {
      const std::uint32_t a = faces[f], b = faces[f + 1], c = faces[f + 2];
      const std::uint32_t ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      for (std::uint32_t v : {a, ab, ca, b, bc, ab, c, ca, bc, ab, bc, ca}) next.push_back(v);
    }
    faces = std::move(next);
  }
  d.cells = std::move(faces);
  d.corners = 3;
  d.weights.assign(d.vertices.size(), 0.0);
  for (std::size_t f = 0; f < d.cells.size(); f += 3) {
    const double area = spherical_triangle_area(d.vertices[d.cells[f]], d.vertices[d.cells[f + 1]],
                                                d.vertices[d.cells[f + 2]]);
    for (int k = 0; k < 3; ++k) d.weights[d.cells[f + k]] += area / 3.0;
  }
  return d;
}

Domain halton_s3(int count) {
  Domain d;
  d.kind = DomainKind::sphere;
  d.dim = 3;
  d.level = count;
  d.vertices.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    const double u1 = halton(static_cast<std::uint64_t>(i), 2);
    const double u2 = halton(static_cast<std::uint64_t>(i), 3);
    const double u3 = halton(static_cast<std::uint64_t>(i), 5);
    const double s = std::sqrt(u1), c = std::sqrt(1.0 - u1);
    const double x1 = 2.0 * kPi * u2, x2 = 2.0 * kPi * u3;
    d.vertices.push_back(make_point(s * std::cos(x1), s * std::sin(x1), c * std::cos(x2),
                                    c * std::sin(x2)));
  }
  d.weights.assign(d.vertices.size(), sphere_volume(3) / count);
  return d;
}
}  // namespace

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::sphere: return "sphere";
    case DomainKind::cube: return "cube";
    case DomainKind::torus: return "torus";
  }
  return "sphere";
}

DomainKind domain_kind_from_string(const std::string& name) {
  if (name == "sphere") return DomainKind::sphere;
  if (name == "cube") return DomainKind::cube;
  if (name == "torus") return DomainKind::torus;
  throw InvalidArgument("unknown domain kind '" + name + "'");
}

double sphere_volume(int m) noexcept {
  switch (m) {
    case 0: return 2.0;
    case 1: return 2.0 * kPi;
    case 2: return 4.0 * kPi;
    case 3: return 2.0 * kPi * kPi;
    default: {
      // |S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
      const double h = 0.5 * (m + 1);
      return 2.0 * std::pow(kPi, h) / std::tgamma(h);
    }
  }
}

double Domain::distance(const Point& a, const Point& b, DistanceMode mode) const noexcept {
  switch (kind) {
    case DomainKind::sphere: {
      const double c = bubblescope::distance(a, b);
      return mode == DistanceMode::chord ? c : 2.0 * std::asin(std::min(1.0, 0.5 * c));
    }
    case DomainKind::cube: return bubblescope::distance(a, b);
    case DomainKind::torus: {
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double w = wrap_unit(a[i] - b[i]);
        s += w * w;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double Domain::total_measure() const noexcept {
  return kind == DomainKind::sphere ? sphere_volume(dim) : 1.0;
}

double Domain::spacing() const noexcept {
  if (kind == DomainKind::cube) return grid_n > 1 ? 1.0 / (grid_n - 1) : 1.0;
  if (kind == DomainKind::torus) return grid_n > 0 ? 1.0 / grid_n : 1.0;
  if (corners == 0) {
    // Equal-weight point cloud: side of a cube of the per-point volume, doubled.
    return 2.0 * std::pow(total_measure() / static_cast<double>(std::max<std::size_t>(size(), 1)),
                          1.0 / dim);
  }
  double h = 0.0;
  for (std::size_t c = 0; c < cell_count(); ++c) {
    const std::uint32_t* v = cell(c);
    for (int i = 0; i < corners; ++i)
      for (int j = i + 1; j < corners; ++j)
        h = std::max(h, bubblescope::distance(vertices[v[i]], vertices[v[j]]));
  }
  return h;
}

Domain make_sphere_mesh(int m, int resolution) {
  switch (m) {
    case 1: {
      if (resolution < 3) throw InvalidArgument("circle mesh needs at least 3 vertices");
      Domain d;
      d.kind = DomainKind::sphere;
      d.dim = 1;
      d.level = resolution;
      d.vertices.reserve(static_cast<std::size_t>(resolution));
      for (int i = 0; i < resolution; ++i) {
        const double a = 2.0 * kPi * i / resolution;
        d.vertices.push_back(make_point(std::cos(a), std::sin(a)));
      }
      d.weights.assign(d.vertices.size(), 2.0 * kPi / resolution);
      circle_cells(d);
      return d;
    }
    case 2:
      if (resolution < 0) throw InvalidArgument("icosphere level must be >= 0");
      if (resolution > 8) throw InvalidArgument("icosphere level above 8 is not supported");
      return icosphere(resolution);
    case 3:
      if (resolution < 8) throw InvalidArgument("S^3 point set needs at least 8 points");
      return halton_s3(resolution);
    default: throw InvalidArgument("sphere meshes exist for m in {1, 2, 3}");
  }
}

Domain make_cube_grid(int m, int n) {
  if (m < 1 || m > 2) throw InvalidArgument("cube grids exist for m in {1, 2}");
  if (n < 2) throw InvalidArgument("cube grid needs at least 2 points per side");
  Domain d;
  d.kind = DomainKind::cube;
  d.dim = m;
  d.grid_n = n;
  const double h = 1.0 / (n - 1);
  auto w1 = [&](int i) { return (i == 0 || i == n - 1) ? 0.5 * h : h; };
  if (m == 1) {
    for (int i = 0; i < n; ++i) {
      d.vertices.push_back(make_point(i * h));
      d.weights.push_back(w1(i));
    }
    d.corners = 2;
    for (int i = 0; i + 1 < n; ++i) {
      d.cells.push_back(static_cast<std::uint32_t>(i));
      d.cells.push_back(static_cast<std::uint32_t>(i + 1));
    }
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        d.vertices.push_back(make_point(i * h, j * h));
        d.weights.push_back(w1(i) * w1(j));
      }
    d.corners = 4;
    auto id = [n](int i, int j) { return static_cast<std::uint32_t>(j * n + i); };
    for (int j = 0; j + 1 < n; ++j)
      for (int i = 0; i + 1 < n; ++i)
        for (std::uint32_t v : {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)})
          d.cells.push_back(v);
  }
  return d;
}

Domain make_torus_grid(int m, int n) {
  if (m < 1 || m > 2) throw InvalidArgument("torus grids exist for m in {1, 2}");
  if (n < 3) throw InvalidArgument("torus grid needs at least 3 points per side");
  Domain d;
  d.kind = DomainKind::torus;
  d.dim = m;
  d.grid_n = n;
  const double h = 1.0 / n;
  if (m == 1) {
    for (int i = 0; i < n; ++i) d.vertices.push_back(make_point(i * h));
    d.weights.assign(static_cast<std::size_t>(n), h);
    d.corners = 2;
    for (int i = 0; i < n; ++i) {
      d.cells.push_back(static_cast<std::uint32_t>(i));
      d.cells.push_back(static_cast<std::uint32_t>((i + 1) % n));
    }
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) d.vertices.push_back(make_point(i * h, j * h));
    d.weights.assign(static_cast<std::size_t>(n) * n, h * h);
    d.corners = 4;
    auto id = [n](int i, int j) { return static_cast<std::uint32_t>((j % n) * n + (i % n)); };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (std::uint32_t v : {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)})
          d.cells.push_back(v);
  }
  return d;
}

Domain make_circle_from_angles(const std::vector<double>& angles) {
  if (angles.size() < 3) throw InvalidArgument("circle mesh needs at least 3 vertices");
  for (std::size_t i = 1; i < angles.size(); ++i)
    if (!(angles[i] > angles[i - 1])) throw InvalidArgument("circle angles must increase");
  if (!(angles.back() - angles.front() < 2.0 * kPi))
    throw InvalidArgument("circle angles must span less than one turn");
  Domain d;
  d.kind = DomainKind::sphere;
  d.dim = 1;
  d.graded = true;
  d.level = static_cast<int>(angles.size());
  for (double a : angles) d.vertices.push_back(make_point(std::cos(a), std::sin(a)));
  circle_weights_from_arcs(d);
  circle_cells(d);
  return d;
}

Domain make_graded_circle(double s_max, double ds) {
  if (!(s_max > 0.0) || !(ds > 0.0)) throw InvalidArgument("graded circle needs s_max, ds > 0");
  if (s_max > 30.0) throw InvalidArgument("graded circle: s_max above 30 is not representable");
  const int k = static_cast<int>(std::ceil(s_max / ds - 1e-9));
  Domain d;
  d.kind = DomainKind::sphere;
  d.dim = 1;
  d.graded = true;
  // Counterclockwise from the south pole: right branch upwards, then the left
  // branch downwards. Coordinates are built from sech/tanh directly so that
  // the tiny arcs near the poles keep their relative accuracy.
  d.vertices.push_back(make_point(0.0, -1.0));
  for (int i = -k; i <= k; ++i)
    d.vertices.push_back(make_point(1.0 / std::cosh(i * ds), std::tanh(i * ds)));
  d.vertices.push_back(make_point(0.0, 1.0));
  for (int i = k; i >= -k; --i)
    d.vertices.push_back(make_point(-1.0 / std::cosh(i * ds), std::tanh(i * ds)));
  d.level = static_cast<int>(d.vertices.size());
  circle_weights_from_arcs(d);
  circle_cells(d);
  return d;
}

std::optional<Coarsening> coarsen(const Domain& d) {
  Coarsening out;
  switch (d.kind) {
    case DomainKind::sphere:
      if (d.dim == 1) {
        if (d.size() % 2 != 0 || d.size() < 6) return std::nullopt;
        Domain c;
        c.kind = DomainKind::sphere;
        c.dim = 1;
        c.graded = d.graded;
        for (std::size_t i = 0; i < d.size(); i += 2) {
          c.vertices.push_back(d.vertices[i]);
          out.keep.push_back(i);
        }
        c.level = static_cast<int>(c.vertices.size());
        if (d.graded) {
          circle_weights_from_arcs(c);
        } else {
          c.weights.assign(c.vertices.size(), 2.0 * kPi / static_cast<double>(c.vertices.size()));
        }
        circle_cells(c);
        out.domain = std::move(c);
        return out;
      }
      if (d.dim == 2) {
        if (d.level < 1) return std::nullopt;
        out.domain = icosphere(d.level - 1);
        for (std::size_t i = 0; i < out.domain.size(); ++i) out.keep.push_back(i);
        return out;
      }
      if (d.size() < 16) return std::nullopt;
      out.domain = halton_s3(static_cast<int>(d.size() / 2));
      for (std::size_t i = 0; i < out.domain.size(); ++i) out.keep.push_back(i);
      return out;
    case DomainKind::cube: {
      if (d.grid_n < 5 || d.grid_n % 2 == 0) return std::nullopt;
      const int nc = (d.grid_n + 1) / 2;
      out.domain = make_cube_grid(d.dim, nc);
      for (std::size_t v = 0; v < out.domain.size(); ++v) {
        const std::size_t i = v % static_cast<std::size_t>(nc);
        const std::size_t j = v / static_cast<std::size_t>(nc);
        out.keep.push_back(d.dim == 1 ? 2 * i : (2 * j) * d.grid_n + 2 * i);
      }
      return out;
    }
    case DomainKind::torus: {
      if (d.grid_n < 6 || d.grid_n % 2 != 0) return std::nullopt;
      const int nc = d.grid_n / 2;
      out.domain = make_torus_grid(d.dim, nc);
      for (std::size_t v = 0; v < out.domain.size(); ++v) {
        const std::size_t i = v % static_cast<std::size_t>(nc);
        const std::size_t j = v / static_cast<std::size_t>(nc);
        out.keep.push_back(d.dim == 1 ? 2 * i : (2 * j) * d.grid_n + 2 * i);
      }
      return out;
    }
  }
  return std::nullopt;
}

double spherical_triangle_area(const Point& a, const Point& b, const Point& c) noexcept {
  const double num = det3(a, b, c);
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double cell_measure(const Domain& d, const Point* p) noexcept {
  switch (d.kind) {
    case DomainKind::sphere:
      if (d.dim == 1) return unit_angle(p[0], p[1]);
      return std::fabs(spherical_triangle_area(p[0], p[1], p[2]));
    case DomainKind::cube:
    case DomainKind::torus: {
      if (d.dim == 1) return std::fabs(p[1][0] - p[0][0]);
      return std::fabs((p[1][0] - p[0][0]) * (p[3][1] - p[0][1]));
    }
  }
  return 0.0;
}

Point domain_midpoint(const Domain& d, const Point& a, const Point& b) noexcept {
  const Point m = 0.5 * (a + b);
  return d.kind == DomainKind::sphere ? normalized(m) : m;
}

Point unwrap_near(const Domain& d, const Point& p, const Point& ref) noexcept {
  if (d.kind != DomainKind::torus) return p;
  Point q = p;
  for (int i = 0; i < d.dim; ++i) q[i] -= std::round(p[i] - ref[i]);
  return q;
}

std::string validate_sphere_mesh(const Domain& d) {
  if (d.kind != DomainKind::sphere) return "not a sphere mesh";
  if (d.weights.size() != d.size()) return "weight count differs from vertex count";
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::fabs(norm(d.vertices[i]) - 1.0) > 1e-12)
      return "vertex " + std::to_string(i) + " is not unit";
  double total = 0.0;
  for (double w : d.weights) total += w;
  if (std::fabs(total - sphere_volume(d.dim)) > 1e-6 * sphere_volume(d.dim))
    return "weights sum to " + std::to_string(total);
  if (d.corners != 0 && d.corners != d.dim + 1) return "simplices have the wrong size";
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const std::uint32_t* v = d.cell(c);
    double vol = 0.0;
    if (d.dim == 1) vol = det2(d.vertices[v[0]], d.vertices[v[1]]);
    if (d.dim == 2) vol = det3(d.vertices[v[0]], d.vertices[v[1]], d.vertices[v[2]]);
    if (!(vol > 0.0)) return "simplex " + std::to_string(c) + " is not positively oriented";
  }
  if (d.dim == 2 && d.level >= 0) {
    const std::size_t expect = 10u * (std::size_t{1} << (2 * d.level)) + 2u;
    if (d.size() != expect) return "icosphere vertex count mismatch";
  }
  return {};
}

}  // namespace bubblescope
