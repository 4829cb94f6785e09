#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bubblescope/vec.hpp"

namespace bubblescope {

enum class DomainKind { sphere, cube, torus };

/// How |y - x| is measured on the domain inside integral kernels.
enum class DistanceMode { chord, geodesic };

[[nodiscard]] std::string to_string(DomainKind kind);
[[nodiscard]] DomainKind domain_kind_from_string(const std::string& name);

/// A sampled domain: the unit sphere S^m, the cube [0,1]^m, or the flat unit
/// torus R^m / Z^m. Vertex weights form a quadrature rule for the volume
/// measure. When cells are present each vertex weight equals the sum over its
/// incident cells of (cell measure / corners), which the refined quadrature
/// relies on.
struct Domain {
  DomainKind kind = DomainKind::sphere;
  int dim = 1;
  std::vector<Point> vertices;
  std::vector<double> weights;
  /// Flat cell connectivity, `corners` indices per cell (0 when absent).
  std::vector<std::uint32_t> cells;
  int corners = 0;
  /// Grid points per side (cube, torus); 0 otherwise.
  int grid_n = 0;
  /// Icosphere subdivision level (S^2), point count (S^1, S^3); -1 if unknown.
  int level = -1;
  /// True for circle meshes whose vertices are not equally spaced.
  bool graded = false;

  [[nodiscard]] std::size_t size() const noexcept { return vertices.size(); }
  [[nodiscard]] std::size_t cell_count() const noexcept {
    return corners == 0 ? 0 : cells.size() / static_cast<std::size_t>(corners);
  }
  [[nodiscard]] int ambient_dim() const noexcept {
    return kind == DomainKind::sphere ? dim + 1 : dim;
  }
  [[nodiscard]] double distance(const Point& a, const Point& b,
                                DistanceMode mode = DistanceMode::chord) const noexcept;
  /// Volume of the whole domain: |S^m|, or 1 for the cube and torus.
  [[nodiscard]] double total_measure() const noexcept;
  /// Largest distance between adjacent vertices (an upper bound for S^3).
  [[nodiscard]] double spacing() const noexcept;
  [[nodiscard]] const std::uint32_t* cell(std::size_t c) const noexcept {
    return cells.data() + c * static_cast<std::size_t>(corners);
  }
};

/// The intended sphere sampling type; every SphereMesh is a Domain of kind sphere.
using SphereMesh = Domain;

/// Uniform circle (m = 1, resolution = vertex count), icosphere (m = 2,
/// resolution = subdivision level) or Halton points on S^3 in Hopf
/// coordinates (m = 3, resolution = point count).
[[nodiscard]] Domain make_sphere_mesh(int m, int resolution);

/// n points per side of [0,1]^m with trapezoid weights; m in {1, 2}.
[[nodiscard]] Domain make_cube_grid(int m, int n);

/// Points i/n per side of the flat torus with equal weights; m in {1, 2}.
[[nodiscard]] Domain make_torus_grid(int m, int n);

/// Circle mesh uniform in the Mercator coordinate: the points (w sech s, tanh s)
/// for w = +-1 and s on [-s_max, s_max] with step ds, plus both poles.
/// Resolution is therefore concentrated near the poles.
[[nodiscard]] Domain make_graded_circle(double s_max, double ds);

/// Circle mesh through the given counterclockwise angles.
[[nodiscard]] Domain make_circle_from_angles(const std::vector<double>& angles);

/// Half-resolution version of a domain together with the indices of the fine
/// vertices it keeps, in order. Used for quadrature error estimates.
struct Coarsening {
  Domain domain;
  std::vector<std::size_t> keep;
};
[[nodiscard]] std::optional<Coarsening> coarsen(const Domain& d);

/// Volume of a cell given its corner positions (arc length, spherical area,
/// segment length or square area).
[[nodiscard]] double cell_measure(const Domain& d, const Point* corners) noexcept;

/// Midpoint of two nearby domain points (projected back onto the sphere).
[[nodiscard]] Point domain_midpoint(const Domain& d, const Point& a, const Point& b) noexcept;

/// For the torus: the lift of p closest to ref. Identity for other kinds.
[[nodiscard]] Point unwrap_near(const Domain& d, const Point& p, const Point& ref) noexcept;

/// Signed area of the spherical triangle (a, b, c); positive when det[a b c] > 0.
[[nodiscard]] double spherical_triangle_area(const Point& a, const Point& b,
                                             const Point& c) noexcept;

/// |S^m|.
[[nodiscard]] double sphere_volume(int m) noexcept;

/// Checks every SphereMesh invariant; returns an empty string on success.
[[nodiscard]] std::string validate_sphere_mesh(const Domain& d);

}  // namespace bubblescope
