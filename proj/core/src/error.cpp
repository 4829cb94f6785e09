#include "bubblescope/error.hpp"

#include <cstdio>

namespace bubblescope {

namespace {
std::string describe(const Point& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g, %.6g)", p[0], p[1], p[2], p[3]);
  return buf;
}
}  // namespace

TubeViolation::TubeViolation(const Point& y, double dist, double tube)
    : Error("point " + describe(y) + " is at distance " + std::to_string(dist) +
            " from the target, outside the tube of radius " + std::to_string(tube)),
      point(y),
      distance_to_manifold(dist) {}

DecompositionFailure::DecompositionFailure(const Point& where, const std::string& detail)
    : Error("decomposition failed at " + describe(where) + ": " + detail), point(where) {}

DegenerateSimplex::DegenerateSimplex(std::size_t s, const std::string& detail)
    : Error("degenerate image simplex #" + std::to_string(s) + ": " + detail), simplex(s) {}

}  // namespace bubblescope
