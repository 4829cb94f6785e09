#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bubblescope/discrete_map.hpp"

namespace bubblescope {

struct DegreeResult {
  double raw = 0.0;
  long rounded = 0;
  double residual = 0.0;  // |raw - rounded|
};

/// Winding number of a map S^1 -> S^1 (or any closed cycle of cells into
/// S^1): sum of principal-branch angle increments over 2 pi. Every increment
/// must be below pi in magnitude, otherwise the map is under-resolved.
[[nodiscard]] DegreeResult degree_s1(const DiscreteMap& f);

/// Brouwer degree of S^2 -> S^2: signed spherical areas of the image
/// triangles summed and divided by 4 pi.
[[nodiscard]] DegreeResult degree_kronecker_s2(const DiscreteMap& f);

/// Degree for sphere targets of matching dimension (m = 1 or 2).
[[nodiscard]] DegreeResult degree(const DiscreteMap& f);

/// Per-factor winding numbers of a loop into the Clifford torus.
[[nodiscard]] std::pair<DegreeResult, DegreeResult> torus_windings(const DiscreteMap& f);

/// Closed forms that can be paired with a map.
struct FormSpec {
  enum class Tag { sphere_volume, torus_angle };
  Tag tag = Tag::sphere_volume;
  /// Sphere dimension for volume forms, factor index (1 or 2) for angle forms.
  int index = 1;

  [[nodiscard]] static FormSpec sphere_volume(int n) { return {Tag::sphere_volume, n}; }
  [[nodiscard]] static FormSpec torus_angle(int i) { return {Tag::torus_angle, i}; }
};

/// Integral of the pulled-back normalised form over the domain. Volume forms
/// return the (raw) degree; angle forms return the winding of that factor.
[[nodiscard]] double hurewicz_pairing(const DiscreteMap& f, const FormSpec& form);

/// Both torus pairings as an integer pair.
[[nodiscard]] std::pair<long, long> hurewicz_torus_pair(const DiscreteMap& f);

}  // namespace bubblescope
