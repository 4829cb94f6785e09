#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bubblescope/domain.hpp"
#include "bubblescope/target.hpp"
#include "bubblescope/vec.hpp"

namespace bubblescope {

/// Vertex values of a map from a sampled domain into an embedded target.
/// The domain is shared so that families of maps on one mesh stay cheap.
struct DiscreteMap {
  std::shared_ptr<const Domain> domain;
  Target target;
  std::vector<Point> values;

  [[nodiscard]] const Domain& mesh() const noexcept { return *domain; }
  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

[[nodiscard]] std::shared_ptr<const Domain> share(Domain d);

/// Builds a map and checks that every value lies on the target within 1e-9.
[[nodiscard]] DiscreteMap make_map(std::shared_ptr<const Domain> domain, const Target& target,
                                   std::vector<Point> values);

/// Empty string when valid, otherwise a description of the first violation.
[[nodiscard]] std::string validate_map(const DiscreteMap& f, double tol = 1e-9);

/// The map restricted to the kept vertices of a coarsening.
[[nodiscard]] DiscreteMap restrict_to(const DiscreteMap& f, const Coarsening& c);

[[nodiscard]] DiscreteMap constant_map(std::shared_ptr<const Domain> domain,
                                       const Target& target, const Point& value);

/// The map y -> R y for an orthogonal matrix R (rows), applied to the values.
[[nodiscard]] DiscreteMap rotate_values(const DiscreteMap& f,
                                        const std::array<Point, kMaxDim>& rows);

/// diam f(domain): the geodesic and ambient-chord versions.
struct Oscillation {
  double geodesic = 0.0;
  double ambient = 0.0;
};
[[nodiscard]] Oscillation oscillation(const DiscreteMap& f, int threads = 1);

/// Largest ratio of target geodesic distance to domain distance over cell edges.
[[nodiscard]] double discrete_lipschitz(const DiscreteMap& f);

}  // namespace bubblescope
