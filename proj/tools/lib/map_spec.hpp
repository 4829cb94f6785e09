#pragma once

#include <cstdint>
#include <memory>

#include "json.hpp"

#include "bubblescope/discrete_map.hpp"

namespace bubblescope::cli {

using nlohmann::json;

/// {"domain": "sphere", "dim": 1, "resolution": 1024}
/// {"domain": "cube" | "torus", "dim": 2, "n": 33}
/// {"domain": "graded_circle", "s_max": 6, "ds": 0.01}
[[nodiscard]] std::shared_ptr<const Domain> mesh_from_spec(const json& spec);

/// {"kind": ..., "mesh": {...}, kind-specific fields}. Kinds: constant,
/// identity, antipodal, winding, power, dilation, bubbles, flat_identity,
/// torus_linear, torus_loop, random_lipschitz, hopf, file.
[[nodiscard]] DiscreteMap map_from_spec(const json& spec, std::uint64_t seed);

}  // namespace bubblescope::cli
