#pragma once

#include <nlohmann/json.hpp>

#include "quatspin/genus_global.hpp"
#include "quatspin/quatalg.hpp"
#include "quatspin/spinor_table.hpp"

namespace quatspin {

using json = nlohmann::json;

// All numeric values are emitted as strings holding exact decimal or
// rational literals; parsing also accepts plain JSON integers.

// {"pi": "2", "delta": "1", "coords": ["-1", "2", "-1", "2"]}
json quat_to_json(const Quat& q);
Quat quat_from_json(const json& j);

// {"schema": 1, "pi": "2", "delta": "1",
//  "components": [{"coords": [...], "scale_shift": 0}, ...],
//  "rank2_count": 0}
// where component m is 2^{scale_shift} times the quaternion with the given
// coordinates.
json lattice_to_json(const LatticeDescriptor& desc);
LatticeDescriptor lattice_from_json(const json& j);

// {"schema": 1, "places": {"2": ["5", "2"], "7": ["3"], "inf": "positive"}}
json spec_to_json(const LocalImageSpec& spec);
LocalImageSpec spec_from_json(const json& j);

// {"image": "full"} or {"image": "norm_group", "d": "2"}
json image_to_json(const SpinorImage& img);
SpinorImage image_from_json(const json& j);

// Parses a rational out of a JSON string or integer.
Rat rat_from_json(const json& j);

}  // namespace quatspin
