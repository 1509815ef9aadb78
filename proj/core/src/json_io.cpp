#include "quatspin/json_io.hpp"

#include <stdexcept>

namespace quatspin {

namespace {

void require_object(const json& j, const char* what) {
  if (!j.is_object()) {
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  }
}

const json& require_key(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string(what) + ": missing key '" + key + "'");
  }
  return *it;
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  throw std::invalid_argument("expected an exact rational as string or integer");
}

json quat_to_json(const Quat& q) {
  return json{{"pi", to_string(q.params().pi)},
              {"delta", to_string(q.params().delta)},
              {"coords",
               {to_string(q.a()), to_string(q.b()), to_string(q.c()), to_string(q.d())}}};
}

Quat quat_from_json(const json& j) {
  require_object(j, "quaternion");
  AlgebraParams params(rat_from_json(require_key(j, "pi", "quaternion")),
                       rat_from_json(require_key(j, "delta", "quaternion")));
  const json& coords = require_key(j, "coords", "quaternion");
  if (!coords.is_array() || coords.size() != 4) {
    throw std::invalid_argument("quaternion: 'coords' must be an array of 4 rationals");
  }
  return Quat(params, rat_from_json(coords[0]), rat_from_json(coords[1]),
              rat_from_json(coords[2]), rat_from_json(coords[3]));
}

json lattice_to_json(const LatticeDescriptor& desc) {
  json components = json::array();
  for (const Quat& q : desc.rank1()) {
    components.push_back(json{
        {"coords",
         {to_string(q.a()), to_string(q.b()), to_string(q.c()), to_string(q.d())}},
        {"scale_shift", 0}});
  }
  return json{{"schema", 1},
              {"pi", to_string(desc.params().pi)},
              {"delta", to_string(desc.params().delta)},
              {"components", components},
              {"rank2_count", desc.rank2_count()}};
}

LatticeDescriptor lattice_from_json(const json& j) {
  require_object(j, "lattice");
  AlgebraParams params(rat_from_json(require_key(j, "pi", "lattice")),
                       rat_from_json(require_key(j, "delta", "lattice")));
  const json& components = require_key(j, "components", "lattice");
  if (!components.is_array()) {
    throw std::invalid_argument("lattice: 'components' must be an array");
  }
  std::vector<Quat> rank1;
  for (const json& comp : components) {
    require_object(comp, "lattice component");
    const json& coords = require_key(comp, "coords", "lattice component");
    if (!coords.is_array() || coords.size() != 4) {
      throw std::invalid_argument("lattice component: 'coords' must have 4 entries");
    }
    long shift = 0;
    if (auto it = comp.find("scale_shift"); it != comp.end()) {
      if (it->is_number_integer()) {
        shift = it->get<long>();
      } else if (it->is_string()) {
        shift = std::stol(it->get<std::string>());
      } else {
        throw std::invalid_argument("lattice component: bad 'scale_shift'");
      }
    }
    Quat q(params, rat_from_json(coords[0]), rat_from_json(coords[1]),
           rat_from_json(coords[2]), rat_from_json(coords[3]));
    rank1.push_back(pow2(shift) * q);
  }
  int rank2 = 0;
  if (auto it = j.find("rank2_count"); it != j.end()) rank2 = it->get<int>();
  return LatticeDescriptor(params, std::move(rank1), rank2);
}

json spec_to_json(const LocalImageSpec& spec) {
  json places = json::object();
  for (const auto& [p, gens] : spec.places) {
    json list = json::array();
    for (const Rat& g : gens) list.push_back(to_string(g));
    places[std::to_string(p)] = list;
  }
  if (spec.positive_at_infinity) places["inf"] = "positive";
  return json{{"schema", 1}, {"places", places}};
}

LocalImageSpec spec_from_json(const json& j) {
  require_object(j, "local image spec");
  const json& places = require_key(j, "places", "local image spec");
  require_object(places, "local image spec places");
  LocalImageSpec spec;
  for (const auto& [key, value] : places.items()) {
    if (key == "inf") {
      if (!value.is_string() || value.get<std::string>() != "positive") {
        throw std::invalid_argument("spec: 'inf' supports only the value \"positive\"");
      }
      spec.positive_at_infinity = true;
      continue;
    }
    long p = 0;
    try {
      p = std::stol(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("spec: bad place key '" + key + "'");
    }
    if (!value.is_array() || value.empty()) {
      throw std::invalid_argument("spec: place '" + key +
                                  "' needs a nonempty generator array");
    }
    std::vector<Rat> gens;
    for (const json& g : value) gens.push_back(rat_from_json(g));
    spec.places[p] = std::move(gens);
  }
  return spec;
}

json image_to_json(const SpinorImage& img) {
  if (img.is_full()) return json{{"image", "full"}};
  return json{{"image", "norm_group"},
              {"d", std::to_string(img.norm_class()->representative())}};
}

SpinorImage image_from_json(const json& j) {
  require_object(j, "spinor image");
  const std::string kind = require_key(j, "image", "spinor image").get<std::string>();
  if (kind == "full") return SpinorImage::full();
  if (kind == "norm_group") {
    const json& d = require_key(j, "d", "spinor image");
    int rep = d.is_string() ? std::stoi(d.get<std::string>()) : d.get<int>();
    return SpinorImage::norm_group(SquareClass2::from_representative(rep));
  }
  throw std::invalid_argument("spinor image: unknown kind '" + kind + "'");
}

}  // namespace quatspin
