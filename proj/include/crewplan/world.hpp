#ifndef CREWPLAN_WORLD_HPP
#define CREWPLAN_WORLD_HPP

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "crewplan/core.hpp"

namespace crewplan {

struct FloorplanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ObjectState {
  std::string id;
  std::string type;
  std::optional<double> mass;  // kg; absent means unconstrained pickup
  std::map<std::string, bool> attributes;  // always all of kBoolAttributes
  std::optional<std::string> parent_receptacle;
  bool is_receptacle = false;
  bool togglable = false;
  bool openable = false;
  bool sliceable = false;
  bool breakable = false;

  bool operator==(const ObjectState&) const = default;
};

struct Region {
  std::string id;
  double area = 0.0;  // m^2
  bool patrolled = false;
  double assigned_visibility = 0.0;

  bool operator==(const Region&) const = default;
};

struct RobotState {
  std::string location = "start";
  std::optional<std::string> holding;

  bool operator==(const RobotState&) const = default;
};

// Indirect effect applied to objects contained in a receptacle of the given
// type: on PutObject (and on SwitchOn when requires_on) the attribute is set.
struct ReceptacleEffect {
  std::string receptacle_type;
  bool requires_on = true;
  std::string sets_attribute;

  bool operator==(const ReceptacleEffect&) const = default;
};

struct WorldState {
  std::map<std::string, ObjectState> objects;
  std::map<std::string, Region> regions;
  std::map<RobotId, RobotState> robot_state;
  std::vector<ReceptacleEffect> receptacle_effects;

  bool has_entity(const std::string& id) const {
    return objects.count(id) > 0 || regions.count(id) > 0;
  }

  bool operator==(const WorldState&) const = default;
};

inline std::map<std::string, bool> default_attributes() {
  std::map<std::string, bool> out;
  for (std::string_view a : kBoolAttributes) out[std::string(a)] = false;
  return out;
}

inline void to_json(nlohmann::json& j, const ReceptacleEffect& e) {
  j = {{"receptacle_type", e.receptacle_type},
       {"requires_on", e.requires_on},
       {"sets", e.sets_attribute}};
}

inline void from_json(const nlohmann::json& j, ReceptacleEffect& e) {
  e.receptacle_type = j.at("receptacle_type").get<std::string>();
  e.requires_on = j.value("requires_on", true);
  e.sets_attribute = j.at("sets").get<std::string>();
}

namespace detail {

inline ObjectState object_from_json(const nlohmann::json& j) {
  ObjectState o;
  o.id = j.at("id").get<std::string>();
  o.type = j.value("type", o.id);
  if (j.contains("mass")) {
    o.mass = j.at("mass").get<double>();
    if (*o.mass < 0) throw FloorplanError("object " + o.id + ": negative mass");
  }
  o.attributes = default_attributes();
  if (j.contains("attributes")) {
    for (auto& [key, val] : j.at("attributes").items()) {
      if (!is_bool_attribute(key)) {
        throw FloorplanError("object " + o.id + ": unknown attribute " + key);
      }
      o.attributes[key] = val.get<bool>();
    }
  }
  if (j.contains("parent")) o.parent_receptacle = j.at("parent").get<std::string>();
  o.is_receptacle = j.value("is_receptacle", false);
  o.togglable = j.value("togglable", false);
  o.openable = j.value("openable", false);
  o.sliceable = j.value("sliceable", false);
  o.breakable = j.value("breakable", false);
  return o;
}

}  // namespace detail

// Parses a floor-plan document into a WorldState with all invariants
// established. Robots are seeded later, when execution starts.
inline WorldState load_floorplan(const nlohmann::json& doc) {
  WorldState w;
  if (!doc.is_object()) throw FloorplanError("floor plan must be a JSON object");
  for (const nlohmann::json& jo : doc.value("objects", nlohmann::json::array())) {
    ObjectState o = detail::object_from_json(jo);
    if (w.objects.count(o.id)) throw FloorplanError("duplicate object id " + o.id);
    w.objects.emplace(o.id, std::move(o));
  }
  for (const nlohmann::json& jr : doc.value("regions", nlohmann::json::array())) {
    Region r;
    r.id = jr.at("id").get<std::string>();
    r.area = jr.at("area").get<double>();
    if (r.area <= 0) throw FloorplanError("region " + r.id + ": area must be > 0");
    if (w.objects.count(r.id) || w.regions.count(r.id)) {
      throw FloorplanError("duplicate id " + r.id);
    }
    w.regions.emplace(r.id, std::move(r));
  }
  for (const nlohmann::json& je :
       doc.value("receptacle_effects", nlohmann::json::array())) {
    auto e = je.get<ReceptacleEffect>();
    if (!is_bool_attribute(e.sets_attribute)) {
      throw FloorplanError("receptacle effect sets unknown attribute " +
                           e.sets_attribute);
    }
    w.receptacle_effects.push_back(std::move(e));
  }
  // Containment must form a forest rooted at parentless objects.
  for (auto& [id, o] : w.objects) {
    if (!o.parent_receptacle) continue;
    auto it = w.objects.find(*o.parent_receptacle);
    if (it == w.objects.end()) {
      throw FloorplanError("object " + id + ": parent " + *o.parent_receptacle +
                           " does not exist");
    }
    if (!it->second.is_receptacle) {
      throw FloorplanError("object " + id + ": parent " + *o.parent_receptacle +
                           " is not a receptacle");
    }
    std::set<std::string> seen{id};
    const ObjectState* cur = &it->second;
    while (true) {
      if (!seen.insert(cur->id).second) {
        throw FloorplanError("containment cycle through " + cur->id);
      }
      if (!cur->parent_receptacle) break;
      cur = &w.objects.at(*cur->parent_receptacle);
    }
  }
  return w;
}

inline void to_json(nlohmann::json& j, const Region& r) {
  j = {{"id", r.id},
       {"area", r.area},
       {"patrolled", r.patrolled},
       {"assigned_visibility", r.assigned_visibility}};
}

inline void to_json(nlohmann::json& j, const ObjectState& o) {
  j = nlohmann::json{{"id", o.id}, {"type", o.type}};
  if (o.mass) j["mass"] = *o.mass;
  j["attributes"] = o.attributes;
  if (o.parent_receptacle) j["parent"] = *o.parent_receptacle;
  j["is_receptacle"] = o.is_receptacle;
  j["togglable"] = o.togglable;
  j["openable"] = o.openable;
  j["sliceable"] = o.sliceable;
  j["breakable"] = o.breakable;
}

inline void to_json(nlohmann::json& j, const RobotState& s) {
  j = nlohmann::json{{"location", s.location}};
  if (s.holding) j["holding"] = *s.holding;
}

inline void to_json(nlohmann::json& j, const WorldState& w) {
  j = nlohmann::json::object();
  j["objects"] = w.objects;
  j["regions"] = w.regions;
  nlohmann::json robots = nlohmann::json::object();
  for (auto& [id, st] : w.robot_state) robots["robot" + std::to_string(id)] = st;
  j["robots"] = std::move(robots);
  j["receptacle_effects"] = w.receptacle_effects;
}

inline void from_json(const nlohmann::json& j, Region& r) {
  r.id = j.at("id").get<std::string>();
  r.area = j.at("area").get<double>();
  r.patrolled = j.value("patrolled", false);
  r.assigned_visibility = j.value("assigned_visibility", 0.0);
}

inline void from_json(const nlohmann::json& j, ObjectState& o) {
  o = ObjectState{};
  o.id = j.at("id").get<std::string>();
  o.type = j.at("type").get<std::string>();
  if (j.contains("mass")) o.mass = j.at("mass").get<double>();
  o.attributes = default_attributes();
  for (auto& [key, val] : j.at("attributes").items()) {
    o.attributes[key] = val.get<bool>();
  }
  if (j.contains("parent")) o.parent_receptacle = j.at("parent").get<std::string>();
  o.is_receptacle = j.value("is_receptacle", false);
  o.togglable = j.value("togglable", false);
  o.openable = j.value("openable", false);
  o.sliceable = j.value("sliceable", false);
  o.breakable = j.value("breakable", false);
}

inline void from_json(const nlohmann::json& j, RobotState& s) {
  s = RobotState{};
  s.location = j.at("location").get<std::string>();
  if (j.contains("holding")) s.holding = j.at("holding").get<std::string>();
}

inline void from_json(const nlohmann::json& j, WorldState& w) {
  w = WorldState{};
  for (auto& [id, jo] : j.at("objects").items()) {
    w.objects.emplace(id, jo.get<ObjectState>());
  }
  for (auto& [id, jr] : j.at("regions").items()) {
    w.regions.emplace(id, jr.get<Region>());
  }
  constexpr std::string_view prefix = "robot";
  for (auto& [key, js] : j.at("robots").items()) {
    RobotId id = std::atoi(key.substr(prefix.size()).c_str());
    w.robot_state.emplace(id, js.get<RobotState>());
  }
  if (j.contains("receptacle_effects")) {
    w.receptacle_effects =
        j.at("receptacle_effects").get<std::vector<ReceptacleEffect>>();
  }
}

// FNV-1a over the canonical JSON rendering; used for frame-property checks.
inline std::uint64_t world_hash(const WorldState& w) {
  std::string s = nlohmann::json(w).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace crewplan

#endif  // CREWPLAN_WORLD_HPP
