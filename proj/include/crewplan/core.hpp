#ifndef CREWPLAN_CORE_HPP
#define CREWPLAN_CORE_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crewplan {

// Schema or cross-reference problem in dataset files and serialized records.
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The closed set of primitive robot skills. Parsing an unknown name is an
// error, never a silent default.
enum class Skill {
  GoToObject,
  GoToLocation,
  PickupObject,
  PutObject,
  SwitchOn,
  SwitchOff,
  OpenObject,
  CloseObject,
  SliceObject,
  CleanObject,
  BreakObject,
  ThrowObject,
  Patrol,
};

inline constexpr std::array<Skill, 13> kAllSkills = {
    Skill::GoToObject,  Skill::GoToLocation, Skill::PickupObject,
    Skill::PutObject,   Skill::SwitchOn,     Skill::SwitchOff,
    Skill::OpenObject,  Skill::CloseObject,  Skill::SliceObject,
    Skill::CleanObject, Skill::BreakObject,  Skill::ThrowObject,
    Skill::Patrol,
};

inline std::string_view to_string(Skill s) {
  switch (s) {
    case Skill::GoToObject: return "GoToObject";
    case Skill::GoToLocation: return "GoToLocation";
    case Skill::PickupObject: return "PickupObject";
    case Skill::PutObject: return "PutObject";
    case Skill::SwitchOn: return "SwitchOn";
    case Skill::SwitchOff: return "SwitchOff";
    case Skill::OpenObject: return "OpenObject";
    case Skill::CloseObject: return "CloseObject";
    case Skill::SliceObject: return "SliceObject";
    case Skill::CleanObject: return "CleanObject";
    case Skill::BreakObject: return "BreakObject";
    case Skill::ThrowObject: return "ThrowObject";
    case Skill::Patrol: return "Patrol";
  }
  return "?";
}

inline std::optional<Skill> skill_from_string(std::string_view name) {
  for (Skill s : kAllSkills) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

// Number of identifier arguments each skill takes.
inline int skill_arity(Skill s) {
  return s == Skill::PutObject ? 2 : 1;
}

// Only these skills may carry a numeric capacity (max pickup mass in kg,
// patrol visibility in m^2).
inline bool skill_has_capacity(Skill s) {
  return s == Skill::PickupObject || s == Skill::Patrol;
}

using RobotId = int;
using SkillSet = std::set<Skill>;

struct SkillSpec {
  Skill name{};
  std::optional<double> capacity;

  bool operator==(const SkillSpec&) const = default;
};

struct RobotSpec {
  RobotId id = 0;  // 1-based, unique within a task
  std::vector<SkillSpec> skills;

  bool has_skill(Skill s) const {
    return std::any_of(skills.begin(), skills.end(),
                       [s](const SkillSpec& sp) { return sp.name == s; });
  }

  std::optional<double> capacity_for(Skill s) const {
    for (const SkillSpec& sp : skills) {
      if (sp.name == s) return sp.capacity;
    }
    return std::nullopt;
  }

  SkillSet skill_set() const {
    SkillSet out;
    for (const SkillSpec& sp : skills) out.insert(sp.name);
    return out;
  }

  bool operator==(const RobotSpec&) const = default;
};

// Checks the SkillSpec/RobotSpec invariants; throws std::invalid_argument.
inline void check_robot_spec(const RobotSpec& robot) {
  if (robot.id < 1) throw std::invalid_argument("robot id must be >= 1");
  SkillSet seen;
  for (const SkillSpec& sp : robot.skills) {
    if (!seen.insert(sp.name).second) {
      throw std::invalid_argument("duplicate skill " +
                                  std::string(to_string(sp.name)) +
                                  " on robot " + std::to_string(robot.id));
    }
    if (sp.capacity) {
      if (!skill_has_capacity(sp.name)) {
        throw std::invalid_argument("skill " + std::string(to_string(sp.name)) +
                                    " does not take a capacity");
      }
      if (*sp.capacity < 0) {
        throw std::invalid_argument("capacity must be >= 0");
      }
    }
  }
}

// One invocation of a low-level skill, e.g. PickupObject(Apple) or
// PutObject(Apple, Fridge). Args name objects or regions in the world.
struct ActionCall {
  Skill skill{};
  std::vector<std::string> args;

  bool operator==(const ActionCall&) const = default;
};

inline SkillSet skills_required(std::span<const ActionCall> actions) {
  SkillSet out;
  for (const ActionCall& a : actions) out.insert(a.skill);
  return out;
}

inline bool covers(const SkillSet& team_skills, const SkillSet& required) {
  return std::includes(team_skills.begin(), team_skills.end(),
                       required.begin(), required.end());
}

struct Demand {
  Skill skill{};
  double amount = 0.0;

  bool operator==(const Demand&) const = default;
};

// A decomposed unit of work: an ordered action sequence plus the skill set
// it needs. Sub-tasks sharing a temporal_order are parallelizable.
struct SubTask {
  std::string id;
  std::string description;
  std::vector<ActionCall> actions;
  SkillSet required_skills;  // always equals skills_required(actions)
  std::optional<Demand> demand;
  int temporal_order = 0;

  bool operator==(const SubTask&) const = default;
};

inline SubTask make_subtask(std::string id, std::string description,
                            std::vector<ActionCall> actions,
                            int temporal_order,
                            std::optional<Demand> demand = std::nullopt) {
  SubTask st;
  st.id = std::move(id);
  st.description = std::move(description);
  st.actions = std::move(actions);
  st.required_skills = skills_required(st.actions);
  st.temporal_order = temporal_order;
  st.demand = std::move(demand);
  if (st.demand && !st.required_skills.count(st.demand->skill)) {
    throw std::invalid_argument("sub-task " + st.id +
                                ": demand skill not used by any action");
  }
  if (st.demand && st.demand->amount < 0) {
    throw std::invalid_argument("sub-task " + st.id + ": demand must be >= 0");
  }
  if (st.temporal_order < 0) {
    throw std::invalid_argument("sub-task " + st.id +
                                ": temporal_order must be >= 0");
  }
  return st;
}

struct Decomposition {
  std::vector<SubTask> subtasks;

  bool operator==(const Decomposition&) const = default;
};

// Ids unique, temporal orders form a contiguous range starting at 0.
inline void check_decomposition(const Decomposition& d) {
  std::set<std::string> ids;
  std::set<int> orders;
  for (const SubTask& st : d.subtasks) {
    if (!ids.insert(st.id).second) {
      throw std::invalid_argument("duplicate sub-task id " + st.id);
    }
    orders.insert(st.temporal_order);
  }
  int expect = 0;
  for (int o : orders) {
    if (o != expect++) {
      throw std::invalid_argument(
          "temporal orders must be contiguous from 0, got gap at " +
          std::to_string(o));
    }
  }
}

// Non-empty ordered set of robot ids; kept sorted.
struct Team {
  std::vector<RobotId> members;

  bool contains(RobotId r) const {
    return std::binary_search(members.begin(), members.end(), r);
  }
  bool disjoint(const Team& other) const {
    for (RobotId r : members) {
      if (other.contains(r)) return false;
    }
    return true;
  }

  bool operator==(const Team&) const = default;
};

inline Team make_team(std::vector<RobotId> members) {
  std::sort(members.begin(), members.end());
  auto last = std::unique(members.begin(), members.end());
  if (last != members.end()) {
    throw std::invalid_argument("duplicate robot id in team");
  }
  if (members.empty()) throw std::invalid_argument("team must be non-empty");
  return Team{std::move(members)};
}

// Sum of declared capacities for `skill` over team members; members lacking
// the skill (or a declared capacity) contribute 0.
inline double pooled_capacity(std::span<const RobotSpec> team, Skill skill) {
  double total = 0.0;
  for (const RobotSpec& r : team) {
    if (auto cap = r.capacity_for(skill)) total += *cap;
  }
  return total;
}

inline bool capacity_feasible(std::span<const RobotSpec> team, Skill skill,
                              double amount) {
  return pooled_capacity(team, skill) >= amount;
}

namespace detail {

// Compact decimal rendering for capacities and masses: 5.0 -> "5", 2.5 -> "2.5".
inline std::string format_amount(double x) {
  std::string s = std::to_string(x);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace detail

// The closed attribute vocabulary usable in goal conditions.
inline constexpr std::array<std::string_view, 7> kBoolAttributes = {
    "is_on", "is_open", "is_sliced", "is_heated",
    "is_cooked", "is_washed", "is_broken",
};

inline bool is_bool_attribute(std::string_view name) {
  return std::find(kBoolAttributes.begin(), kBoolAttributes.end(), name) !=
         kBoolAttributes.end();
}

inline bool is_goal_attribute(std::string_view name) {
  return is_bool_attribute(name) || name == "parent_receptacle" ||
         name == "patrolled";
}

// One (object, attribute, expected) triple that must hold in the final world.
// `expected` is a bool for condition attributes and an identifier for
// parent_receptacle.
struct GoalCondition {
  std::string object_id;
  std::string attribute;
  std::variant<bool, std::string> expected;

  bool operator==(const GoalCondition&) const = default;
};

inline void check_goal_condition(const GoalCondition& g) {
  if (!is_goal_attribute(g.attribute)) {
    throw std::invalid_argument("unknown goal attribute " + g.attribute);
  }
  bool wants_id = g.attribute == "parent_receptacle";
  if (wants_id != std::holds_alternative<std::string>(g.expected)) {
    throw std::invalid_argument("goal " + g.object_id + "." + g.attribute +
                                ": expected value has the wrong type");
  }
}

}  // namespace crewplan

#endif  // CREWPLAN_CORE_HPP
