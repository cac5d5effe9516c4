#ifndef CREWPLAN_EXECUTOR_HPP
#define CREWPLAN_EXECUTOR_HPP

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "crewplan/core.hpp"
#include "crewplan/dsl.hpp"
#include "crewplan/world.hpp"

namespace crewplan {

struct StepOutcome {
  bool ok = false;
  std::string reason;  // empty on success

  static StepOutcome success() { return {true, {}}; }
  static StepOutcome failure(std::string why) { return {false, std::move(why)}; }
};

struct TraceStep {
  int tick = 0;
  RobotId robot = 0;  // team lead (lowest id)
  Team team;
  ActionCall action;
  bool success = false;
  std::string reason;

  bool operator==(const TraceStep&) const = default;
};

struct ExecutionTrace {
  std::vector<TraceStep> steps;
  std::vector<std::set<RobotId>> phase_sequence;
  WorldState final_world;

  int actions_total() const { return static_cast<int>(steps.size()); }
  int actions_succeeded() const {
    int n = 0;
    for (const TraceStep& s : steps) n += s.success ? 1 : 0;
    return n;
  }

  bool operator==(const ExecutionTrace&) const = default;
};

namespace detail {

inline bool any_member_at(const WorldState& w, std::span<const RobotSpec> team,
                          const std::string& place) {
  for (const RobotSpec& r : team) {
    auto it = w.robot_state.find(r.id);
    if (it != w.robot_state.end() && it->second.location == place) return true;
  }
  return false;
}

inline bool every_member_at(const WorldState& w, std::span<const RobotSpec> team,
                            const std::string& place) {
  for (const RobotSpec& r : team) {
    auto it = w.robot_state.find(r.id);
    if (it == w.robot_state.end() || it->second.location != place) return false;
  }
  return true;
}

inline const RobotSpec* holder_of(const WorldState& w,
                                  std::span<const RobotSpec> team,
                                  const std::string& object_id) {
  for (const RobotSpec& r : team) {
    auto it = w.robot_state.find(r.id);
    if (it != w.robot_state.end() && it->second.holding == object_id) return &r;
  }
  return nullptr;
}

inline bool held_by_anyone(const WorldState& w, const std::string& object_id) {
  for (auto& [id, st] : w.robot_state) {
    if (st.holding == object_id) return true;
  }
  return false;
}

// Applies the configured indirect effects of `receptacle` to one contained
// object (on PutObject) or to all contents (on SwitchOn).
inline void apply_receptacle_effects(WorldState& w, const ObjectState& receptacle,
                                     ObjectState* just_placed) {
  for (const ReceptacleEffect& e : w.receptacle_effects) {
    if (e.receptacle_type != receptacle.type) continue;
    if (e.requires_on && !receptacle.attributes.at("is_on")) continue;
    if (just_placed) {
      just_placed->attributes[e.sets_attribute] = true;
    } else {
      for (auto& [id, o] : w.objects) {
        if (o.parent_receptacle == receptacle.id) {
          o.attributes[e.sets_attribute] = true;
        }
      }
    }
  }
}

}  // namespace detail

// Applies one action by the acting team. All preconditions are checked before
// any mutation: a failed action leaves the world exactly unchanged.
inline StepOutcome apply_action(WorldState& w, std::span<const RobotSpec> team,
                                const ActionCall& action) {
  using detail::any_member_at;
  using detail::every_member_at;

  if (team.empty()) return StepOutcome::failure("empty team");
  SkillSet team_skills;
  for (const RobotSpec& r : team) {
    SkillSet s = r.skill_set();
    team_skills.insert(s.begin(), s.end());
  }
  if (!team_skills.count(action.skill)) {
    return StepOutcome::failure("skill " + std::string(to_string(action.skill)) +
                                " not possessed by the acting team");
  }

  const std::string& target = action.args.at(0);
  switch (action.skill) {
    case Skill::GoToObject:
    case Skill::GoToLocation: {
      if (!w.has_entity(target)) {
        return StepOutcome::failure("unknown object or region " + target);
      }
      for (const RobotSpec& r : team) w.robot_state[r.id].location = target;
      return StepOutcome::success();
    }
    case Skill::PickupObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!every_member_at(w, team, target)) {
        return StepOutcome::failure("not every member is at " + target);
      }
      if (detail::held_by_anyone(w, target)) {
        return StepOutcome::failure(target + " is already held");
      }
      for (const RobotSpec& r : team) {
        if (w.robot_state[r.id].holding) {
          return StepOutcome::failure("robot" + std::to_string(r.id) +
                                      " is already holding something");
        }
      }
      if (it->second.mass &&
          !capacity_feasible(team, Skill::PickupObject, *it->second.mass)) {
        return StepOutcome::failure(
            "mass " + detail::format_amount(*it->second.mass) +
            " exceeds the team's pooled PickupObject capacity");
      }
      RobotId lead = team.front().id;
      w.robot_state[lead].holding = target;
      it->second.parent_receptacle = "robot" + std::to_string(lead);
      return StepOutcome::success();
    }
    case Skill::PutObject: {
      const std::string& dest = action.args.at(1);
      auto obj_it = w.objects.find(target);
      auto dest_it = w.objects.find(dest);
      if (obj_it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (dest_it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + dest);
      }
      const RobotSpec* holder = detail::holder_of(w, team, target);
      if (!holder) {
        return StepOutcome::failure("no team member is holding " + target);
      }
      if (w.robot_state[holder->id].location != dest) {
        return StepOutcome::failure("the holder is not at " + dest);
      }
      if (!dest_it->second.is_receptacle) {
        return StepOutcome::failure(dest + " is not a receptacle");
      }
      obj_it->second.parent_receptacle = dest;
      w.robot_state[holder->id].holding.reset();
      detail::apply_receptacle_effects(w, dest_it->second, &obj_it->second);
      return StepOutcome::success();
    }
    case Skill::SwitchOn:
    case Skill::SwitchOff: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!any_member_at(w, team, target)) {
        return StepOutcome::failure("no member is at " + target);
      }
      if (!it->second.togglable) {
        return StepOutcome::failure(target + " is not togglable");
      }
      it->second.attributes["is_on"] = action.skill == Skill::SwitchOn;
      if (action.skill == Skill::SwitchOn) {
        detail::apply_receptacle_effects(w, it->second, nullptr);
      }
      return StepOutcome::success();
    }
    case Skill::OpenObject:
    case Skill::CloseObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!any_member_at(w, team, target)) {
        return StepOutcome::failure("no member is at " + target);
      }
      if (!it->second.openable) {
        return StepOutcome::failure(target + " is not openable");
      }
      it->second.attributes["is_open"] = action.skill == Skill::OpenObject;
      return StepOutcome::success();
    }
    case Skill::SliceObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!any_member_at(w, team, target)) {
        return StepOutcome::failure("no member is at " + target);
      }
      if (!it->second.sliceable) {
        return StepOutcome::failure(target + " is not sliceable");
      }
      if (it->second.attributes.at("is_sliced")) {
        return StepOutcome::failure(target + " is already sliced");
      }
      it->second.attributes["is_sliced"] = true;
      return StepOutcome::success();
    }
    case Skill::CleanObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!any_member_at(w, team, target)) {
        return StepOutcome::failure("no member is at " + target);
      }
      it->second.attributes["is_washed"] = true;
      return StepOutcome::success();
    }
    case Skill::BreakObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      if (!any_member_at(w, team, target)) {
        return StepOutcome::failure("no member is at " + target);
      }
      if (!it->second.breakable) {
        return StepOutcome::failure(target + " is not breakable");
      }
      it->second.attributes["is_broken"] = true;
      return StepOutcome::success();
    }
    case Skill::ThrowObject: {
      auto it = w.objects.find(target);
      if (it == w.objects.end()) {
        return StepOutcome::failure("unknown object " + target);
      }
      const RobotSpec* holder = detail::holder_of(w, team, target);
      if (!holder) {
        return StepOutcome::failure("no team member is holding " + target);
      }
      const std::string& loc = w.robot_state[holder->id].location;
      auto loc_it = w.objects.find(loc);
      if (loc_it != w.objects.end() && loc_it->second.is_receptacle) {
        it->second.parent_receptacle = loc;
      } else {
        it->second.parent_receptacle.reset();
      }
      w.robot_state[holder->id].holding.reset();
      return StepOutcome::success();
    }
    case Skill::Patrol: {
      auto it = w.regions.find(target);
      if (it == w.regions.end()) {
        return StepOutcome::failure("unknown region " + target);
      }
      if (!every_member_at(w, team, target)) {
        return StepOutcome::failure("not every member is at " + target);
      }
      double pooled = pooled_capacity(team, Skill::Patrol);
      if (it->second.assigned_visibility + pooled < it->second.area) {
        return StepOutcome::failure(
            "insufficient visibility: " +
            detail::format_amount(it->second.assigned_visibility + pooled) +
            " < area " + detail::format_amount(it->second.area));
      }
      it->second.assigned_visibility += pooled;
      it->second.patrolled = true;
      return StepOutcome::success();
    }
  }
  return StepOutcome::failure("unhandled skill");
}

// Called after every executed action with the step record and the world as it
// stands; used by tests for frame-property and irreversibility checks.
using StepObserver =
    std::function<void(const TraceStep&, const WorldState&)>;

namespace detail {

struct FlatStep {
  Team team;
  const ActionCall* action = nullptr;
};

// Flattens a node into its sequential action stream; nested par nodes are
// merged round-robin, one element per branch per round.
inline std::vector<FlatStep> flatten_stream(const Node& node) {
  std::vector<FlatStep> out;
  if (const auto* a = std::get_if<AssignNode>(&node.v)) {
    for (const ActionCall& call : a->actions) out.push_back({a->team, &call});
    return out;
  }
  if (const auto* s = std::get_if<SeqNode>(&node.v)) {
    for (const Node& c : s->children) {
      auto sub = flatten_stream(c);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  const auto& p = std::get<ParNode>(node.v);
  std::vector<std::vector<FlatStep>> streams;
  size_t longest = 0;
  for (const Node& c : p.children) {
    streams.push_back(flatten_stream(c));
    longest = std::max(longest, streams.back().size());
  }
  for (size_t r = 0; r < longest; ++r) {
    for (const auto& st : streams) {
      if (r < st.size()) out.push_back(st[r]);
    }
  }
  return out;
}

inline std::vector<RobotSpec> resolve_team(
    const Team& team, const std::map<RobotId, const RobotSpec*>& by_id,
    std::string* missing) {
  std::vector<RobotSpec> out;
  for (RobotId id : team.members) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      *missing = "robot" + std::to_string(id);
      return {};
    }
    out.push_back(*it->second);
  }
  return out;
}

}  // namespace detail

// Runs a plan to completion. Failed actions are recorded and execution
// continues; parallel branches are interleaved by deterministic round-robin
// with every action costing one tick.
inline ExecutionTrace execute(const PlanAst& plan, WorldState world,
                              std::span<const RobotSpec> robots,
                              const StepObserver& observer = {}) {
  std::map<RobotId, const RobotSpec*> by_id;
  for (const RobotSpec& r : robots) by_id[r.id] = &r;
  world.robot_state.clear();
  for (const RobotSpec& r : robots) world.robot_state[r.id] = RobotState{};

  ExecutionTrace trace;
  int tick = 0;

  auto run_step = [&](const detail::FlatStep& fs, int at_tick) {
    TraceStep step;
    step.tick = at_tick;
    step.team = fs.team;
    step.robot = fs.team.members.front();
    step.action = *fs.action;
    std::string missing;
    std::vector<RobotSpec> members = detail::resolve_team(fs.team, by_id, &missing);
    StepOutcome out = members.empty()
                          ? StepOutcome::failure("unknown robot " + missing)
                          : apply_action(world, members, *fs.action);
    step.success = out.ok;
    step.reason = out.reason;
    trace.steps.push_back(step);
    if (observer) observer(trace.steps.back(), world);
  };

  std::vector<const Node*> units;
  collect_phase_units(plan.root, units);
  for (const Node* unit : units) {
    trace.phase_sequence.push_back(robots_in(*unit));
    if (const auto* a = std::get_if<AssignNode>(&unit->v)) {
      for (const ActionCall& call : a->actions) {
        run_step({a->team, &call}, tick++);
      }
      continue;
    }
    // A par unit: each branch is one stream, one action per branch per tick.
    const auto& p = std::get<ParNode>(unit->v);
    std::vector<std::vector<detail::FlatStep>> streams;
    size_t longest = 0;
    for (const Node& c : p.children) {
      streams.push_back(detail::flatten_stream(c));
      longest = std::max(longest, streams.back().size());
    }
    for (size_t r = 0; r < longest; ++r) {
      for (const auto& st : streams) {
        if (r < st.size()) run_step(st[r], tick + static_cast<int>(r));
      }
    }
    tick += static_cast<int>(longest);
  }
  trace.final_world = std::move(world);
  return trace;
}

}  // namespace crewplan

#endif  // CREWPLAN_EXECUTOR_HPP
