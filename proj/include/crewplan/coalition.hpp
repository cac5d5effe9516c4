#ifndef CREWPLAN_COALITION_HPP
#define CREWPLAN_COALITION_HPP

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "crewplan/core.hpp"
#include "crewplan/dsl.hpp"

namespace crewplan {

struct InfeasiblePlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoalitionDecision {
  enum class Kind { SingleRobot, TeamUnion, TeamCapacity, Infeasible };

  std::string subtask_id;
  Kind kind = Kind::Infeasible;
  Team team;  // empty iff Infeasible
  std::string rationale;

  bool feasible() const { return kind != Kind::Infeasible; }
  bool operator==(const CoalitionDecision&) const = default;
};

struct CoalitionPolicy {
  std::vector<CoalitionDecision> decisions;  // one per sub-task, order preserved

  const CoalitionDecision* find(const std::string& subtask_id) const {
    for (const CoalitionDecision& d : decisions) {
      if (d.subtask_id == subtask_id) return &d;
    }
    return nullptr;
  }

  bool operator==(const CoalitionPolicy&) const = default;
};

inline std::string_view to_string(CoalitionDecision::Kind k) {
  switch (k) {
    case CoalitionDecision::Kind::SingleRobot: return "single_robot";
    case CoalitionDecision::Kind::TeamUnion: return "team_union";
    case CoalitionDecision::Kind::TeamCapacity: return "team_capacity";
    case CoalitionDecision::Kind::Infeasible: return "infeasible";
  }
  return "?";
}

namespace detail {

inline std::string format_skill_set(const SkillSet& skills) {
  std::string out = "{";
  bool first = true;
  for (Skill s : skills) {
    if (!first) out += ", ";
    out += to_string(s);
    first = false;
  }
  return out + "}";
}

inline std::string format_team_ids(const Team& team) {
  std::string out = "{";
  for (size_t i = 0; i < team.members.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(team.members[i]);
  }
  return out + "}";
}

inline bool team_feasible(const SubTask& st, std::span<const RobotSpec> team) {
  SkillSet pool;
  for (const RobotSpec& r : team) {
    SkillSet s = r.skill_set();
    pool.insert(s.begin(), s.end());
  }
  if (!covers(pool, st.required_skills)) return false;
  if (st.demand) {
    return capacity_feasible(team, st.demand->skill, st.demand->amount);
  }
  return true;
}

inline bool any_single_covers_skills(const SubTask& st,
                                     std::span<const RobotSpec> robots) {
  for (const RobotSpec& r : robots) {
    if (covers(r.skill_set(), st.required_skills)) return true;
  }
  return false;
}

inline CoalitionDecision classify(const SubTask& st,
                                  std::span<const RobotSpec> all_robots,
                                  const std::vector<const RobotSpec*>& chosen) {
  CoalitionDecision d;
  d.subtask_id = st.id;
  std::vector<RobotId> ids;
  for (const RobotSpec* r : chosen) ids.push_back(r->id);
  d.team = make_team(std::move(ids));
  std::string skills = format_skill_set(st.required_skills);
  if (chosen.size() == 1) {
    d.kind = CoalitionDecision::Kind::SingleRobot;
    d.rationale = "robot" + std::to_string(chosen[0]->id) + " alone covers " +
                  skills;
    if (st.demand) {
      d.rationale += " and meets " + std::string(to_string(st.demand->skill)) +
                     " demand " + format_amount(st.demand->amount) +
                     " (capacity " +
                     format_amount(
                         chosen[0]->capacity_for(st.demand->skill).value_or(0)) +
                     ")";
    }
    return d;
  }
  std::vector<RobotSpec> members;
  for (const RobotSpec* r : chosen) members.push_back(*r);
  if (any_single_covers_skills(st, all_robots)) {
    d.kind = CoalitionDecision::Kind::TeamCapacity;
    d.rationale = "skills " + skills +
                  " are singly coverable, but no single robot meets " +
                  std::string(to_string(st.demand->skill)) + " demand " +
                  format_amount(st.demand->amount) + "; team " +
                  format_team_ids(d.team) + " pools " +
                  format_amount(pooled_capacity(members, st.demand->skill));
  } else {
    d.kind = CoalitionDecision::Kind::TeamUnion;
    d.rationale = "no single robot covers " + skills + "; team " +
                  format_team_ids(d.team) + " pools its skills";
    if (st.demand) {
      d.rationale += " and " + std::string(to_string(st.demand->skill)) +
                     " capacity " +
                     format_amount(pooled_capacity(members, st.demand->skill)) +
                     " >= " + format_amount(st.demand->amount);
    }
  }
  return d;
}

inline CoalitionDecision infeasible_decision(const SubTask& st,
                                             std::span<const RobotSpec> robots) {
  CoalitionDecision d;
  d.subtask_id = st.id;
  d.kind = CoalitionDecision::Kind::Infeasible;
  SkillSet pool;
  for (const RobotSpec& r : robots) {
    SkillSet s = r.skill_set();
    pool.insert(s.begin(), s.end());
  }
  if (!covers(pool, st.required_skills)) {
    SkillSet missing;
    for (Skill s : st.required_skills) {
      if (!pool.count(s)) missing.insert(s);
    }
    d.rationale = "no subset of the " + std::to_string(robots.size()) +
                  " robots covers " + format_skill_set(st.required_skills) +
                  "; missing " + format_skill_set(missing);
  } else {
    std::vector<RobotSpec> all(robots.begin(), robots.end());
    d.rationale = "even all " + std::to_string(robots.size()) +
                  " robots pool only " +
                  format_amount(pooled_capacity(all, st.demand->skill)) + " " +
                  std::string(to_string(st.demand->skill)) +
                  " capacity against demand " + format_amount(st.demand->amount);
  }
  return d;
}

}  // namespace detail

// Picks the assignment for one sub-task: the single robot that covers its
// skills and demand if one exists (lowest id wins), else the minimum-size
// feasible team, ties broken by lexicographically smallest id tuple.
// Infeasible is a value, not an error.
inline CoalitionDecision solve_subtask(const SubTask& subtask,
                                       std::span<const RobotSpec> robots) {
  if (robots.empty()) throw std::invalid_argument("solve_subtask: no robots");
  std::vector<const RobotSpec*> sorted;
  for (const RobotSpec& r : robots) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const RobotSpec* a, const RobotSpec* b) { return a->id < b->id; });

  const size_t n = sorted.size();
  std::vector<const RobotSpec*> chosen;
  // Combinations of size q in lexicographic id order; first feasible wins.
  auto search = [&](auto&& self, size_t start, size_t remaining) -> bool {
    if (remaining == 0) {
      std::vector<RobotSpec> members;
      for (const RobotSpec* r : chosen) members.push_back(*r);
      return detail::team_feasible(subtask, members);
    }
    for (size_t i = start; i + remaining <= n; ++i) {
      chosen.push_back(sorted[i]);
      if (self(self, i + 1, remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (size_t q = 1; q <= n; ++q) {
    chosen.clear();
    if (search(search, 0, q)) {
      return detail::classify(subtask, robots, chosen);
    }
  }
  return detail::infeasible_decision(subtask, robots);
}

// Testing oracle: enumerates every nonempty subset, keeps the feasible ones
// and picks min cardinality, then smallest id tuple. Must agree with
// solve_subtask on classification, team and tie-break.
inline CoalitionDecision brute_force_solve(const SubTask& subtask,
                                           std::span<const RobotSpec> robots) {
  if (robots.empty()) throw std::invalid_argument("brute_force_solve: no robots");
  if (robots.size() > 10) {
    throw std::invalid_argument("brute_force_solve: more than 10 robots");
  }
  std::vector<const RobotSpec*> sorted;
  for (const RobotSpec& r : robots) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const RobotSpec* a, const RobotSpec* b) { return a->id < b->id; });

  std::vector<std::vector<const RobotSpec*>> feasible;
  const std::uint32_t total = 1u << sorted.size();
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    std::vector<const RobotSpec*> subset;
    std::vector<RobotSpec> members;
    for (size_t i = 0; i < sorted.size(); ++i) {
      if (mask & (1u << i)) {
        subset.push_back(sorted[i]);
        members.push_back(*sorted[i]);
      }
    }
    if (detail::team_feasible(subtask, members)) feasible.push_back(subset);
  }
  if (feasible.empty()) return detail::infeasible_decision(subtask, robots);
  auto id_tuple = [](const std::vector<const RobotSpec*>& v) {
    std::vector<RobotId> ids;
    for (const RobotSpec* r : v) ids.push_back(r->id);
    return ids;
  };
  std::sort(feasible.begin(), feasible.end(),
            [&](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return id_tuple(a) < id_tuple(b);
            });
  return detail::classify(subtask, robots, feasible.front());
}

// One decision per sub-task, order preserved.
inline CoalitionPolicy form_policy(const Decomposition& decomposition,
                                   std::span<const RobotSpec> robots) {
  CoalitionPolicy policy;
  policy.decisions.reserve(decomposition.subtasks.size());
  for (const SubTask& st : decomposition.subtasks) {
    policy.decisions.push_back(solve_subtask(st, robots));
  }
  return policy;
}

namespace detail {

// Greedy first-fit wave packing: sub-tasks of one temporal phase whose teams
// are pairwise disjoint share a par wave; conflicts serialize, lower id first.
struct Wave {
  std::vector<const SubTask*> subtasks;
  std::vector<Team> teams;
};

inline PlanAst build_plan(const Decomposition& decomposition,
                          const std::map<std::string, Team>& team_of) {
  std::map<int, std::vector<const SubTask*>> by_order;
  for (const SubTask& st : decomposition.subtasks) {
    by_order[st.temporal_order].push_back(&st);
  }
  std::vector<Node> units;
  for (auto& [order, group] : by_order) {
    std::sort(group.begin(), group.end(),
              [](const SubTask* a, const SubTask* b) { return a->id < b->id; });
    std::vector<Wave> waves;
    for (const SubTask* st : group) {
      const Team& team = team_of.at(st->id);
      Wave* target = nullptr;
      for (Wave& w : waves) {
        bool clash = false;
        for (const Team& t : w.teams) {
          if (!t.disjoint(team)) {
            clash = true;
            break;
          }
        }
        if (!clash) {
          target = &w;
          break;
        }
      }
      if (!target) {
        waves.emplace_back();
        target = &waves.back();
      }
      target->subtasks.push_back(st);
      target->teams.push_back(team);
    }
    for (const Wave& w : waves) {
      std::vector<Node> leaves;
      for (size_t i = 0; i < w.subtasks.size(); ++i) {
        leaves.push_back(assign(w.teams[i], w.subtasks[i]->actions));
      }
      if (leaves.size() == 1) {
        units.push_back(std::move(leaves.front()));
      } else {
        units.push_back(par(std::move(leaves)));
      }
    }
  }
  return PlanAst{seq(std::move(units))};
}

}  // namespace detail

// Builds the executable plan from a coalition policy. Throws
// InfeasiblePlanError if any decision is Infeasible; no plan is produced.
inline PlanAst allocate(const Decomposition& decomposition,
                        const CoalitionPolicy& policy) {
  std::map<std::string, Team> team_of;
  for (const SubTask& st : decomposition.subtasks) {
    const CoalitionDecision* d = policy.find(st.id);
    if (!d) {
      throw std::invalid_argument("policy has no decision for sub-task " + st.id);
    }
    if (!d->feasible()) {
      throw InfeasiblePlanError("sub-task " + st.id + " is infeasible: " +
                                d->rationale);
    }
    team_of.emplace(st.id, d->team);
  }
  return detail::build_plan(decomposition, team_of);
}

// Baseline: assigns each sub-task to one uniformly random robot, ignoring
// skills and capacities. Reproducible for a fixed seed.
inline PlanAst random_allocate(const Decomposition& decomposition,
                               std::span<const RobotSpec> robots,
                               std::uint64_t seed) {
  if (robots.empty()) throw std::invalid_argument("random_allocate: no robots");
  std::mt19937_64 rng(seed);
  std::map<std::string, Team> team_of;
  for (const SubTask& st : decomposition.subtasks) {
    const RobotSpec& pick = robots[rng() % robots.size()];
    team_of.emplace(st.id, make_team({pick.id}));
  }
  return detail::build_plan(decomposition, team_of);
}

}  // namespace crewplan

#endif  // CREWPLAN_COALITION_HPP
