#ifndef CREWPLAN_TEST_UTIL_HPP
#define CREWPLAN_TEST_UTIL_HPP

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "crewplan/coalition.hpp"
#include "crewplan/core.hpp"
#include "crewplan/dsl.hpp"

namespace crewplan::testutil {

inline std::filesystem::path source_dir() {
#ifdef CREWPLAN_SOURCE_DIR
  return std::filesystem::path(CREWPLAN_SOURCE_DIR);
#else
  return std::filesystem::current_path();
#endif
}

inline std::filesystem::path dataset_dir() { return source_dir() / "dataset"; }

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("crewplan-" + tag + "-" + std::to_string(::getpid()) + "-" +
              std::to_string(counter.fetch_add(1)));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline const std::vector<std::string>& arg_vocab() {
  static const std::vector<std::string> vocab = {
      "Apple", "Lamp", "Fridge", "Box", "Sink", "Mug", "Table", "RegionA"};
  return vocab;
}

inline ActionCall random_action(Rng& rng) {
  Skill skill = kAllSkills[rng() % kAllSkills.size()];
  ActionCall call{skill, {}};
  for (int i = 0; i < skill_arity(skill); ++i) {
    call.args.push_back(arg_vocab()[rng() % arg_vocab().size()]);
  }
  return call;
}

inline std::vector<ActionCall> random_actions(Rng& rng, int lo, int hi) {
  std::vector<ActionCall> out;
  int n = pick(rng, lo, hi);
  for (int i = 0; i < n; ++i) out.push_back(random_action(rng));
  return out;
}

// Random plan AST respecting the type invariants (par branches are
// robot-disjoint, assign teams non-empty).
inline Node random_node(Rng& rng, std::vector<RobotId> allowed, int depth) {
  int kind = depth >= 3 ? 0 : pick(rng, 0, 3);  // bias toward assign leaves
  if (kind <= 1 || allowed.empty()) {
    std::shuffle(allowed.begin(), allowed.end(), rng);
    int take = pick(rng, 1, static_cast<int>(allowed.size()));
    std::vector<RobotId> members(allowed.begin(), allowed.begin() + take);
    return assign(make_team(std::move(members)), random_actions(rng, 0, 4));
  }
  if (kind == 2) {
    std::vector<Node> children;
    int n = pick(rng, 0, 3);
    for (int i = 0; i < n; ++i) {
      children.push_back(random_node(rng, allowed, depth + 1));
    }
    return seq(std::move(children));
  }
  // par: partition the allowed robots across branches
  std::shuffle(allowed.begin(), allowed.end(), rng);
  int branches = pick(rng, 0, std::min<int>(3, static_cast<int>(allowed.size())));
  std::vector<Node> children;
  size_t start = 0;
  for (int b = 0; b < branches; ++b) {
    size_t remaining = allowed.size() - start;
    size_t left = static_cast<size_t>(branches - b);
    size_t take = 1 + rng() % (remaining - left + 1);
    std::vector<RobotId> share(allowed.begin() + start,
                               allowed.begin() + start + take);
    start += take;
    children.push_back(random_node(rng, std::move(share), depth + 1));
  }
  return par(std::move(children));
}

inline PlanAst random_ast(Rng& rng) {
  int robots = pick(rng, 1, 5);
  std::vector<RobotId> ids;
  for (int i = 1; i <= robots; ++i) ids.push_back(i);
  return PlanAst{random_node(rng, std::move(ids), 0)};
}

// Random coalition instance for oracle-equivalence checks: up to 4 robots,
// up to 6 distinct skills, random capacities and an optional demand.
struct CoalitionInstance {
  SubTask subtask;
  std::vector<RobotSpec> robots;
};

inline CoalitionInstance random_coalition_instance(Rng& rng) {
  std::vector<Skill> pool(kAllSkills.begin(), kAllSkills.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  int nskills = pick(rng, 1, 6);
  pool.resize(nskills);

  int nrobots = pick(rng, 1, 4);
  std::vector<RobotSpec> robots;
  for (int r = 1; r <= nrobots; ++r) {
    RobotSpec spec;
    spec.id = r;
    for (Skill s : pool) {
      if (rng() % 2 == 0) continue;
      SkillSpec sk{s, std::nullopt};
      if (skill_has_capacity(s) && rng() % 2 == 0) {
        sk.capacity = static_cast<double>(pick(rng, 0, 10));
      }
      spec.skills.push_back(sk);
    }
    robots.push_back(std::move(spec));
  }

  int nreq = pick(rng, 1, nskills);
  std::vector<ActionCall> actions;
  std::vector<Skill> req(pool.begin(), pool.begin() + nreq);
  for (Skill s : req) {
    ActionCall call{s, {}};
    for (int i = 0; i < skill_arity(s); ++i) call.args.push_back("X");
    actions.push_back(call);
  }
  std::optional<Demand> demand;
  std::vector<Skill> capacity_skills;
  for (Skill s : req) {
    if (skill_has_capacity(s)) capacity_skills.push_back(s);
  }
  if (!capacity_skills.empty() && rng() % 2 == 0) {
    demand = Demand{capacity_skills[rng() % capacity_skills.size()],
                    static_cast<double>(pick(rng, 0, 20))};
  }
  return {make_subtask("t1", "random", std::move(actions), 0, demand),
          std::move(robots)};
}

}  // namespace crewplan::testutil

#endif  // CREWPLAN_TEST_UTIL_HPP
