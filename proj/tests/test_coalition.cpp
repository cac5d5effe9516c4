#include <catch2/catch_amalgamated.hpp>

#include "crewplan/coalition.hpp"
#include "test_util.hpp"

using namespace crewplan;
using testutil::Rng;

namespace {

RobotSpec bot(RobotId id, std::initializer_list<Skill> skills) {
  RobotSpec r;
  r.id = id;
  for (Skill s : skills) r.skills.push_back({s, std::nullopt});
  return r;
}

RobotSpec carrier(RobotId id, double capacity) {
  RobotSpec r;
  r.id = id;
  r.skills.push_back({Skill::GoToObject, std::nullopt});
  r.skills.push_back({Skill::PickupObject, capacity});
  r.skills.push_back({Skill::PutObject, std::nullopt});
  return r;
}

SubTask lamp_subtask() {
  return make_subtask("t1", "switch off",
                      {{Skill::GoToObject, {"Lamp"}},
                       {Skill::SwitchOff, {"Lamp"}}},
                      0);
}

}  // namespace

TEST_CASE("a single covering robot wins, lowest id first") {
  std::vector<RobotSpec> robots = {
      bot(2, {Skill::GoToObject, Skill::SwitchOff}),
      bot(1, {Skill::GoToObject, Skill::SwitchOff}),
      bot(3, {Skill::GoToObject})};
  CoalitionDecision d = solve_subtask(lamp_subtask(), robots);
  REQUIRE(d.kind == CoalitionDecision::Kind::SingleRobot);
  REQUIRE(d.team.members == std::vector<RobotId>{1});
  REQUIRE(d.rationale.find("robot1") != std::string::npos);
}

TEST_CASE("skill gaps produce a minimal union team") {
  SubTask st = make_subtask("t1", "clean run",
                            {{Skill::GoToObject, {"Mug"}},
                             {Skill::PickupObject, {"Mug"}},
                             {Skill::CleanObject, {"Mug"}}},
                            0);
  std::vector<RobotSpec> robots = {
      bot(1, {Skill::GoToObject, Skill::PickupObject}),
      bot(2, {Skill::GoToObject, Skill::CleanObject})};
  CoalitionDecision d = solve_subtask(st, robots);
  REQUIRE(d.kind == CoalitionDecision::Kind::TeamUnion);
  REQUIRE(d.team.members == std::vector<RobotId>{1, 2});
  REQUIRE(d.rationale.find("no single robot covers") != std::string::npos);
}

TEST_CASE("capacity demands pool robots") {
  SubTask st = make_subtask("t1", "heavy lift",
                            {{Skill::GoToObject, {"Crate"}},
                             {Skill::PickupObject, {"Crate"}}},
                            0, Demand{Skill::PickupObject, 8.0});
  std::vector<RobotSpec> robots = {carrier(1, 5.0), carrier(2, 5.0)};
  CoalitionDecision d = solve_subtask(st, robots);
  REQUIRE(d.kind == CoalitionDecision::Kind::TeamCapacity);
  REQUIRE(d.team.members == std::vector<RobotId>{1, 2});
  REQUIRE(d.rationale.find("pools 10") != std::string::npos);
}

TEST_CASE("no coverage at all is Infeasible, not an error") {
  SubTask st = make_subtask("t1", "slice",
                            {{Skill::SliceObject, {"Apple"}}}, 0);
  std::vector<RobotSpec> robots = {bot(1, {Skill::GoToObject}),
                                   bot(2, {Skill::GoToObject})};
  CoalitionDecision d = solve_subtask(st, robots);
  REQUIRE(d.kind == CoalitionDecision::Kind::Infeasible);
  REQUIRE(d.team.members.empty());
  REQUIRE(d.rationale.find("SliceObject") != std::string::npos);
}

TEST_CASE("form_policy is pointwise and order preserving") {
  Decomposition d;
  d.subtasks.push_back(lamp_subtask());
  d.subtasks.push_back(make_subtask(
      "t2", "go", {{Skill::GoToObject, {"Apple"}}}, 1));
  std::vector<RobotSpec> robots = {bot(1, {Skill::GoToObject, Skill::SwitchOff})};
  CoalitionPolicy policy = form_policy(d, robots);
  REQUIRE(policy.decisions.size() == 2);
  REQUIRE(policy.decisions[0].subtask_id == "t1");
  REQUIRE(policy.decisions[1].subtask_id == "t2");
  REQUIRE(policy.decisions[0].kind == CoalitionDecision::Kind::SingleRobot);

  std::vector<RobotSpec> skilless = {bot(1, {}), bot(2, {})};
  CoalitionPolicy none = form_policy(d, skilless);
  for (const CoalitionDecision& dec : none.decisions) {
    REQUIRE(dec.kind == CoalitionDecision::Kind::Infeasible);
  }
}

TEST_CASE("allocate wraps disjoint same-phase teams in one par") {
  Decomposition d;
  d.subtasks.push_back(make_subtask("t1", "a", {{Skill::GoToObject, {"Lamp"}}}, 0));
  d.subtasks.push_back(make_subtask("t2", "b", {{Skill::GoToObject, {"Mug"}}}, 0));
  CoalitionPolicy policy;
  policy.decisions = {
      {"t1", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""},
      {"t2", CoalitionDecision::Kind::SingleRobot, make_team({2}), ""}};
  PlanAst plan = allocate(d, policy);
  PlanAst expected{seq({par({assign(make_team({1}), d.subtasks[0].actions),
                             assign(make_team({2}), d.subtasks[1].actions)})})};
  REQUIRE(plan == expected);
}

TEST_CASE("allocate serializes same-phase sub-tasks sharing a robot") {
  Decomposition d;
  d.subtasks.push_back(make_subtask("t1", "a", {{Skill::GoToObject, {"Lamp"}}}, 0));
  d.subtasks.push_back(make_subtask("t2", "b", {{Skill::GoToObject, {"Mug"}}}, 0));
  CoalitionPolicy policy;
  policy.decisions = {
      {"t1", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""},
      {"t2", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""}};
  PlanAst plan = allocate(d, policy);
  PlanAst expected{seq({assign(make_team({1}), d.subtasks[0].actions),
                        assign(make_team({1}), d.subtasks[1].actions)})};
  REQUIRE(plan == expected);
}

TEST_CASE("allocate keeps temporal phases in order") {
  Decomposition d;
  d.subtasks.push_back(make_subtask("t1", "late", {{Skill::GoToObject, {"Lamp"}}}, 1));
  d.subtasks.push_back(make_subtask("t2", "early", {{Skill::GoToObject, {"Mug"}}}, 0));
  CoalitionPolicy policy;
  policy.decisions = {
      {"t1", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""},
      {"t2", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""}};
  PlanAst plan = allocate(d, policy);
  const auto& root = std::get<SeqNode>(plan.root.v);
  REQUIRE(root.children.size() == 2);
  // phase 0 (t2) comes first
  REQUIRE(std::get<AssignNode>(root.children[0].v).actions ==
          d.subtasks[1].actions);
}

TEST_CASE("allocate refuses infeasible policies") {
  Decomposition d;
  d.subtasks.push_back(make_subtask("t1", "a", {{Skill::SliceObject, {"Apple"}}}, 0));
  CoalitionPolicy policy;
  policy.decisions = {{"t1", CoalitionDecision::Kind::Infeasible, Team{}, "nope"}};
  REQUIRE_THROWS_AS(allocate(d, policy), InfeasiblePlanError);
}

TEST_CASE("random_allocate is deterministic per seed and ignores skills") {
  Decomposition d;
  d.subtasks.push_back(make_subtask("t1", "slice", {{Skill::SliceObject, {"Apple"}}}, 0));
  d.subtasks.push_back(make_subtask("t2", "go", {{Skill::GoToObject, {"Mug"}}}, 0));
  std::vector<RobotSpec> robots = {bot(1, {Skill::GoToObject}),
                                   bot(2, {Skill::GoToObject})};
  PlanAst a = random_allocate(d, robots, 17);
  PlanAst b = random_allocate(d, robots, 17);
  REQUIRE(a == b);
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 32 && !differs; ++seed) {
    differs = !(random_allocate(d, robots, seed) == a);
  }
  REQUIRE(differs);

  std::vector<RobotSpec> solo = {bot(1, {Skill::GoToObject})};
  CoalitionPolicy oracle_policy;
  oracle_policy.decisions = {
      {"t1", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""},
      {"t2", CoalitionDecision::Kind::SingleRobot, make_team({1}), ""}};
  REQUIRE(random_allocate(d, solo, 5) == allocate(d, oracle_policy));
}

TEST_CASE("brute force size limit") {
  SubTask st = lamp_subtask();
  std::vector<RobotSpec> many;
  for (int i = 1; i <= 11; ++i) many.push_back(bot(i, {Skill::GoToObject}));
  REQUIRE_THROWS_AS(brute_force_solve(st, many), std::invalid_argument);
}

TEST_CASE("solver agrees with the exhaustive oracle") {
  Rng rng(31337);
  for (int i = 0; i < 500; ++i) {
    auto inst = testutil::random_coalition_instance(rng);
    CoalitionDecision fast = solve_subtask(inst.subtask, inst.robots);
    CoalitionDecision slow = brute_force_solve(inst.subtask, inst.robots);
    REQUIRE(fast.kind == slow.kind);
    REQUIRE(fast.team == slow.team);
  }
}

TEST_CASE("solver results are sound and minimal") {
  Rng rng(555);
  for (int i = 0; i < 500; ++i) {
    auto inst = testutil::random_coalition_instance(rng);
    CoalitionDecision d = solve_subtask(inst.subtask, inst.robots);
    if (!d.feasible()) continue;
    std::vector<RobotSpec> members;
    for (RobotId id : d.team.members) {
      for (const RobotSpec& r : inst.robots) {
        if (r.id == id) members.push_back(r);
      }
    }
    SkillSet pool;
    for (const RobotSpec& r : members) {
      SkillSet s = r.skill_set();
      pool.insert(s.begin(), s.end());
    }
    REQUIRE(covers(pool, inst.subtask.required_skills));
    if (inst.subtask.demand) {
      REQUIRE(capacity_feasible(members, inst.subtask.demand->skill,
                                inst.subtask.demand->amount));
    }
    // minimality: no team of q-1 robots, from anywhere, is feasible
    const size_t q = d.team.members.size();
    if (q > 1) {
      const size_t n = inst.robots.size();
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<size_t>(__builtin_popcount(mask)) != q - 1) continue;
        std::vector<RobotSpec> smaller;
        for (size_t j = 0; j < n; ++j) {
          if (mask & (1u << j)) smaller.push_back(inst.robots[j]);
        }
        SkillSet small_pool;
        for (const RobotSpec& r : smaller) {
          SkillSet s = r.skill_set();
          small_pool.insert(s.begin(), s.end());
        }
        bool feasible = covers(small_pool, inst.subtask.required_skills) &&
                        (!inst.subtask.demand ||
                         capacity_feasible(smaller, inst.subtask.demand->skill,
                                           inst.subtask.demand->amount));
        REQUIRE_FALSE(feasible);
      }
    }
  }
}

TEST_CASE("identical inputs give identical decisions") {
  Rng rng(777);
  for (int i = 0; i < 100; ++i) {
    auto inst = testutil::random_coalition_instance(rng);
    REQUIRE(solve_subtask(inst.subtask, inst.robots) ==
            solve_subtask(inst.subtask, inst.robots));
  }
}
