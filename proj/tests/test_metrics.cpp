#include <catch2/catch_amalgamated.hpp>

#include "crewplan/json_io.hpp"
#include "crewplan/metrics.hpp"
#include "test_util.hpp"

using namespace crewplan;

namespace {

ExecutionTrace trace_with(int total, int succeeded) {
  ExecutionTrace t;
  for (int i = 0; i < total; ++i) {
    TraceStep s;
    s.tick = i;
    s.robot = 1;
    s.team = make_team({1});
    s.action = {Skill::GoToObject, {"X"}};
    s.success = i < succeeded;
    t.steps.push_back(s);
  }
  t.phase_sequence.push_back({1});
  return t;
}

WorldState lamp_world(bool on) {
  WorldState w;
  ObjectState lamp;
  lamp.id = "Lamp";
  lamp.type = "Lamp";
  lamp.togglable = true;
  lamp.attributes = default_attributes();
  lamp.attributes["is_on"] = on;
  w.objects["Lamp"] = lamp;
  return w;
}

GroundTruth gt(int phases, int subtasks) {
  GroundTruth g;
  g.goal_conditions = {{"Lamp", "is_on", false}};
  g.gt_phase_count = phases;
  g.subtask_count = subtasks;
  return g;
}

}  // namespace

TEST_CASE("Exe is the executed fraction and rejects empty plans") {
  REQUIRE(exe(trace_with(10, 10)) == 1.0);
  REQUIRE(exe(trace_with(10, 8)) == 0.8);
  REQUIRE(exe_fraction(trace_with(10, 8)) == Fraction{4, 5});
  REQUIRE_THROWS_AS(exe(trace_with(0, 0)), MetricsError);
}

TEST_CASE("GCR counts met goals over all goals") {
  WorldState w = lamp_world(false);
  std::vector<GoalCondition> four = {{"Lamp", "is_on", false},
                                     {"Lamp", "is_open", false},
                                     {"Lamp", "is_sliced", false},
                                     {"Lamp", "is_broken", false}};
  REQUIRE(gcr(w, four) == 1.0);

  std::vector<GoalCondition> three_of_four = four;
  three_of_four[3].expected = true;  // lamp is not broken
  REQUIRE(gcr(w, three_of_four) == 0.75);

  std::vector<GoalCondition> none = {{"Lamp", "is_on", true},
                                     {"Lamp", "is_open", true},
                                     {"Lamp", "is_sliced", true},
                                     {"Lamp", "is_broken", true}};
  REQUIRE(gcr(w, none) == 0.0);

  std::vector<GoalCondition> missing = {{"Ghost", "is_on", true}};
  REQUIRE_THROWS_AS(gcr(w, missing), DatasetError);
}

TEST_CASE("GCR survives serialize-then-reload of the final world") {
  WorldState w = lamp_world(false);
  w.regions["RegionA"] = Region{"RegionA", 12.0, true, 13.0};
  w.robot_state[1] = RobotState{"Lamp", std::nullopt};
  std::vector<GoalCondition> goals = {{"Lamp", "is_on", false},
                                      {"RegionA", "patrolled", true}};
  nlohmann::json j = w;
  WorldState reloaded = j.get<WorldState>();
  REQUIRE(reloaded == w);
  REQUIRE(gcr_fraction(w, goals) == gcr_fraction(reloaded, goals));
}

TEST_CASE("RU anchors") {
  REQUIRE(ru(3, gt(3, 5)) == 1.0);
  REQUIRE(ru(5, gt(3, 5)) == 0.0);
  REQUIRE(ru(4, gt(3, 5)) == 0.5);
  // better-than-reference parallelization is not penalized
  REQUIRE(ru(2, gt(3, 5)) == 1.0);
  // when reference equals the sub-task count, matching it still scores 1
  REQUIRE(ru(3, gt(3, 3)) == 1.0);
  REQUIRE(ru(4, gt(3, 3)) == 0.0);
  REQUIRE_THROWS_AS(ru(0, gt(1, 1)), MetricsError);
  REQUIRE_THROWS_AS(ru(1, gt(5, 3)), DatasetError);
}

TEST_CASE("RU is monotone non-increasing in the observed phase count") {
  GroundTruth g = gt(2, 7);
  double prev = 1.0;
  for (int t = 1; t <= 9; ++t) {
    double v = ru(t, g);
    REQUIRE(v <= prev);
    prev = v;
  }
}

TEST_CASE("TCR is strict") {
  REQUIRE(tcr(1.0) == 1);
  REQUIRE(tcr(0.99) == 0);
  REQUIRE(tcr(0.0) == 0);
}

TEST_CASE("SR is the conjunction of perfect GCR and RU") {
  REQUIRE(sr(1.0, 1.0) == 1);
  REQUIRE(sr(1.0, 0.5) == 0);
  REQUIRE(sr(0.75, 1.0) == 0);
}

TEST_CASE("record invariants hold on random runs") {
  testutil::Rng rng(97);
  for (int i = 0; i < 300; ++i) {
    int goals_total = testutil::pick(rng, 1, 6);
    int met = testutil::pick(rng, 0, goals_total);
    int k = testutil::pick(rng, 1, 6);
    int g = testutil::pick(rng, 1, k);
    int t = testutil::pick(rng, 1, k + 2);
    MetricsRecord rec;
    rec.gcr = make_fraction(met, goals_total);
    rec.ru = ru_fraction(t, GroundTruth{{{"x", "is_on", true}}, g, k});
    rec.tcr = tcr(rec.gcr.value());
    rec.sr = sr(rec.gcr.value(), rec.ru.value());
    REQUIRE(rec.sr <= rec.tcr);
    REQUIRE(rec.tcr <= (rec.gcr.num > 0 ? 1 : 0));
    REQUIRE((rec.tcr == 1) == rec.gcr.is_one());
    REQUIRE((rec.sr == 1) == (rec.gcr.is_one() && rec.ru.is_one()));
  }
}

TEST_CASE("compute_metrics assembles exact fractions and counts") {
  WorldState w = lamp_world(false);
  ExecutionTrace t = trace_with(4, 3);
  t.final_world = w;
  GroundTruth g;
  g.goal_conditions = {{"Lamp", "is_on", false}, {"Lamp", "is_broken", true}};
  g.gt_phase_count = 1;
  g.subtask_count = 2;
  MetricsRecord rec = compute_metrics(t, g);
  REQUIRE(rec.exe == Fraction{3, 4});
  REQUIRE(rec.gcr == Fraction{1, 2});
  REQUIRE(rec.ru == Fraction{1, 1});
  REQUIRE(rec.tcr == 0);
  REQUIRE(rec.sr == 0);
  REQUIRE(rec.actions_total == 4);
  REQUIRE(rec.actions_succeeded == 3);
  REQUIRE(rec.goals_total == 2);
  REQUIRE(rec.goals_met == 1);
  REQUIRE(rec.phases_observed == 1);
  REQUIRE(nlohmann::json(rec).get<MetricsRecord>() == rec);
}

TEST_CASE("aggregate means per category with fixed row order") {
  MetricsRecord perfect;
  perfect.sr = perfect.tcr = 1;
  perfect.gcr = perfect.ru = perfect.exe = Fraction{1, 1};
  MetricsRecord zero;
  zero.gcr = zero.ru = zero.exe = Fraction{0, 1};

  std::vector<TaggedRecord> records = {
      {Category::Compound, perfect, ""},
      {Category::Elemental, perfect, ""},
      {Category::Compound, zero, ""},
      {Category::Elemental, perfect, ""},
      {Category::Complex, std::nullopt, "cannot slice"},
      {Category::Complex, perfect, ""},
  };
  BenchReport report = aggregate(records);
  REQUIRE(report.rows.size() == 3);
  REQUIRE(report.rows[0].category == Category::Elemental);
  REQUIRE(report.rows[1].category == Category::Compound);
  REQUIRE(report.rows[2].category == Category::Complex);
  REQUIRE(report.rows[0].sr == 1.0);
  REQUIRE(report.rows[1].sr == 0.5);
  REQUIRE(report.rows[2].refusals == 1);
  REQUIRE(report.rows[2].runs == 1);
  REQUIRE(report.empty_categories ==
          std::vector<Category>{Category::Simple});

  std::string md = render_markdown(report, "t");
  REQUIRE(md.find("| elemental | 2 | 0 | 1.00 | 1.00 | 1.00 | 1.00 | 1.00 |") !=
          std::string::npos);
  REQUIRE(md.find("| compound | 2 | 0 | 0.50 |") != std::string::npos);
  REQUIRE(md.find("no tasks in category simple") != std::string::npos);
  std::string csv = render_csv(report);
  REQUIRE(csv.find("compound,2,0,0.50") != std::string::npos);
}
