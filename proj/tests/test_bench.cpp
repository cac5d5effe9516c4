#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <thread>

#include "crewplan/bench.hpp"
#include "test_util.hpp"

using namespace crewplan;
using testutil::dataset_dir;
using testutil::fresh_temp_dir;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("the shipped benchmark loads with the published counts") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  REQUIRE_FALSE(manifest.empty_warning);
  REQUIRE(manifest.tasks.size() == 36);
  REQUIRE(manifest.count(Category::Elemental) == 6);
  REQUIRE(manifest.count(Category::Simple) == 8);
  REQUIRE(manifest.count(Category::Compound) == 14);
  REQUIRE(manifest.count(Category::Complex) == 8);
  for (const BenchTask& t : manifest.tasks) {
    REQUIRE(t.robots.size() >= 1);
    REQUIRE(t.robots.size() <= 4);
    REQUIRE(t.gt_decomposition.has_value());
  }
}

TEST_CASE("the shipped benchmark validates with zero errors") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  auto issues = validate_dataset(manifest);
  for (const ValidationIssue& i : issues) {
    INFO(i.location << ": " << i.message);
    REQUIRE(i.severity != Severity::Error);
  }
}

TEST_CASE("a dangling goal reference is reported with the object name") {
  auto dir = fresh_temp_dir("dangle");
  fs::create_directories(dir / "floorplans");
  fs::copy_file(dataset_dir() / "floorplans" / "kitchen.json",
                dir / "floorplans" / "kitchen.json");
  {
    std::ofstream out(dir / "task.json");
    out << R"({
      "id": "bad", "category": "elemental", "instruction": "x",
      "floorplan": "floorplans/kitchen.json",
      "robots": [{"id": 1, "skills": [{"name": "GoToObject"}]}],
      "ground_truth": {
        "goal_conditions": [{"object": "UnobtainiumOrb", "attribute": "is_on", "expected": true}],
        "gt_phase_count": 1, "subtask_count": 1
      }
    })";
  }
  try {
    load_task_file(dir, "task.json");
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    REQUIRE(std::string(e.what()).find("UnobtainiumOrb") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("an empty directory is an empty manifest with a warning") {
  auto dir = fresh_temp_dir("empty");
  BenchmarkManifest manifest = load_dataset(dir);
  REQUIRE(manifest.empty_warning);
  REQUIRE(manifest.tasks.empty());
  fs::remove_all(dir);
}

TEST_CASE("category invariants are enforced") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  // mislabel an elemental task as complex: every sub-task is singly coverable
  BenchmarkManifest tampered;
  tampered.root = manifest.root;
  for (const BenchTask& t : manifest.tasks) {
    if (t.id == "elemental_01") {
      BenchTask copy = t;
      copy.category = Category::Complex;
      tampered.tasks.push_back(copy);
    }
  }
  auto issues = validate_dataset(tampered);
  REQUIRE(has_errors(issues));
  bool found = false;
  for (auto& i : issues) {
    found |= i.message.find("no single robot") != std::string::npos;
  }
  REQUIRE(found);

  // and a simple task with heterogeneous robots is flagged
  BenchmarkManifest tampered2;
  tampered2.root = manifest.root;
  for (const BenchTask& t : manifest.tasks) {
    if (t.id == "simple_01") {
      BenchTask copy = t;
      copy.robots[1].skills.push_back({Skill::SliceObject, std::nullopt});
      tampered2.tasks.push_back(copy);
    }
  }
  REQUIRE(has_errors(validate_dataset(tampered2)));
}

TEST_CASE("self-consistency checks catch unreachable goals and phase drift") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  BenchmarkManifest tampered;
  tampered.root = manifest.root;
  for (const BenchTask& t : manifest.tasks) {
    if (t.id != "elemental_02") continue;
    BenchTask copy = t;
    copy.ground_truth.goal_conditions.push_back(
        {"DeskLamp", "is_broken", true});  // the oracle never breaks it
    tampered.tasks.push_back(copy);

    BenchTask drift = t;
    drift.gt_decomposition->subtasks.push_back(make_subtask(
        "t9", "extra", {{Skill::GoToObject, {"DeskLamp"}}}, 1));
    drift.ground_truth.subtask_count = 2;  // but gt_phase_count stays 1
    tampered.tasks.push_back(drift);
  }
  auto issues = validate_dataset(tampered);
  bool unmet = false, phase_drift = false;
  for (const ValidationIssue& i : issues) {
    unmet |= i.message.find("goal unmet") != std::string::npos;
    phase_drift |= i.message.find("does not match the oracle plan") !=
                   std::string::npos;
  }
  REQUIRE(unmet);
  REQUIRE(phase_drift);
}

TEST_CASE("oracle run of one task writes the full artifact set") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  const BenchTask* task = nullptr;
  for (const BenchTask& t : manifest.tasks) {
    if (t.id == "elemental_01") task = &t;
  }
  REQUIRE(task != nullptr);

  std::string task_bytes_before = slurp(fs::path(task->source_file));
  auto dir = fresh_temp_dir("oracle-run");
  PlannerSpec planner;
  TaskRunResult result = run_task(*task, planner, dir / task->id);
  REQUIRE(result.metrics.has_value());
  REQUIRE(result.metrics->sr == 1);
  REQUIRE(result.metrics->exe.is_one());
  REQUIRE(result.plan_issues.empty());
  REQUIRE(fs::exists(dir / task->id / "plan.dsl"));
  REQUIRE(fs::exists(dir / task->id / "policy.json"));
  REQUIRE(fs::exists(dir / task->id / "trace.jsonl"));
  REQUIRE(fs::exists(dir / task->id / "metrics.json"));
  // the plan file re-parses to the same structure
  PlanAst plan = parse(slurp(dir / task->id / "plan.dsl"));
  REQUIRE(serialize(plan) == result.plan_text);
  // runs never mutate dataset files
  REQUIRE(slurp(fs::path(task->source_file)) == task_bytes_before);
  fs::remove_all(dir);
}

TEST_CASE("random planner matches the oracle on elemental tasks") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  for (const BenchTask& t : manifest.tasks) {
    if (t.category != Category::Elemental) continue;
    for (std::uint64_t seed : {0ull, 7ull, 123ull}) {
      PlannerSpec planner;
      planner.kind = PlannerSpec::Kind::Random;
      planner.seed = seed;
      TaskRunResult r = run_task(t, planner);
      REQUIRE(r.metrics.has_value());
      REQUIRE(r.metrics->sr == 1);
    }
  }
}

TEST_CASE("random planner fails every complex task") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  for (const BenchTask& t : manifest.tasks) {
    if (t.category != Category::Complex) continue;
    PlannerSpec planner;
    planner.kind = PlannerSpec::Kind::Random;
    planner.seed = 11;
    TaskRunResult r = run_task(t, planner);
    REQUIRE(r.metrics.has_value());
    REQUIRE(r.metrics->sr == 0);
    REQUIRE(r.metrics->exe.value() < 1.0);
  }
}

TEST_CASE("benchmark runs are bit-reproducible") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  PlannerSpec planner;
  planner.kind = PlannerSpec::Kind::Random;
  planner.seed = 5;

  auto dir1 = fresh_temp_dir("repro1");
  auto dir2 = fresh_temp_dir("repro2");
  RunOptions o1;
  o1.out_dir = dir1;
  RunOptions o2;
  o2.out_dir = dir2;
  o2.jobs = 4;  // parallelism must not change the bytes
  BenchOutcome a = run_benchmark(manifest, planner, o1);
  BenchOutcome b = run_benchmark(manifest, planner, o2);
  REQUIRE(a.report_markdown == b.report_markdown);
  REQUIRE(slurp(dir1 / "report.md") == slurp(dir2 / "report.md"));
  REQUIRE(slurp(dir1 / "report.csv") == slurp(dir2 / "report.csv"));
  REQUIRE(slurp(dir1 / "records.jsonl") == slurp(dir2 / "records.jsonl"));
  REQUIRE(slurp(dir1 / "complex_07" / "trace.jsonl") ==
          slurp(dir2 / "complex_07" / "trace.jsonl"));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("task filtering restricts the run") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  PlannerSpec planner;
  RunOptions options;
  options.task_filter = {"elemental_02", "compound_01"};
  BenchOutcome outcome = run_benchmark(manifest, planner, options);
  REQUIRE(outcome.results.size() == 2);
}

TEST_CASE("the infeasible fixture is refused by the oracle with no plan file") {
  BenchTask task = load_task_file(dataset_dir(), "fixtures/infeasible_slice.json");
  auto dir = fresh_temp_dir("infeasible");
  PlannerSpec planner;
  TaskRunResult result = run_task(task, planner, dir / task.id);
  REQUIRE_FALSE(result.metrics.has_value());
  REQUIRE(result.refused());
  REQUIRE(result.refusal_reason.find("SliceObject") != std::string::npos);
  REQUIRE_FALSE(fs::exists(dir / task.id / "plan.dsl"));
  REQUIRE_FALSE(fs::exists(dir / task.id / "trace.jsonl"));
  REQUIRE(fs::exists(dir / task.id / "refusal.txt"));
  fs::remove_all(dir);
}

TEST_CASE("the mock pipeline relays the refusal and stops before stage 3") {
  BenchTask task = load_task_file(dataset_dir(), "fixtures/infeasible_slice.json");
  PlannerSpec planner;
  planner.kind = PlannerSpec::Kind::Mock;
  TaskRunResult result = run_task(task, planner);
  REQUIRE(result.refused());
  // transcript has decomposition and coalition entries only
  REQUIRE(result.transcript_jsonl.find("\"stage\":\"decomposition\"") !=
          std::string::npos);
  REQUIRE(result.transcript_jsonl.find("\"stage\":\"coalition\"") !=
          std::string::npos);
  REQUIRE(result.transcript_jsonl.find("\"stage\":\"allocation\"") ==
          std::string::npos);
}

TEST_CASE("the mock planner scores perfectly on the shipped benchmark") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  PlannerSpec planner;
  planner.kind = PlannerSpec::Kind::Mock;
  RunOptions options;
  options.jobs = 4;
  BenchOutcome outcome = run_benchmark(manifest, planner, options);
  for (const CategoryRow& row : outcome.report.rows) {
    REQUIRE(row.refusals == 0);
    REQUIRE(row.sr == 1.0);
    REQUIRE(row.exe == 1.0);
  }
  for (const TaskRunResult& r : outcome.results) {
    REQUIRE_FALSE(r.transcript_jsonl.empty());
  }
}

TEST_CASE("the llm planner path works against a scripted local service") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  const BenchTask* task = nullptr;
  for (const BenchTask& t : manifest.tasks) {
    if (t.id == "compound_08") task = &t;
  }
  REQUIRE(task != nullptr);

  std::vector<std::string> replies = make_oracle_replies(*task, false);
  std::mutex mu;
  size_t next = 0;
  httplib::Server server;
  server.Post("/v1/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                std::lock_guard lock(mu);
                std::string content =
                    next < replies.size() ? replies[next++] : "INFEASIBLE: out";
                nlohmann::json reply = {
                    {"choices",
                     {{{"finish_reason", "stop"},
                       {"message", {{"role", "assistant"},
                                    {"content", content}}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  ::setenv("CREWPLAN_TEST_KEY", "k", 1);

  PlannerSpec planner;
  planner.kind = PlannerSpec::Kind::Llm;
  BackendConfig cfg;
  cfg.endpoint =
      "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  cfg.model = "scripted";
  cfg.credential_env = "CREWPLAN_TEST_KEY";
  planner.backend = cfg;

  auto dir = fresh_temp_dir("llm-run");
  TaskRunResult result = run_task(*task, planner, dir / task->id);
  INFO(result.error);
  REQUIRE(result.metrics.has_value());
  REQUIRE(result.metrics->sr == 1);
  REQUIRE(fs::exists(dir / task->id / "transcript.jsonl"));
  fs::remove_all(dir);

  server.stop();
  worker.join();

  PlannerSpec misconfigured;
  misconfigured.kind = PlannerSpec::Kind::Llm;
  TaskRunResult bad = run_task(*task, misconfigured);
  REQUIRE_FALSE(bad.metrics.has_value());
  REQUIRE(bad.error.find("backend config") != std::string::npos);
}

TEST_CASE("the ablation sweep produces the five expected variants") {
  BenchmarkManifest manifest = load_dataset(dataset_dir());
  RunOptions options;
  options.jobs = 4;
  AblationOutcome outcome = run_ablation(manifest, options);
  REQUIRE(outcome.rows.size() == 5);
  std::vector<std::string> variants;
  for (const AblationRow& row : outcome.rows) variants.push_back(row.variant);
  REQUIRE(variants == std::vector<std::string>{"full", "no-comments",
                                               "no-summary", "no-both",
                                               "no-coalition"});
  for (const AblationRow& row : outcome.rows) {
    REQUIRE(row.runs == 36);
    REQUIRE(row.refusals == 0);
    REQUIRE(row.sr == 1.0);
  }
  REQUIRE(outcome.markdown.find("| no-coalition | 36 | 0 | 1.00 |") !=
          std::string::npos);
}
