#ifndef CREWPLAN_BENCH_HPP
#define CREWPLAN_BENCH_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "crewplan/backend_http.hpp"
#include "crewplan/coalition.hpp"
#include "crewplan/executor.hpp"
#include "crewplan/json_io.hpp"
#include "crewplan/metrics.hpp"
#include "crewplan/pipeline.hpp"

namespace crewplan {

namespace fs = std::filesystem;

struct BenchTask {
  std::string id;
  Category category = Category::Elemental;
  std::string instruction;
  std::string floorplan_rel;
  WorldState world;
  std::vector<RobotSpec> robots;
  GroundTruth ground_truth;
  std::optional<Decomposition> gt_decomposition;
  std::string source_file;
};

struct BenchmarkManifest {
  std::vector<BenchTask> tasks;
  std::map<Category, int> declared_counts;
  fs::path root;
  bool empty_warning = false;

  int count(Category c) const {
    int n = 0;
    for (const BenchTask& t : tasks) n += t.category == c ? 1 : 0;
    return n;
  }
};

namespace detail {

inline nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
}

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Stable per-task seed derivation, independent of platform hashing.
inline std::uint64_t task_seed(std::uint64_t base, const std::string& task_id) {
  std::uint64_t h = fnv1a(task_id);
  return base ^ (h + 0x9e3779b97f4a7c15ull + (base << 6) + (base >> 2));
}

}  // namespace detail

inline BenchTask load_task_file(const fs::path& dataset_root,
                                const std::string& rel_path) {
  const fs::path file = dataset_root / rel_path;
  nlohmann::json j = detail::read_json_file(file);
  BenchTask task;
  task.source_file = file.string();
  try {
    task.id = j.at("id").get<std::string>();
    std::string cat = j.at("category").get<std::string>();
    auto parsed = category_from_string(cat);
    if (!parsed) throw DatasetError("unknown category '" + cat + "'");
    task.category = *parsed;
    task.instruction = j.at("instruction").get<std::string>();
    task.floorplan_rel = j.at("floorplan").get<std::string>();
    task.robots = j.at("robots").get<std::vector<RobotSpec>>();
    task.ground_truth = j.at("ground_truth").get<GroundTruth>();
    if (j.contains("gt_decomposition")) {
      task.gt_decomposition = j.at("gt_decomposition").get<Decomposition>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(file.string() + ": " + e.what());
  } catch (const DatasetError& e) {
    throw DatasetError(file.string() + ": " + e.what());
  }

  std::set<RobotId> ids;
  for (const RobotSpec& r : task.robots) {
    if (!ids.insert(r.id).second) {
      throw DatasetError(file.string() + ": duplicate robot id " +
                         std::to_string(r.id));
    }
  }
  if (task.robots.empty()) {
    throw DatasetError(file.string() + ": task needs at least one robot");
  }

  const fs::path plan_file = dataset_root / task.floorplan_rel;
  try {
    task.world = load_floorplan(detail::read_json_file(plan_file));
  } catch (const FloorplanError& e) {
    throw DatasetError(plan_file.string() + ": " + e.what());
  }
  for (const GoalCondition& g : task.ground_truth.goal_conditions) {
    bool region_goal = g.attribute == "patrolled";
    bool found = region_goal ? task.world.regions.count(g.object_id) > 0
                             : task.world.objects.count(g.object_id) > 0;
    if (!found) {
      throw DatasetError(file.string() + ": goal references missing " +
                         (region_goal ? "region '" : "object '") + g.object_id +
                         "'");
    }
  }
  return task;
}

inline BenchmarkManifest load_dataset(const fs::path& root) {
  BenchmarkManifest manifest;
  manifest.root = root;
  const fs::path manifest_file = root / "manifest.json";
  if (!fs::exists(manifest_file)) {
    manifest.empty_warning = true;
    return manifest;
  }
  nlohmann::json j = detail::read_json_file(manifest_file);
  if (j.contains("counts")) {
    for (auto& [key, val] : j.at("counts").items()) {
      auto cat = category_from_string(key);
      if (!cat) throw DatasetError("manifest counts: unknown category " + key);
      manifest.declared_counts[*cat] = val.get<int>();
    }
  }
  std::set<std::string> seen;
  for (const nlohmann::json& entry : j.at("tasks")) {
    BenchTask task = load_task_file(root, entry.get<std::string>());
    if (!seen.insert(task.id).second) {
      throw DatasetError("duplicate task id " + task.id);
    }
    manifest.tasks.push_back(std::move(task));
  }
  return manifest;
}

// ---------------------------------------------------------------------------
// Dataset self-consistency validation
// ---------------------------------------------------------------------------

namespace detail {

inline bool homogeneous_skills(std::span<const RobotSpec> robots) {
  for (size_t i = 1; i < robots.size(); ++i) {
    if (robots[i].skill_set() != robots[0].skill_set()) return false;
  }
  return true;
}

inline void validate_category(const BenchTask& task,
                              std::vector<ValidationIssue>& issues) {
  auto err = [&](std::string msg) {
    issues.push_back({Severity::Error, task.id, std::move(msg)});
  };
  const auto& robots = task.robots;
  switch (task.category) {
    case Category::Elemental:
      if (robots.size() != 1) {
        err("elemental task must have exactly one robot, has " +
            std::to_string(robots.size()));
      }
      break;
    case Category::Simple: {
      if (robots.size() < 2) err("simple task needs at least two robots");
      if (!homogeneous_skills(robots)) {
        err("simple task robots must share one skill set");
      }
      if (task.gt_decomposition) {
        std::set<int> orders;
        for (const SubTask& st : task.gt_decomposition->subtasks) {
          orders.insert(st.temporal_order);
        }
        size_t k = task.gt_decomposition->subtasks.size();
        bool purely_parallel = orders.size() == 1;
        bool purely_sequential = orders.size() == k;
        if (k > 1 && !purely_parallel && !purely_sequential) {
          err("simple task must decompose purely sequentially or purely in "
              "parallel");
        }
      }
      break;
    }
    case Category::Compound: {
      if (robots.size() < 2 || homogeneous_skills(robots)) {
        err("compound task needs heterogeneous robots");
      }
      if (task.gt_decomposition) {
        for (const SubTask& st : task.gt_decomposition->subtasks) {
          CoalitionDecision d = solve_subtask(st, robots);
          if (d.kind != CoalitionDecision::Kind::SingleRobot) {
            err("compound sub-task " + st.id +
                " is not singly coverable (got " +
                std::string(to_string(d.kind)) + ")");
          }
        }
      }
      break;
    }
    case Category::Complex: {
      if (task.gt_decomposition) {
        bool has_team_subtask = false;
        for (const SubTask& st : task.gt_decomposition->subtasks) {
          CoalitionDecision d = solve_subtask(st, robots);
          if (d.kind == CoalitionDecision::Kind::TeamUnion ||
              d.kind == CoalitionDecision::Kind::TeamCapacity) {
            has_team_subtask = true;
          }
        }
        if (!has_team_subtask) {
          err("complex task needs at least one sub-task no single robot can "
              "perform");
        }
      }
      break;
    }
  }
}

}  // namespace detail

// Checks category invariants and that the dataset is self-consistent: the
// oracle pipeline must reach every goal with a clean trace and the ground
// truth phase count.
inline std::vector<ValidationIssue> validate_dataset(
    const BenchmarkManifest& manifest) {
  std::vector<ValidationIssue> issues;
  auto err = [&](const std::string& where, std::string msg) {
    issues.push_back({Severity::Error, where, std::move(msg)});
  };
  auto warn = [&](const std::string& where, std::string msg) {
    issues.push_back({Severity::Warning, where, std::move(msg)});
  };

  for (const auto& [cat, declared] : manifest.declared_counts) {
    int actual = manifest.count(cat);
    if (actual != declared) {
      err("manifest", "declared " + std::to_string(declared) + " " +
                          std::string(to_string(cat)) + " tasks, found " +
                          std::to_string(actual));
    }
  }

  for (const BenchTask& task : manifest.tasks) {
    detail::validate_category(task, issues);
    if (task.robots.size() > 4) {
      warn(task.id, "benchmark tasks use 1 to 4 robots, this one has " +
                        std::to_string(task.robots.size()));
    }
    if (!task.gt_decomposition) {
      warn(task.id, "no gt_decomposition; self-consistency not checkable");
      continue;
    }
    const Decomposition& decomp = *task.gt_decomposition;
    if (static_cast<int>(decomp.subtasks.size()) !=
        task.ground_truth.subtask_count) {
      err(task.id, "subtask_count " +
                       std::to_string(task.ground_truth.subtask_count) +
                       " does not match the decomposition (" +
                       std::to_string(decomp.subtasks.size()) + ")");
      continue;
    }
    CoalitionPolicy policy = form_policy(decomp, task.robots);
    bool infeasible = false;
    for (const CoalitionDecision& d : policy.decisions) {
      if (!d.feasible()) {
        err(task.id, "oracle cannot solve sub-task " + d.subtask_id + ": " +
                         d.rationale);
        infeasible = true;
      }
    }
    if (infeasible) continue;
    PlanAst plan = allocate(decomp, policy);
    for (const ValidationIssue& issue : validate(plan, task.robots, task.world)) {
      if (issue.severity == Severity::Error) {
        err(task.id, "oracle plan invalid at " + issue.location + ": " +
                         issue.message);
      }
    }
    ExecutionTrace trace = execute(plan, task.world, task.robots);
    for (const TraceStep& step : trace.steps) {
      if (!step.success) {
        err(task.id, "oracle action " + std::string(to_string(step.action.skill)) +
                         "(" + (step.action.args.empty() ? "" : step.action.args[0]) +
                         ") fails at tick " + std::to_string(step.tick) + ": " +
                         step.reason);
      }
    }
    for (const GoalCondition& g : task.ground_truth.goal_conditions) {
      if (!goal_met(trace.final_world, g)) {
        err(task.id, "oracle run leaves goal unmet: " + g.object_id + "." +
                         g.attribute);
      }
    }
    int observed = static_cast<int>(trace.phase_sequence.size());
    if (observed != task.ground_truth.gt_phase_count) {
      err(task.id, "gt_phase_count " +
                       std::to_string(task.ground_truth.gt_phase_count) +
                       " does not match the oracle plan (" +
                       std::to_string(observed) + " phases)");
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Planners and task runs
// ---------------------------------------------------------------------------

struct PlannerSpec {
  enum class Kind { Oracle, Random, Llm, Mock };
  Kind kind = Kind::Oracle;
  std::uint64_t seed = 0;                 // random
  PromptConfig prompt_config;             // llm / mock
  std::optional<BackendConfig> backend;   // llm

  std::string label() const {
    switch (kind) {
      case Kind::Oracle: return "oracle";
      case Kind::Random: return "random-seed" + std::to_string(seed);
      case Kind::Llm: return "llm";
      case Kind::Mock: return "mock";
    }
    return "?";
  }
};

struct TaskRunResult {
  std::string task_id;
  Category category = Category::Elemental;
  std::optional<MetricsRecord> metrics;
  std::string refusal_reason;  // set when the planner refused
  std::string error;           // set when a stage failed outright
  std::string plan_text;
  std::string policy_json;
  std::string trace_jsonl;
  std::string transcript_jsonl;
  std::vector<ValidationIssue> plan_issues;

  bool refused() const { return !metrics && !refusal_reason.empty(); }
};

// Scripted replies that mimic a model reproducing the oracle's answers; used
// by the mock planner and the ablation sweep.
inline std::vector<std::string> make_oracle_replies(const BenchTask& task,
                                                    bool skip_coalition) {
  if (!task.gt_decomposition) {
    throw DatasetError("task " + task.id + " has no gt_decomposition");
  }
  const Decomposition& decomp = *task.gt_decomposition;
  CoalitionPolicy policy = form_policy(decomp, task.robots);
  std::vector<std::string> replies;
  replies.push_back("Breaking the instruction down into sub-tasks.\n\n" +
                    serialize_decomposition(decomp) + "\nDone.\n");
  const CoalitionDecision* stuck = nullptr;
  for (const CoalitionDecision& d : policy.decisions) {
    if (!d.feasible()) stuck = &d;
  }
  if (!skip_coalition) {
    if (stuck) {
      replies.push_back("INFEASIBLE: " + stuck->rationale + "\n");
      return replies;
    }
    replies.push_back("Coalition policy for the sub-tasks:\n\n" +
                      nlohmann::json(policy).dump(2) + "\n");
  }
  if (stuck) {
    replies.push_back("INFEASIBLE: " + stuck->rationale + "\n");
    return replies;
  }
  replies.push_back("Allocated plan:\n\n" + serialize(allocate(decomp, policy)) +
                    "\nEnd of plan.\n");
  return replies;
}

namespace detail {

inline std::string transcript_line(const TranscriptEntry& e) {
  nlohmann::json j = {{"stage", to_string(e.stage)},
                      {"prompt", e.prompt},
                      {"reply", e.reply}};
  return j.dump() + "\n";
}

// Executes a finished plan and scores it. Static validation issues are
// recorded but do not block execution: the metrics quantify the damage.
inline void score_plan(const BenchTask& task, const PlanAst& plan,
                       TaskRunResult& result) {
  result.plan_text = serialize(plan);
  result.plan_issues = validate(plan, task.robots, task.world);
  ExecutionTrace trace = execute(plan, task.world, task.robots);
  result.trace_jsonl = write_trace_jsonl(trace);
  result.metrics = compute_metrics(trace, task.ground_truth);
}

}  // namespace detail

// Runs one task with the given planner. If `run_dir` is non-empty, artifacts
// are written there: plan.dsl, policy.json, trace.jsonl, metrics.json,
// transcript.jsonl (and refusal.txt / error.txt when applicable).
inline TaskRunResult run_task(const BenchTask& task, const PlannerSpec& planner,
                              const fs::path& run_dir = {}) {
  TaskRunResult result;
  result.task_id = task.id;
  result.category = task.category;

  try {
    switch (planner.kind) {
      case PlannerSpec::Kind::Oracle: {
        if (!task.gt_decomposition) {
          throw DatasetError("task " + task.id + " has no gt_decomposition");
        }
        CoalitionPolicy policy = form_policy(*task.gt_decomposition, task.robots);
        result.policy_json = nlohmann::json(policy).dump(2) + "\n";
        const CoalitionDecision* stuck = nullptr;
        for (const CoalitionDecision& d : policy.decisions) {
          if (!d.feasible() && !stuck) stuck = &d;
        }
        if (stuck) {
          result.refusal_reason = stuck->rationale;
          break;
        }
        detail::score_plan(task, allocate(*task.gt_decomposition, policy),
                           result);
        break;
      }
      case PlannerSpec::Kind::Random: {
        if (!task.gt_decomposition) {
          throw DatasetError("task " + task.id + " has no gt_decomposition");
        }
        PlanAst plan =
            random_allocate(*task.gt_decomposition, task.robots,
                            detail::task_seed(planner.seed, task.id));
        detail::score_plan(task, plan, result);
        break;
      }
      case PlannerSpec::Kind::Llm:
      case PlannerSpec::Kind::Mock: {
        std::unique_ptr<ChatBackend> backend;
        if (planner.kind == PlannerSpec::Kind::Llm) {
          if (!planner.backend) {
            throw ConfigError("llm planner needs a backend config");
          }
          backend = std::make_unique<HttpChatBackend>(*planner.backend);
        } else {
          backend = std::make_unique<MockBackend>(make_oracle_replies(
              task, planner.prompt_config.skip_coalition));
        }
        TranscriptSink sink = [&result](const TranscriptEntry& e) {
          result.transcript_jsonl += detail::transcript_line(e);
        };
        PipelineResult pipeline =
            run_pipeline(task.instruction, task.world, task.robots,
                         planner.prompt_config, *backend, sink);
        if (pipeline.policy) {
          result.policy_json = nlohmann::json(*pipeline.policy).dump(2) + "\n";
        }
        if (pipeline.refusal) {
          result.refusal_reason = *pipeline.refusal;
          break;
        }
        detail::score_plan(task, *pipeline.plan, result);
        break;
      }
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }

  if (!run_dir.empty()) {
    fs::create_directories(run_dir);
    if (!result.plan_text.empty()) {
      detail::write_file(run_dir / "plan.dsl", result.plan_text);
    }
    if (!result.policy_json.empty()) {
      detail::write_file(run_dir / "policy.json", result.policy_json);
    }
    if (!result.trace_jsonl.empty()) {
      detail::write_file(run_dir / "trace.jsonl", result.trace_jsonl);
    }
    if (!result.transcript_jsonl.empty()) {
      detail::write_file(run_dir / "transcript.jsonl", result.transcript_jsonl);
    }
    if (result.metrics) {
      detail::write_file(run_dir / "metrics.json",
                         nlohmann::json(*result.metrics).dump(2) + "\n");
    }
    if (!result.refusal_reason.empty()) {
      detail::write_file(run_dir / "refusal.txt", result.refusal_reason + "\n");
    }
    if (!result.error.empty()) {
      detail::write_file(run_dir / "error.txt", result.error + "\n");
    }
    if (!result.plan_issues.empty()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const ValidationIssue& i : result.plan_issues) {
        arr.push_back({{"severity",
                        i.severity == Severity::Error ? "error" : "warning"},
                       {"location", i.location},
                       {"message", i.message}});
      }
      detail::write_file(run_dir / "issues.json", arr.dump(2) + "\n");
    }
  }
  return result;
}

struct RunOptions {
  int jobs = 1;
  fs::path out_dir;  // empty: no artifacts written
  std::vector<std::string> task_filter;
};

struct BenchOutcome {
  BenchReport report;
  std::vector<TaskRunResult> results;
  std::string report_markdown;
  std::string report_csv;
};

// Runs every (filtered) task, aggregates per category, and writes the report
// plus one artifact directory per task. Bit-reproducible for the oracle,
// random and mock planners.
inline BenchOutcome run_benchmark(const BenchmarkManifest& manifest,
                                  const PlannerSpec& planner,
                                  const RunOptions& options = {}) {
  std::vector<const BenchTask*> tasks;
  for (const BenchTask& t : manifest.tasks) {
    if (!options.task_filter.empty() &&
        std::find(options.task_filter.begin(), options.task_filter.end(),
                  t.id) == options.task_filter.end()) {
      continue;
    }
    tasks.push_back(&t);
  }

  std::vector<TaskRunResult> results(tasks.size());
  const int jobs = std::max(1, options.jobs);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < tasks.size();
         i = next.fetch_add(1)) {
      fs::path dir = options.out_dir.empty() ? fs::path{}
                                             : options.out_dir / tasks[i]->id;
      results[i] = run_task(*tasks[i], planner, dir);
    }
  };
  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min<int>(jobs, static_cast<int>(tasks.size()));
         ++i) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<TaggedRecord> records;
  records.reserve(results.size());
  for (const TaskRunResult& r : results) {
    TaggedRecord rec;
    rec.category = r.category;
    rec.metrics = r.metrics;
    rec.refusal_reason = r.refusal_reason.empty() ? r.error : r.refusal_reason;
    records.push_back(std::move(rec));
  }

  BenchOutcome outcome;
  outcome.report = aggregate(records);
  outcome.results = std::move(results);
  outcome.report_markdown =
      render_markdown(outcome.report, "Benchmark report (" + planner.label() + ")");
  outcome.report_csv = render_csv(outcome.report);

  if (!options.out_dir.empty()) {
    detail::write_file(options.out_dir / "report.md", outcome.report_markdown);
    detail::write_file(options.out_dir / "report.csv", outcome.report_csv);
    std::string records_jsonl;
    for (const TaskRunResult& r : outcome.results) {
      nlohmann::json j = {{"task", r.task_id},
                          {"category", to_string(r.category)}};
      if (r.metrics) {
        j["metrics"] = *r.metrics;
      } else if (!r.refusal_reason.empty()) {
        j["refusal"] = r.refusal_reason;
      } else {
        j["error"] = r.error;
      }
      records_jsonl += j.dump() + "\n";
    }
    detail::write_file(options.out_dir / "records.jsonl", records_jsonl);
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Ablation sweep (mock backend): full, no-comments, no-summary, no-both,
// no-coalition.
// ---------------------------------------------------------------------------

struct AblationRow {
  std::string variant;
  int runs = 0;
  int refusals = 0;
  double sr = 0, tcr = 0, gcr = 0, ru = 0, exe = 0;
};

struct AblationOutcome {
  std::vector<AblationRow> rows;
  std::string markdown;
  std::string csv;
};

inline std::vector<std::pair<std::string, PromptConfig>> ablation_variants() {
  PromptConfig full;
  PromptConfig no_comments;
  no_comments.include_line_comments = false;
  PromptConfig no_summary;
  no_summary.include_block_summaries = false;
  PromptConfig no_both;
  no_both.include_line_comments = false;
  no_both.include_block_summaries = false;
  PromptConfig no_coalition;
  no_coalition.skip_coalition = true;
  return {{"full", full},
          {"no-comments", no_comments},
          {"no-summary", no_summary},
          {"no-both", no_both},
          {"no-coalition", no_coalition}};
}

inline AblationOutcome run_ablation(const BenchmarkManifest& manifest,
                                    const RunOptions& options = {}) {
  AblationOutcome outcome;
  outcome.markdown = "# Ablation report\n\n";
  outcome.markdown += "| Variant | Tasks | Refusals | SR | TCR | GCR | RU | Exe |\n";
  outcome.markdown += "|---|---|---|---|---|---|---|---|\n";
  outcome.csv = "variant,tasks,refusals,sr,tcr,gcr,ru,exe\n";
  for (const auto& [label, config] : ablation_variants()) {
    PlannerSpec planner;
    planner.kind = PlannerSpec::Kind::Mock;
    planner.prompt_config = config;
    RunOptions sub = options;
    if (!options.out_dir.empty()) sub.out_dir = options.out_dir / label;
    BenchOutcome bench = run_benchmark(manifest, planner, sub);
    AblationRow row;
    row.variant = label;
    for (const TaskRunResult& r : bench.results) {
      if (!r.metrics) {
        ++row.refusals;
        continue;
      }
      ++row.runs;
      row.sr += r.metrics->sr;
      row.tcr += r.metrics->tcr;
      row.gcr += r.metrics->gcr.value();
      row.ru += r.metrics->ru.value();
      row.exe += r.metrics->exe.value();
    }
    if (row.runs > 0) {
      row.sr /= row.runs;
      row.tcr /= row.runs;
      row.gcr /= row.runs;
      row.ru /= row.runs;
      row.exe /= row.runs;
    }
    outcome.markdown += "| " + row.variant + " | " + std::to_string(row.runs) +
                        " | " + std::to_string(row.refusals) + " | " +
                        format_metric(row.sr) + " | " + format_metric(row.tcr) +
                        " | " + format_metric(row.gcr) + " | " +
                        format_metric(row.ru) + " | " + format_metric(row.exe) +
                        " |\n";
    outcome.csv += row.variant + "," + std::to_string(row.runs) + "," +
                   std::to_string(row.refusals) + "," + format_metric(row.sr) +
                   "," + format_metric(row.tcr) + "," + format_metric(row.gcr) +
                   "," + format_metric(row.ru) + "," + format_metric(row.exe) +
                   "\n";
    outcome.rows.push_back(std::move(row));
  }
  if (!options.out_dir.empty()) {
    detail::write_file(options.out_dir / "ablation.md", outcome.markdown);
    detail::write_file(options.out_dir / "ablation.csv", outcome.csv);
  }
  return outcome;
}

}  // namespace crewplan

#endif  // CREWPLAN_BENCH_HPP
