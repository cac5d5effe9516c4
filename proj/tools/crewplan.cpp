// Command-line front end: plan, exec, eval, bench, ablate, validate.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crewplan/bench.hpp"

namespace fs = std::filesystem;
using namespace crewplan;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

struct PlannerFlags {
  std::string planner = "oracle";
  std::uint64_t seed = 0;
  std::string backend_config;
  bool no_comments = false;
  bool no_summary = false;
  bool no_coalition = false;
};

void add_planner_flags(CLI::App* cmd, PlannerFlags& flags) {
  cmd->add_option("--planner", flags.planner,
                  "oracle | random | llm | mock")
      ->check(CLI::IsMember({"oracle", "random", "llm", "mock"}));
  cmd->add_option("--seed", flags.seed, "seed for the random planner");
  cmd->add_option("--backend-config", flags.backend_config,
                  "key = value config file for the llm backend");
  cmd->add_flag("--no-comments", flags.no_comments,
                "strip line comments from prompt examples");
  cmd->add_flag("--no-summary", flags.no_summary,
                "strip summary blocks from prompt examples");
  cmd->add_flag("--no-coalition", flags.no_coalition,
                "skip the coalition stage");
}

PlannerSpec make_planner(const PlannerFlags& flags) {
  PlannerSpec spec;
  if (flags.planner == "oracle") {
    spec.kind = PlannerSpec::Kind::Oracle;
  } else if (flags.planner == "random") {
    spec.kind = PlannerSpec::Kind::Random;
  } else if (flags.planner == "llm") {
    spec.kind = PlannerSpec::Kind::Llm;
  } else {
    spec.kind = PlannerSpec::Kind::Mock;
  }
  spec.seed = flags.seed;
  spec.prompt_config.include_line_comments = !flags.no_comments;
  spec.prompt_config.include_block_summaries = !flags.no_summary;
  spec.prompt_config.skip_coalition = flags.no_coalition;
  if (!flags.backend_config.empty()) {
    spec.backend = load_backend_config(flags.backend_config);
  }
  return spec;
}

const BenchTask* find_task(const BenchmarkManifest& manifest,
                           const std::string& id) {
  for (const BenchTask& t : manifest.tasks) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::vector<RobotSpec> load_robots_file(const fs::path& path) {
  return detail::read_json_file(path).get<std::vector<RobotSpec>>();
}

int print_issues(const std::vector<ValidationIssue>& issues) {
  for (const ValidationIssue& i : issues) {
    std::cout << (i.severity == Severity::Error ? "error" : "warning") << " ["
              << i.location << "] " << i.message << "\n";
  }
  return has_errors(issues) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot task planning pipeline: decomposition, coalition "
               "formation, allocation and symbolic execution"};
  app.require_subcommand(1);

  // --- plan ---------------------------------------------------------------
  auto* plan_cmd = app.add_subcommand(
      "plan", "produce a plan for one task (instruction -> plan text)");
  PlannerFlags plan_flags;
  std::string plan_dataset, plan_task, plan_task_file, plan_instruction,
      plan_floorplan, plan_robots, plan_out;
  plan_cmd->add_option("--dataset", plan_dataset, "dataset root directory");
  plan_cmd->add_option("--task", plan_task, "task id within the dataset");
  plan_cmd->add_option("--task-file", plan_task_file,
                       "task JSON path relative to the dataset root");
  plan_cmd->add_option("--instruction", plan_instruction,
                       "free-form instruction (llm planner only)");
  plan_cmd->add_option("--floorplan", plan_floorplan,
                       "floor plan JSON (with --instruction)");
  plan_cmd->add_option("--robots", plan_robots,
                       "robot list JSON (with --instruction)");
  plan_cmd->add_option("--out", plan_out, "directory for run artifacts");
  add_planner_flags(plan_cmd, plan_flags);

  // --- exec ---------------------------------------------------------------
  auto* exec_cmd =
      app.add_subcommand("exec", "execute a plan against a floor plan");
  std::string exec_plan, exec_floorplan, exec_robots, exec_out;
  exec_cmd->add_option("--plan", exec_plan, "plan DSL file")->required();
  exec_cmd->add_option("--floorplan", exec_floorplan, "floor plan JSON")
      ->required();
  exec_cmd->add_option("--robots", exec_robots, "robot list JSON")->required();
  exec_cmd->add_option("--out", exec_out, "trace output file (default stdout)");

  // --- eval ---------------------------------------------------------------
  auto* eval_cmd =
      app.add_subcommand("eval", "score a trace against ground truth");
  std::string eval_trace, eval_gt;
  eval_cmd->add_option("--trace", eval_trace, "trace JSON-lines file")
      ->required();
  eval_cmd->add_option("--ground-truth", eval_gt, "ground truth JSON file")
      ->required();

  // --- bench --------------------------------------------------------------
  auto* bench_cmd =
      app.add_subcommand("bench", "run the benchmark and report metrics");
  PlannerFlags bench_flags;
  std::string bench_dataset, bench_out;
  int bench_jobs = 1;
  std::vector<std::string> bench_tasks;
  bench_cmd->add_option("--dataset", bench_dataset, "dataset root directory")
      ->required();
  bench_cmd->add_option("--out", bench_out,
                        "run directory (default runs/<timestamp>-<planner>)");
  bench_cmd->add_option("--jobs", bench_jobs, "parallel task workers");
  bench_cmd->add_option("--task", bench_tasks, "restrict to these task ids");
  add_planner_flags(bench_cmd, bench_flags);

  // --- ablate -------------------------------------------------------------
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "prompt ablation sweep with the mock backend");
  std::string ablate_dataset, ablate_out;
  int ablate_jobs = 1;
  ablate_cmd->add_option("--dataset", ablate_dataset, "dataset root directory")
      ->required();
  ablate_cmd->add_option("--out", ablate_out, "output directory");
  ablate_cmd->add_option("--jobs", ablate_jobs, "parallel task workers");

  // --- validate -----------------------------------------------------------
  auto* validate_cmd =
      app.add_subcommand("validate", "check dataset self-consistency");
  std::string validate_dataset_dir;
  validate_cmd->add_option("--dataset", validate_dataset_dir,
                           "dataset root directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      PlannerSpec planner = make_planner(plan_flags);
      TaskRunResult result;
      if (!plan_task.empty() || !plan_task_file.empty()) {
        if (plan_dataset.empty()) {
          std::cerr << "--task/--task-file need --dataset\n";
          return 1;
        }
        BenchTask task;
        if (!plan_task_file.empty()) {
          task = load_task_file(plan_dataset, plan_task_file);
        } else {
          BenchmarkManifest manifest = load_dataset(plan_dataset);
          const BenchTask* found = find_task(manifest, plan_task);
          if (!found) {
            std::cerr << "no task '" << plan_task << "' in " << plan_dataset
                      << "\n";
            return 1;
          }
          task = *found;
        }
        result = run_task(task, planner, plan_out);
      } else {
        if (plan_instruction.empty() || plan_floorplan.empty() ||
            plan_robots.empty()) {
          std::cerr << "plan needs either --task/--dataset or --instruction "
                       "with --floorplan and --robots\n";
          return 1;
        }
        if (planner.kind != PlannerSpec::Kind::Llm) {
          std::cerr << "--instruction mode requires --planner llm\n";
          return 1;
        }
        BenchTask adhoc;
        adhoc.id = "adhoc";
        adhoc.instruction = plan_instruction;
        adhoc.world = load_floorplan(detail::read_json_file(plan_floorplan));
        adhoc.robots = load_robots_file(plan_robots);
        adhoc.ground_truth.goal_conditions = {};  // not scored
        std::unique_ptr<ChatBackend> backend;
        if (!planner.backend) {
          std::cerr << "--planner llm needs --backend-config\n";
          return 1;
        }
        HttpChatBackend http(*planner.backend);
        PipelineResult pipeline =
            run_pipeline(adhoc.instruction, adhoc.world, adhoc.robots,
                         planner.prompt_config, http);
        if (pipeline.refusal) {
          std::cout << "INFEASIBLE: " << *pipeline.refusal << "\n";
          return 3;
        }
        std::cout << serialize(*pipeline.plan);
        return 0;
      }
      if (!result.error.empty()) {
        std::cerr << "error: " << result.error << "\n";
        return 1;
      }
      if (result.refused()) {
        std::cout << "INFEASIBLE: " << result.refusal_reason << "\n";
        return 3;
      }
      std::cout << result.plan_text;
      return 0;
    }

    if (*exec_cmd) {
      PlanAst ast = parse(read_file(exec_plan));
      WorldState world = load_floorplan(detail::read_json_file(exec_floorplan));
      std::vector<RobotSpec> robots = load_robots_file(exec_robots);
      auto issues = validate(ast, robots, world);
      for (const ValidationIssue& i : issues) {
        std::cerr << (i.severity == Severity::Error ? "error" : "warning")
                  << " [" << i.location << "] " << i.message << "\n";
      }
      ExecutionTrace trace = execute(ast, world, robots);
      std::string jsonl = write_trace_jsonl(trace);
      if (exec_out.empty()) {
        std::cout << jsonl;
      } else {
        detail::write_file(exec_out, jsonl);
      }
      return 0;
    }

    if (*eval_cmd) {
      ExecutionTrace trace = read_trace_jsonl(read_file(eval_trace));
      GroundTruth gt = detail::read_json_file(eval_gt).get<GroundTruth>();
      MetricsRecord rec = compute_metrics(trace, gt);
      std::cout << nlohmann::json(rec).dump(2) << "\n";
      return 0;
    }

    if (*bench_cmd) {
      PlannerSpec planner = make_planner(bench_flags);
      BenchmarkManifest manifest = load_dataset(bench_dataset);
      if (manifest.empty_warning) {
        std::cerr << "warning: no manifest.json under " << bench_dataset
                  << ", empty benchmark\n";
      }
      RunOptions options;
      options.jobs = bench_jobs;
      options.task_filter = bench_tasks;
      options.out_dir = bench_out.empty()
                            ? fs::path("runs") /
                                  (timestamp_now() + "-" + planner.label())
                            : fs::path(bench_out);
      BenchOutcome outcome = run_benchmark(manifest, planner, options);
      std::cout << outcome.report_markdown;
      std::cout << "\nartifacts: " << options.out_dir.string() << "\n";
      return 0;
    }

    if (*ablate_cmd) {
      BenchmarkManifest manifest = load_dataset(ablate_dataset);
      RunOptions options;
      options.jobs = ablate_jobs;
      if (!ablate_out.empty()) options.out_dir = ablate_out;
      AblationOutcome outcome = run_ablation(manifest, options);
      std::cout << outcome.markdown;
      return 0;
    }

    if (*validate_cmd) {
      BenchmarkManifest manifest = load_dataset(validate_dataset_dir);
      if (manifest.empty_warning) {
        std::cout << "warning: no manifest.json, empty dataset\n";
        return 0;
      }
      std::cout << "loaded " << manifest.tasks.size() << " tasks";
      for (Category c : kAllCategories) {
        std::cout << " " << to_string(c) << "=" << manifest.count(c);
      }
      std::cout << "\n";
      auto issues = validate_dataset(manifest);
      int rc = print_issues(issues);
      std::cout << (rc == 0 ? "dataset OK\n" : "dataset has errors\n");
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
