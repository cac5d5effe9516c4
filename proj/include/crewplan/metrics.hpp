#ifndef CREWPLAN_METRICS_HPP
#define CREWPLAN_METRICS_HPP

#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "crewplan/core.hpp"
#include "crewplan/executor.hpp"
#include "crewplan/world.hpp"

namespace crewplan {

struct MetricsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground truth for one benchmark task: the goal conditions that must hold
// after execution, the reference phase (transition) count and the sub-task
// count K.
struct GroundTruth {
  std::vector<GoalCondition> goal_conditions;
  int gt_phase_count = 1;
  int subtask_count = 1;
};

// Exact ratio of small non-negative integers; avoids float drift in the
// GCR=1 / RU=1 threshold checks.
struct Fraction {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_one() const { return num == den; }
  bool operator==(const Fraction&) const = default;
};

inline Fraction make_fraction(long long num, long long den) {
  if (den <= 0) throw MetricsError("fraction denominator must be positive");
  long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{num, den};
}

// Exe: fraction of plan actions that executed successfully. Undefined for a
// zero-action plan.
inline Fraction exe_fraction(const ExecutionTrace& trace) {
  if (trace.steps.empty()) {
    throw MetricsError("Exe is undefined for a zero-action plan");
  }
  return make_fraction(trace.actions_succeeded(), trace.actions_total());
}

inline double exe(const ExecutionTrace& trace) { return exe_fraction(trace).value(); }

// Evaluates one goal condition against the final world.
inline bool goal_met(const WorldState& world, const GoalCondition& goal) {
  if (goal.attribute == "patrolled") {
    auto it = world.regions.find(goal.object_id);
    if (it == world.regions.end()) {
      throw DatasetError("goal references unknown region " + goal.object_id);
    }
    return it->second.patrolled == std::get<bool>(goal.expected);
  }
  auto it = world.objects.find(goal.object_id);
  if (it == world.objects.end()) {
    throw DatasetError("goal references unknown object " + goal.object_id);
  }
  if (goal.attribute == "parent_receptacle") {
    const auto& parent = it->second.parent_receptacle;
    return parent && *parent == std::get<std::string>(goal.expected);
  }
  auto attr = it->second.attributes.find(goal.attribute);
  if (attr == it->second.attributes.end()) {
    throw DatasetError("unknown goal attribute " + goal.attribute);
  }
  return attr->second == std::get<bool>(goal.expected);
}

// GCR = |goals met| / |goals|.
inline Fraction gcr_fraction(const WorldState& final_world,
                             std::span<const GoalCondition> goals) {
  if (goals.empty()) throw DatasetError("GCR needs at least one goal condition");
  long long met = 0;
  for (const GoalCondition& g : goals) met += goal_met(final_world, g) ? 1 : 0;
  return make_fraction(met, static_cast<long long>(goals.size()));
}

inline double gcr(const WorldState& final_world,
                  std::span<const GoalCondition> goals) {
  return gcr_fraction(final_world, goals).value();
}

// RU: 1 when the observed phase count does not exceed the reference, 0 once
// it reaches the sub-task count (fully sequential), linear in between.
inline Fraction ru_fraction(int observed_phases, const GroundTruth& gt) {
  if (observed_phases < 1) throw MetricsError("RU needs at least one phase");
  const int g = gt.gt_phase_count;
  const int k = gt.subtask_count;
  if (k < g) {
    throw DatasetError("ground truth phase count exceeds sub-task count");
  }
  if (observed_phases <= g) return Fraction{1, 1};
  if (observed_phases >= k) return Fraction{0, 1};
  return make_fraction(k - observed_phases, k - g);
}

inline double ru(int observed_phases, const GroundTruth& gt) {
  return ru_fraction(observed_phases, gt).value();
}

// TCR is 1 iff GCR is exactly 1.
inline int tcr(double gcr_value) { return gcr_value == 1.0 ? 1 : 0; }

// SR is 1 iff both GCR and RU are exactly 1.
inline int sr(double gcr_value, double ru_value) {
  return gcr_value == 1.0 && ru_value == 1.0 ? 1 : 0;
}

struct MetricsRecord {
  int sr = 0;
  int tcr = 0;
  Fraction gcr{0, 1};
  Fraction ru{0, 1};
  Fraction exe{0, 1};
  // Raw counts the ratios derive from.
  int actions_total = 0;
  int actions_succeeded = 0;
  int phases_observed = 0;
  int goals_total = 0;
  int goals_met = 0;

  bool operator==(const MetricsRecord&) const = default;
};

inline MetricsRecord compute_metrics(const ExecutionTrace& trace,
                                     const GroundTruth& gt) {
  MetricsRecord rec;
  rec.exe = exe_fraction(trace);
  rec.actions_total = trace.actions_total();
  rec.actions_succeeded = trace.actions_succeeded();
  rec.phases_observed = static_cast<int>(trace.phase_sequence.size());
  rec.goals_total = static_cast<int>(gt.goal_conditions.size());
  for (const GoalCondition& g : gt.goal_conditions) {
    rec.goals_met += goal_met(trace.final_world, g) ? 1 : 0;
  }
  rec.gcr = make_fraction(rec.goals_met, rec.goals_total);
  rec.ru = ru_fraction(rec.phases_observed, gt);
  rec.tcr = tcr(rec.gcr.value());
  rec.sr = sr(rec.gcr.value(), rec.ru.value());
  return rec;
}

// ---------------------------------------------------------------------------
// Aggregation across a benchmark run
// ---------------------------------------------------------------------------

enum class Category { Elemental, Simple, Compound, Complex };

inline constexpr std::array<Category, 4> kAllCategories = {
    Category::Elemental, Category::Simple, Category::Compound,
    Category::Complex};

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::Elemental: return "elemental";
    case Category::Simple: return "simple";
    case Category::Compound: return "compound";
    case Category::Complex: return "complex";
  }
  return "?";
}

inline std::optional<Category> category_from_string(std::string_view s) {
  for (Category c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

// One benchmark run outcome: either a metrics record or a refusal.
struct TaggedRecord {
  Category category{};
  std::optional<MetricsRecord> metrics;  // nullopt = refusal
  std::string refusal_reason;
};

struct CategoryRow {
  Category category{};
  int runs = 0;      // scored runs (refusals excluded)
  int refusals = 0;
  double sr = 0, tcr = 0, gcr = 0, ru = 0, exe = 0;
};

struct BenchReport {
  std::vector<CategoryRow> rows;            // fixed category order
  std::vector<Category> empty_categories;   // omitted rows
};

inline BenchReport aggregate(std::span<const TaggedRecord> records) {
  BenchReport report;
  for (Category cat : kAllCategories) {
    CategoryRow row;
    row.category = cat;
    for (const TaggedRecord& r : records) {
      if (r.category != cat) continue;
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
    if (row.runs == 0 && row.refusals == 0) {
      report.empty_categories.push_back(cat);
      continue;
    }
    if (row.runs > 0) {
      row.sr /= row.runs;
      row.tcr /= row.runs;
      row.gcr /= row.runs;
      row.ru /= row.runs;
      row.exe /= row.runs;
    }
    report.rows.push_back(row);
  }
  return report;
}

inline std::string format_metric(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string render_markdown(const BenchReport& report,
                                   const std::string& title) {
  std::string out = "# " + title + "\n\n";
  out += "| Category | Tasks | Refusals | SR | TCR | GCR | RU | Exe |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  for (const CategoryRow& row : report.rows) {
    out += "| " + std::string(to_string(row.category)) + " | " +
           std::to_string(row.runs) + " | " + std::to_string(row.refusals) +
           " | " + format_metric(row.sr) + " | " + format_metric(row.tcr) +
           " | " + format_metric(row.gcr) + " | " + format_metric(row.ru) +
           " | " + format_metric(row.exe) + " |\n";
  }
  for (Category c : report.empty_categories) {
    out += "\nNote: no tasks in category " + std::string(to_string(c)) + ".\n";
  }
  return out;
}

inline std::string render_csv(const BenchReport& report) {
  std::string out = "category,tasks,refusals,sr,tcr,gcr,ru,exe\n";
  for (const CategoryRow& row : report.rows) {
    out += std::string(to_string(row.category)) + "," +
           std::to_string(row.runs) + "," + std::to_string(row.refusals) + "," +
           format_metric(row.sr) + "," + format_metric(row.tcr) + "," +
           format_metric(row.gcr) + "," + format_metric(row.ru) + "," +
           format_metric(row.exe) + "\n";
  }
  return out;
}

}  // namespace crewplan

#endif  // CREWPLAN_METRICS_HPP
