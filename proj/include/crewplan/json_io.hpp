#ifndef CREWPLAN_JSON_IO_HPP
#define CREWPLAN_JSON_IO_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "crewplan/coalition.hpp"
#include "crewplan/core.hpp"
#include "crewplan/executor.hpp"
#include "crewplan/metrics.hpp"
#include "crewplan/world.hpp"

namespace crewplan {

// ---------------------------------------------------------------------------
// Core model types <-> dataset JSON schema
// ---------------------------------------------------------------------------

inline Skill skill_from_json(const nlohmann::json& j) {
  std::string name = j.get<std::string>();
  auto s = skill_from_string(name);
  if (!s) throw DatasetError("unknown skill name '" + name + "'");
  return *s;
}

inline void to_json(nlohmann::json& j, const SkillSpec& s) {
  j = nlohmann::json{{"name", to_string(s.name)}};
  if (s.capacity) j["capacity"] = *s.capacity;
}

inline void from_json(const nlohmann::json& j, SkillSpec& s) {
  s = SkillSpec{};
  s.name = skill_from_json(j.at("name"));
  if (j.contains("capacity")) s.capacity = j.at("capacity").get<double>();
}

inline void to_json(nlohmann::json& j, const RobotSpec& r) {
  j = nlohmann::json{{"id", r.id}, {"skills", r.skills}};
}

inline void from_json(const nlohmann::json& j, RobotSpec& r) {
  r = RobotSpec{};
  r.id = j.at("id").get<RobotId>();
  r.skills = j.at("skills").get<std::vector<SkillSpec>>();
  try {
    check_robot_spec(r);
  } catch (const std::invalid_argument& e) {
    throw DatasetError(e.what());
  }
}

inline void to_json(nlohmann::json& j, const ActionCall& a) {
  j = nlohmann::json{{"skill", to_string(a.skill)}, {"args", a.args}};
}

inline void from_json(const nlohmann::json& j, ActionCall& a) {
  a = ActionCall{};
  a.skill = skill_from_json(j.at("skill"));
  a.args = j.at("args").get<std::vector<std::string>>();
  if (static_cast<int>(a.args.size()) != skill_arity(a.skill)) {
    throw DatasetError(std::string(to_string(a.skill)) + " takes " +
                       std::to_string(skill_arity(a.skill)) + " argument(s)");
  }
}

inline void to_json(nlohmann::json& j, const Demand& d) {
  j = nlohmann::json{{"skill", to_string(d.skill)}, {"amount", d.amount}};
}

inline void from_json(const nlohmann::json& j, Demand& d) {
  d = Demand{};
  d.skill = skill_from_json(j.at("skill"));
  d.amount = j.at("amount").get<double>();
}

inline void to_json(nlohmann::json& j, const SubTask& st) {
  j = nlohmann::json{{"id", st.id},
                     {"description", st.description},
                     {"actions", st.actions},
                     {"temporal_order", st.temporal_order}};
  if (st.demand) j["demand"] = *st.demand;
}

inline void from_json(const nlohmann::json& j, SubTask& st) {
  std::optional<Demand> demand;
  if (j.contains("demand")) demand = j.at("demand").get<Demand>();
  try {
    st = make_subtask(j.at("id").get<std::string>(),
                      j.value("description", std::string{}),
                      j.at("actions").get<std::vector<ActionCall>>(),
                      j.at("temporal_order").get<int>(), std::move(demand));
  } catch (const std::invalid_argument& e) {
    throw DatasetError(e.what());
  }
}

inline void to_json(nlohmann::json& j, const Decomposition& d) {
  j = nlohmann::json{{"subtasks", d.subtasks}};
}

inline void from_json(const nlohmann::json& j, Decomposition& d) {
  d = Decomposition{};
  d.subtasks = j.at("subtasks").get<std::vector<SubTask>>();
  try {
    check_decomposition(d);
  } catch (const std::invalid_argument& e) {
    throw DatasetError(e.what());
  }
}

inline void to_json(nlohmann::json& j, const Team& t) { j = t.members; }

inline void from_json(const nlohmann::json& j, Team& t) {
  try {
    t = make_team(j.get<std::vector<RobotId>>());
  } catch (const std::invalid_argument& e) {
    throw DatasetError(e.what());
  }
}

inline void to_json(nlohmann::json& j, const GoalCondition& g) {
  j = nlohmann::json{{"object", g.object_id}, {"attribute", g.attribute}};
  if (const bool* b = std::get_if<bool>(&g.expected)) {
    j["expected"] = *b;
  } else {
    j["expected"] = std::get<std::string>(g.expected);
  }
}

inline void from_json(const nlohmann::json& j, GoalCondition& g) {
  g = GoalCondition{};
  g.object_id = j.at("object").get<std::string>();
  g.attribute = j.at("attribute").get<std::string>();
  const nlohmann::json& e = j.at("expected");
  if (e.is_boolean()) {
    g.expected = e.get<bool>();
  } else {
    g.expected = e.get<std::string>();
  }
  try {
    check_goal_condition(g);
  } catch (const std::invalid_argument& e2) {
    throw DatasetError(e2.what());
  }
}

inline void to_json(nlohmann::json& j, const GroundTruth& gt) {
  j = nlohmann::json{{"goal_conditions", gt.goal_conditions},
                     {"gt_phase_count", gt.gt_phase_count},
                     {"subtask_count", gt.subtask_count}};
}

inline void from_json(const nlohmann::json& j, GroundTruth& gt) {
  gt = GroundTruth{};
  gt.goal_conditions = j.at("goal_conditions").get<std::vector<GoalCondition>>();
  gt.gt_phase_count = j.at("gt_phase_count").get<int>();
  gt.subtask_count = j.at("subtask_count").get<int>();
  if (gt.goal_conditions.empty()) {
    throw DatasetError("ground truth needs at least one goal condition");
  }
  if (gt.gt_phase_count < 1 || gt.subtask_count < 1) {
    throw DatasetError("ground truth counts must be positive");
  }
  if (gt.gt_phase_count > gt.subtask_count) {
    throw DatasetError("gt_phase_count exceeds subtask_count");
  }
}

// ---------------------------------------------------------------------------
// Coalition policy <-> the JSON schema the LLM coalition stage must emit
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const CoalitionDecision& d) {
  j = nlohmann::json{{"subtask_id", d.subtask_id},
                     {"kind", to_string(d.kind)},
                     {"rationale", d.rationale}};
  if (d.feasible()) j["team"] = d.team;
}

inline void from_json(const nlohmann::json& j, CoalitionDecision& d) {
  d = CoalitionDecision{};
  d.subtask_id = j.at("subtask_id").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "single_robot") {
    d.kind = CoalitionDecision::Kind::SingleRobot;
  } else if (kind == "team_union") {
    d.kind = CoalitionDecision::Kind::TeamUnion;
  } else if (kind == "team_capacity") {
    d.kind = CoalitionDecision::Kind::TeamCapacity;
  } else if (kind == "infeasible") {
    d.kind = CoalitionDecision::Kind::Infeasible;
  } else {
    throw DatasetError("unknown coalition decision kind '" + kind + "'");
  }
  d.rationale = j.value("rationale", std::string{});
  if (d.feasible()) {
    d.team = j.at("team").get<Team>();
    if (d.kind == CoalitionDecision::Kind::SingleRobot &&
        d.team.members.size() != 1) {
      throw DatasetError("single_robot decision must name exactly one robot");
    }
  }
}

inline void to_json(nlohmann::json& j, const CoalitionPolicy& p) {
  j = nlohmann::json{{"decisions", p.decisions}};
}

inline void from_json(const nlohmann::json& j, CoalitionPolicy& p) {
  p = CoalitionPolicy{};
  p.decisions = j.at("decisions").get<std::vector<CoalitionDecision>>();
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const Fraction& f) {
  j = nlohmann::json{{"num", f.num}, {"den", f.den}};
}

inline void from_json(const nlohmann::json& j, Fraction& f) {
  f.num = j.at("num").get<long long>();
  f.den = j.at("den").get<long long>();
}

inline void to_json(nlohmann::json& j, const MetricsRecord& m) {
  j = nlohmann::json{{"sr", m.sr},
                     {"tcr", m.tcr},
                     {"gcr", m.gcr.value()},
                     {"ru", m.ru.value()},
                     {"exe", m.exe.value()},
                     {"gcr_exact", m.gcr},
                     {"ru_exact", m.ru},
                     {"exe_exact", m.exe},
                     {"actions_total", m.actions_total},
                     {"actions_succeeded", m.actions_succeeded},
                     {"phases_observed", m.phases_observed},
                     {"goals_total", m.goals_total},
                     {"goals_met", m.goals_met}};
}

inline void from_json(const nlohmann::json& j, MetricsRecord& m) {
  m = MetricsRecord{};
  m.sr = j.at("sr").get<int>();
  m.tcr = j.at("tcr").get<int>();
  m.gcr = j.at("gcr_exact").get<Fraction>();
  m.ru = j.at("ru_exact").get<Fraction>();
  m.exe = j.at("exe_exact").get<Fraction>();
  m.actions_total = j.at("actions_total").get<int>();
  m.actions_succeeded = j.at("actions_succeeded").get<int>();
  m.phases_observed = j.at("phases_observed").get<int>();
  m.goals_total = j.at("goals_total").get<int>();
  m.goals_met = j.at("goals_met").get<int>();
}

// ---------------------------------------------------------------------------
// Execution trace <-> JSON-lines: one step per line plus a summary record.
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const TraceStep& s) {
  j = nlohmann::json{{"type", "step"},       {"tick", s.tick},
                     {"robot", s.robot},     {"team", s.team},
                     {"action", s.action},   {"outcome", s.success ? "success" : "failure"}};
  if (!s.success) j["reason"] = s.reason;
}

inline void from_json(const nlohmann::json& j, TraceStep& s) {
  s = TraceStep{};
  s.tick = j.at("tick").get<int>();
  s.robot = j.at("robot").get<RobotId>();
  s.team = j.at("team").get<Team>();
  s.action = j.at("action").get<ActionCall>();
  s.success = j.at("outcome").get<std::string>() == "success";
  s.reason = j.value("reason", std::string{});
}

inline std::string write_trace_jsonl(const ExecutionTrace& trace) {
  std::string out;
  for (const TraceStep& s : trace.steps) {
    out += nlohmann::json(s).dump();
    out += "\n";
  }
  nlohmann::json summary;
  summary["type"] = "summary";
  summary["phase_sequence"] = trace.phase_sequence;
  summary["actions_total"] = trace.actions_total();
  summary["actions_succeeded"] = trace.actions_succeeded();
  summary["final_world"] = trace.final_world;
  out += summary.dump();
  out += "\n";
  return out;
}

inline ExecutionTrace read_trace_jsonl(const std::string& text) {
  ExecutionTrace trace;
  std::istringstream in(text);
  std::string line;
  bool saw_summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    std::string type = j.at("type").get<std::string>();
    if (type == "step") {
      trace.steps.push_back(j.get<TraceStep>());
    } else if (type == "summary") {
      for (const nlohmann::json& phase : j.at("phase_sequence")) {
        std::set<RobotId> ids;
        for (const nlohmann::json& id : phase) ids.insert(id.get<RobotId>());
        trace.phase_sequence.push_back(std::move(ids));
      }
      trace.final_world = j.at("final_world").get<WorldState>();
      saw_summary = true;
    } else {
      throw DatasetError("unknown trace record type '" + type + "'");
    }
  }
  if (!saw_summary) throw DatasetError("trace has no summary record");
  return trace;
}

}  // namespace crewplan

#endif  // CREWPLAN_JSON_IO_HPP
