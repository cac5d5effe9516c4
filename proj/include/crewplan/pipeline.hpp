#ifndef CREWPLAN_PIPELINE_HPP
#define CREWPLAN_PIPELINE_HPP

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crewplan/backend.hpp"
#include "crewplan/coalition.hpp"
#include "crewplan/decomp_format.hpp"
#include "crewplan/dsl.hpp"
#include "crewplan/json_io.hpp"
#include "crewplan/prompts.hpp"

namespace crewplan {

enum class Stage { Decomposition, Coalition, Allocation };

inline std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Decomposition: return "decomposition";
    case Stage::Coalition: return "coalition";
    case Stage::Allocation: return "allocation";
  }
  return "?";
}

// The model declined: no plan exists for this task.
struct Refusal {
  std::string reason;
};

struct StageParseError : std::runtime_error {
  Stage stage;
  std::string raw;  // the full reply that failed to parse
  StageParseError(Stage stage_, std::string raw_)
      : std::runtime_error("no parseable " + std::string(to_string(stage_)) +
                           " block in the model reply"),
        stage(stage_),
        raw(std::move(raw_)) {}
};

// Backend failure annotated with the stage it happened in.
struct PipelineBackendError : std::runtime_error {
  Stage stage;
  PipelineBackendError(Stage stage_, const std::string& what)
      : std::runtime_error(std::string(to_string(stage_)) + " stage: " + what),
        stage(stage_) {}
};

using StageOutput =
    std::variant<Decomposition, CoalitionPolicy, PlanAst, Refusal>;

namespace detail {

inline std::optional<std::string> find_refusal(const std::string& text) {
  for (const std::string& line : split_lines(text)) {
    size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    constexpr std::string_view marker = "INFEASIBLE:";
    if (line.compare(i, marker.size(), marker) == 0) {
      std::string reason = line.substr(i + marker.size());
      size_t a = reason.find_first_not_of(" \t");
      return a == std::string::npos ? std::string{} : reason.substr(a);
    }
  }
  return std::nullopt;
}

// Extracts the balanced {...} starting at `open`, honoring double-quoted
// strings. Returns npos on imbalance.
inline size_t find_matching_brace(const std::string& text, size_t open) {
  int depth = 0;
  bool in_string = false;
  for (size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string::npos;
}

inline bool is_word_boundary(const std::string& text, size_t pos, size_t len) {
  auto wordy = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  if (pos > 0 && wordy(text[pos - 1])) return false;
  size_t end = pos + len;
  return end >= text.size() || !wordy(text[end]);
}

// Finds the first `keyword { ... }` block that the given parser accepts.
template <typename Parser>
auto extract_keyword_block(const std::string& text, std::string_view keyword,
                           Parser&& parser)
    -> std::optional<decltype(parser(std::string{}))> {
  size_t pos = 0;
  while ((pos = text.find(keyword, pos)) != std::string::npos) {
    if (!is_word_boundary(text, pos, keyword.size())) {
      ++pos;
      continue;
    }
    size_t open = text.find_first_not_of(" \t\r\n", pos + keyword.size());
    if (open == std::string::npos || text[open] != '{') {
      ++pos;
      continue;
    }
    size_t close = find_matching_brace(text, open);
    if (close == std::string::npos) {
      ++pos;
      continue;
    }
    std::string block =
        std::string(keyword) + " " + text.substr(open, close - open + 1);
    try {
      return parser(block);
    } catch (const ParseError&) {
      pos = close + 1;
    }
  }
  return std::nullopt;
}

inline std::optional<CoalitionPolicy> extract_policy_json(
    const std::string& text) {
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    size_t close = find_matching_brace(text, pos);
    if (close == std::string::npos) {
      ++pos;
      continue;
    }
    std::string block = text.substr(pos, close - pos + 1);
    try {
      nlohmann::json j = nlohmann::json::parse(block);
      return j.get<CoalitionPolicy>();
    } catch (const std::exception&) {
      ++pos;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Extracts the first well-formed block of the expected kind from a model
// reply, ignoring surrounding prose. An `INFEASIBLE: <reason>` line anywhere
// maps to a Refusal at any stage.
inline StageOutput parse_stage_output(Stage stage, const std::string& text) {
  if (auto reason = detail::find_refusal(text)) {
    return Refusal{*reason};
  }
  switch (stage) {
    case Stage::Decomposition: {
      auto d = detail::extract_keyword_block(
          text, "tasks",
          [](const std::string& block) { return parse_decomposition(block); });
      if (d) return *d;
      break;
    }
    case Stage::Coalition: {
      auto p = detail::extract_policy_json(text);
      if (p) return *p;
      break;
    }
    case Stage::Allocation: {
      auto a = detail::extract_keyword_block(
          text, "plan",
          [](const std::string& block) { return parse(block); });
      if (a) return *a;
      break;
    }
  }
  throw StageParseError(stage, text);
}

struct TranscriptEntry {
  Stage stage{};
  std::string prompt;
  std::string reply;
};

// Invoked with each reply as soon as it arrives, before parsing.
using TranscriptSink = std::function<void(const TranscriptEntry&)>;

struct PipelineResult {
  // Absent only when the model refused at stage 1.
  std::optional<Decomposition> decomposition;
  std::optional<CoalitionPolicy> policy;  // absent iff skip_coalition or refusal
  std::optional<PlanAst> plan;
  std::optional<std::string> refusal;  // exactly one of plan/refusal is set
  std::vector<TranscriptEntry> transcripts;
};

// Runs Stage 1 -> Stage 2 (unless skipped) -> Stage 3, feeding each stage's
// parsed output into the next prompt. A refusal at any stage halts the
// pipeline; later stages are never invoked.
inline PipelineResult run_pipeline(const std::string& instruction,
                                   const WorldState& world,
                                   std::span<const RobotSpec> robots,
                                   const PromptConfig& config,
                                   ChatBackend& backend,
                                   const TranscriptSink& sink = {}) {
  PipelineResult result;

  auto call = [&](Stage stage, const std::string& prompt) -> StageOutput {
    std::string reply;
    try {
      reply = backend.complete(prompt);
    } catch (const BackendError& e) {
      throw PipelineBackendError(stage, e.what());
    }
    result.transcripts.push_back({stage, prompt, reply});
    if (sink) sink(result.transcripts.back());
    return parse_stage_output(stage, reply);
  };

  // The decomposition stage sees the union of the team's skills.
  SkillSet skill_union;
  for (const RobotSpec& r : robots) {
    SkillSet s = r.skill_set();
    skill_union.insert(s.begin(), s.end());
  }
  std::vector<Skill> skills(skill_union.begin(), skill_union.end());

  StageOutput out = call(
      Stage::Decomposition,
      build_decomposition_prompt(world, skills, config, instruction));
  if (const Refusal* r = std::get_if<Refusal>(&out)) {
    result.refusal = r->reason;
    return result;
  }
  result.decomposition = std::get<Decomposition>(std::move(out));

  if (!config.skip_coalition) {
    out = call(Stage::Coalition,
               build_coalition_prompt(*result.decomposition, robots, world,
                                      config));
    if (const Refusal* r = std::get_if<Refusal>(&out)) {
      result.refusal = r->reason;
      return result;
    }
    result.policy = std::get<CoalitionPolicy>(std::move(out));
  }

  out = call(Stage::Allocation,
             build_allocation_prompt(*result.decomposition,
                                     result.policy ? &*result.policy : nullptr,
                                     robots, config));
  if (const Refusal* r = std::get_if<Refusal>(&out)) {
    result.refusal = r->reason;
    return result;
  }
  result.plan = std::get<PlanAst>(std::move(out));
  return result;
}

}  // namespace crewplan

#endif  // CREWPLAN_PIPELINE_HPP
