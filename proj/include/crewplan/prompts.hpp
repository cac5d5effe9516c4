#ifndef CREWPLAN_PROMPTS_HPP
#define CREWPLAN_PROMPTS_HPP

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "crewplan/core.hpp"
#include "crewplan/decomp_format.hpp"
#include "crewplan/json_io.hpp"
#include "crewplan/prompt_examples.hpp"
#include "crewplan/world.hpp"

namespace crewplan {

struct PromptConfig {
  std::vector<DecompositionExample> decomposition_examples =
      default_decomposition_examples();
  std::vector<CoalitionExample> coalition_examples =
      default_coalition_examples();
  std::vector<AllocationExample> allocation_examples =
      default_allocation_examples();
  bool include_line_comments = true;
  bool include_block_summaries = true;
  bool skip_coalition = false;
};

namespace detail {

inline bool is_comment_line(const std::string& line) {
  size_t i = line.find_first_not_of(" \t");
  return i != std::string::npos && line[i] == '#';
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

// Drops the leading summary block and/or the in-body comment lines from an
// example text. Whole lines only, so the filtered text is a line
// subsequence of the original.
inline std::string filter_example_text(const std::string& text,
                                       bool keep_line_comments,
                                       bool keep_summary) {
  std::vector<std::string> lines = split_lines(text);
  std::string out;
  bool in_summary = true;
  for (const std::string& line : lines) {
    bool comment = is_comment_line(line);
    if (!comment) in_summary = false;
    bool keep = !comment || (in_summary ? keep_summary : keep_line_comments);
    if (keep) {
      out += line;
      out += "\n";
    }
  }
  return out;
}

inline std::string skill_signature(Skill s) {
  switch (s) {
    case Skill::GoToLocation: return "GoToLocation(location)";
    case Skill::PutObject: return "PutObject(object, receptacle)";
    case Skill::Patrol: return "Patrol(region)";
    default:
      return std::string(to_string(s)) + "(object)";
  }
}

inline std::string render_capacity(const SkillSpec& sp) {
  char buf[64];
  if (sp.name == Skill::Patrol) {
    std::snprintf(buf, sizeof(buf), "%s (covers %.1f m^2)",
                  std::string(to_string(sp.name)).c_str(), *sp.capacity);
  } else {
    std::snprintf(buf, sizeof(buf), "%s (max %.1f kg)",
                  std::string(to_string(sp.name)).c_str(), *sp.capacity);
  }
  return buf;
}

inline std::string render_robots_block(std::span<const RobotSpec> robots) {
  std::string out;
  for (const RobotSpec& r : robots) {
    out += "robot" + std::to_string(r.id) + ":";
    for (size_t i = 0; i < r.skills.size(); ++i) {
      out += i ? ", " : " ";
      const SkillSpec& sp = r.skills[i];
      out += sp.capacity ? render_capacity(sp) : std::string(to_string(sp.name));
    }
    out += "\n";
  }
  return out;
}

inline std::string render_environment_block(const WorldState& world) {
  std::string out;
  for (const auto& [id, o] : world.objects) {
    out += "  " + id;
    std::vector<std::string> notes;
    if (o.is_receptacle) notes.push_back("receptacle");
    if (o.togglable) notes.push_back("togglable");
    if (o.openable) notes.push_back("openable");
    if (o.sliceable) notes.push_back("sliceable");
    if (o.breakable) notes.push_back("breakable");
    if (o.mass) notes.push_back("mass " + format_amount(*o.mass) + " kg");
    if (o.parent_receptacle) notes.push_back("in " + *o.parent_receptacle);
    if (!notes.empty()) {
      out += " [";
      for (size_t i = 0; i < notes.size(); ++i) {
        if (i) out += ", ";
        out += notes[i];
      }
      out += "]";
    }
    out += "\n";
  }
  for (const auto& [id, r] : world.regions) {
    out += "  " + id + " [region, area " + format_amount(r.area) + " m^2]\n";
  }
  return out;
}

}  // namespace detail

// Stage 1 prompt: skill list, environment, worked decompositions, target
// instruction. Byte-for-byte deterministic for fixed inputs.
inline std::string build_decomposition_prompt(const WorldState& world,
                                              std::span<const Skill> skills,
                                              const PromptConfig& config,
                                              const std::string& instruction) {
  if (instruction.empty()) {
    throw std::invalid_argument("instruction must be non-empty");
  }
  if (config.decomposition_examples.empty()) {
    throw std::invalid_argument("decomposition stage needs worked examples");
  }
  std::string p;
  p += "You plan tasks for a team of household robots.\n";
  p += "Decompose the instruction into sub-tasks, written as a tasks { ... } "
       "block.\nSub-tasks sharing an order value may run in parallel.\n\n";
  p += "Robot skills:\n";
  for (Skill s : skills) p += "  " + detail::skill_signature(s) + "\n";
  p += "\nEnvironment:\n";
  p += detail::render_environment_block(world);
  int n = 0;
  for (const DecompositionExample& ex : config.decomposition_examples) {
    p += "\nExample " + std::to_string(++n) + ":\n";
    p += "Instruction: " + ex.instruction + "\n";
    p += detail::filter_example_text(ex.decomposition_text,
                                     config.include_line_comments,
                                     config.include_block_summaries);
  }
  p += "\nIf the instruction cannot be performed with the listed skills, "
       "reply with a single line: INFEASIBLE: <reason>.\n";
  p += "\nInstruction: " + instruction + "\n";
  return p;
}

// Stage 2 prompt: robots with capacities, environment, the three worked
// coalition cases, then the target decomposition.
inline std::string build_coalition_prompt(const Decomposition& decomposition,
                                          std::span<const RobotSpec> robots,
                                          const WorldState& world,
                                          const PromptConfig& config) {
  if (config.coalition_examples.empty()) {
    throw std::invalid_argument("coalition stage needs worked examples");
  }
  std::string p;
  p += "You form robot coalitions for decomposed household tasks.\n";
  p += "For every sub-task, decide which robot or team performs it, and "
       "reply with a coalition policy JSON object.\n\n";
  p += "Robots:\n";
  p += detail::render_robots_block(robots);
  p += "\nEnvironment:\n";
  p += detail::render_environment_block(world);
  int n = 0;
  for (const CoalitionExample& ex : config.coalition_examples) {
    p += "\nExample " + std::to_string(++n) + ":\n";
    p += "Robots:\n" + ex.robots_text;
    p += "Decomposed task:\n";
    p += detail::filter_example_text(ex.decomposition_text,
                                     config.include_line_comments,
                                     config.include_block_summaries);
    p += "Coalition policy:\n" + ex.policy_json;
  }
  p += "\nIf some sub-task cannot be performed by any robot or team, reply "
       "with a single line: INFEASIBLE: <reason>.\n";
  p += "\nDecomposed task:\n" + serialize_decomposition(decomposition);
  p += "Coalition policy:\n";
  return p;
}

// Stage 3 prompt: worked allocations, then the target decomposition and its
// policy. With skip_coalition no policy text appears anywhere.
inline std::string build_allocation_prompt(const Decomposition& decomposition,
                                           const CoalitionPolicy* policy,
                                           std::span<const RobotSpec> robots,
                                           const PromptConfig& config) {
  if (!config.skip_coalition && policy == nullptr) {
    throw std::invalid_argument("allocation prompt needs a policy unless the "
                                "coalition stage is skipped");
  }
  if (config.allocation_examples.empty()) {
    throw std::invalid_argument("allocation stage needs worked examples");
  }
  std::string p;
  p += "You allocate robots to decomposed sub-tasks and emit an executable "
       "plan.\nPlans are plan { ... } blocks built from seq, par and assign; "
       "par branches run concurrently.\n\n";
  p += "Robots:\n";
  p += detail::render_robots_block(robots);
  int n = 0;
  for (const AllocationExample& ex : config.allocation_examples) {
    p += "\nExample " + std::to_string(++n) + ":\n";
    p += "Robots:\n" + ex.robots_text;
    p += "Decomposed task:\n";
    p += detail::filter_example_text(ex.decomposition_text,
                                     config.include_line_comments,
                                     config.include_block_summaries);
    if (!config.skip_coalition) {
      p += "Coalition policy:\n" + ex.policy_json;
    }
    p += "Allocated plan:\n";
    p += detail::filter_example_text(ex.plan_text, config.include_line_comments,
                                     config.include_block_summaries);
  }
  p += "\nIf allocation is impossible, reply with a single line: "
       "INFEASIBLE: <reason>.\n";
  p += "\nDecomposed task:\n" + serialize_decomposition(decomposition);
  if (!config.skip_coalition) {
    p += "Coalition policy:\n" + nlohmann::json(*policy).dump(2) + "\n";
  }
  p += "Allocated plan:\n";
  return p;
}

}  // namespace crewplan

#endif  // CREWPLAN_PROMPTS_HPP
