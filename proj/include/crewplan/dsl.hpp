#ifndef CREWPLAN_DSL_HPP
#define CREWPLAN_DSL_HPP

#include <cstdlib>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "crewplan/core.hpp"
#include "crewplan/world.hpp"

namespace crewplan {

// ---------------------------------------------------------------------------
// Lexer, shared by the plan grammar and the sub-task list grammar.
// `#` starts a comment that runs to end of line.
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(int line_, int col_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ": " + what),
        line(line_),
        col(col_) {}
};

namespace detail {

enum class Tok {
  Ident,
  Number,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Comma,
  End,
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Tok kind) {
    if (tok_.kind != kind) {
      throw ParseError(tok_.line, tok_.col,
                       std::string("expected ") + tok_name(kind) + ", found " +
                           describe(tok_));
    }
    return next();
  }

  // Consumes an identifier with exactly this spelling.
  Token expect_keyword(std::string_view word) {
    if (tok_.kind != Tok::Ident || tok_.text != word) {
      throw ParseError(tok_.line, tok_.col,
                       "expected '" + std::string(word) + "', found " +
                           describe(tok_));
    }
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Ident) return "'" + t.text + "'";
    if (t.kind == Tok::Number) return "number '" + t.text + "'";
    if (t.kind == Tok::String) return "string";
    return tok_name(t.kind);
  }

 private:
  void advance() {
    skip_space_and_comments();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '{': tok_.kind = Tok::LBrace; take(1); return;
      case '}': tok_.kind = Tok::RBrace; take(1); return;
      case '(': tok_.kind = Tok::LParen; take(1); return;
      case ')': tok_.kind = Tok::RParen; take(1); return;
      case ';': tok_.kind = Tok::Semi; take(1); return;
      case ',': tok_.kind = Tok::Comma; take(1); return;
      case '"': lex_string(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        take(1);
      }
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void lex_number() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '.')) {
      take(1);
    }
    tok_.kind = Tok::Number;
    tok_.text = std::string(src_.substr(start, pos_ - start));
    tok_.number = std::strtod(tok_.text.c_str(), nullptr);
  }

  void lex_string() {
    take(1);  // opening quote
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      if (src_[pos_] == '\n') {
        throw ParseError(tok_.line, tok_.col, "unterminated string");
      }
      out.push_back(src_[pos_]);
      take(1);
    }
    if (pos_ >= src_.size()) {
      throw ParseError(tok_.line, tok_.col, "unterminated string");
    }
    take(1);  // closing quote
    tok_.kind = Tok::String;
    tok_.text = std::move(out);
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take(1);
      } else {
        break;
      }
    }
  }

  void take(size_t n) {
    for (size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// Parses a `robotN` token into its 1-based id.
inline RobotId parse_robot_id(const Token& t) {
  constexpr std::string_view prefix = "robot";
  if (t.kind != Tok::Ident || t.text.size() <= prefix.size() ||
      t.text.compare(0, prefix.size(), prefix) != 0) {
    throw ParseError(t.line, t.col,
                     "expected robot id (robotN), found " + Lexer::describe(t));
  }
  std::string digits = t.text.substr(prefix.size());
  if (digits[0] == '0' ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(t.line, t.col, "malformed robot id '" + t.text + "'");
  }
  return std::atoi(digits.c_str());
}

inline Skill parse_skill_name(const Token& t) {
  auto s = skill_from_string(t.text);
  if (!s) throw ParseError(t.line, t.col, "unknown skill '" + t.text + "'");
  return *s;
}

// action := IDENT "(" (IDENT ("," IDENT)*)? ")" ";"
inline ActionCall parse_action(Lexer& lex) {
  Token name = lex.expect(Tok::Ident);
  Skill skill = parse_skill_name(name);
  ActionCall call{skill, {}};
  lex.expect(Tok::LParen);
  if (lex.peek().kind != Tok::RParen) {
    call.args.push_back(lex.expect(Tok::Ident).text);
    while (lex.peek().kind == Tok::Comma) {
      lex.next();
      call.args.push_back(lex.expect(Tok::Ident).text);
    }
  }
  lex.expect(Tok::RParen);
  if (static_cast<int>(call.args.size()) != skill_arity(skill)) {
    throw ParseError(name.line, name.col,
                     std::string(to_string(skill)) + " takes " +
                         std::to_string(skill_arity(skill)) +
                         " argument(s), got " + std::to_string(call.args.size()));
  }
  lex.expect(Tok::Semi);
  return call;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Plan AST
// ---------------------------------------------------------------------------

struct Node;

struct SeqNode {
  std::vector<Node> children;
  bool operator==(const SeqNode&) const;
};

struct ParNode {
  std::vector<Node> children;
  bool operator==(const ParNode&) const;
};

struct AssignNode {
  Team team;
  std::vector<ActionCall> actions;
  bool operator==(const AssignNode&) const = default;
};

struct Node {
  std::variant<SeqNode, ParNode, AssignNode> v;
  bool operator==(const Node&) const;
};

inline bool SeqNode::operator==(const SeqNode& o) const { return children == o.children; }
inline bool ParNode::operator==(const ParNode& o) const { return children == o.children; }
inline bool Node::operator==(const Node& o) const { return v == o.v; }

inline Node seq(std::vector<Node> children) { return Node{SeqNode{std::move(children)}}; }
inline Node par(std::vector<Node> children) { return Node{ParNode{std::move(children)}}; }
inline Node assign(Team team, std::vector<ActionCall> actions) {
  return Node{AssignNode{std::move(team), std::move(actions)}};
}

struct PlanAst {
  Node root;
  bool operator==(const PlanAst&) const = default;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

inline Node parse_stmt(Lexer& lex);

inline std::vector<Node> parse_stmt_list(Lexer& lex) {
  std::vector<Node> out;
  lex.expect(Tok::LBrace);
  while (lex.peek().kind != Tok::RBrace) {
    out.push_back(parse_stmt(lex));
  }
  lex.expect(Tok::RBrace);
  return out;
}

inline Node parse_assign(Lexer& lex) {
  std::vector<RobotId> members;
  members.push_back(parse_robot_id(lex.next()));
  while (lex.peek().kind == Tok::Comma) {
    lex.next();
    Token t = lex.next();
    RobotId id = parse_robot_id(t);
    if (std::find(members.begin(), members.end(), id) != members.end()) {
      throw ParseError(t.line, t.col, "duplicate robot in team: '" + t.text + "'");
    }
    members.push_back(id);
  }
  Team team = make_team(std::move(members));
  std::vector<ActionCall> actions;
  lex.expect(Tok::LBrace);
  while (lex.peek().kind != Tok::RBrace) {
    actions.push_back(parse_action(lex));
  }
  lex.expect(Tok::RBrace);
  return assign(std::move(team), std::move(actions));
}

inline Node parse_stmt(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind != Tok::Ident) {
    throw ParseError(t.line, t.col,
                     "expected 'seq', 'par' or 'assign', found " +
                         Lexer::describe(t));
  }
  if (t.text == "seq") {
    lex.next();
    return seq(parse_stmt_list(lex));
  }
  if (t.text == "par") {
    lex.next();
    return par(parse_stmt_list(lex));
  }
  if (t.text == "assign") {
    lex.next();
    return parse_assign(lex);
  }
  throw ParseError(t.line, t.col,
                   "expected 'seq', 'par' or 'assign', found '" + t.text + "'");
}

}  // namespace detail

// Parses DSL source into an AST. A plan body with several top-level
// statements is wrapped in an implicit Seq.
inline PlanAst parse(std::string_view text) {
  detail::Lexer lex(text);
  lex.expect_keyword("plan");
  std::vector<Node> stmts = detail::parse_stmt_list(lex);
  lex.expect(detail::Tok::End);
  if (stmts.size() == 1) return PlanAst{std::move(stmts.front())};
  return PlanAst{seq(std::move(stmts))};
}

// ---------------------------------------------------------------------------
// Serializer: canonical formatting, one statement per line, two-space indent.
// parse(serialize(x)) == x.
// ---------------------------------------------------------------------------

namespace detail {

inline void serialize_node(const Node& node, int depth, std::string& out) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  if (const auto* s = std::get_if<SeqNode>(&node.v)) {
    out += pad + "seq {\n";
    for (const Node& c : s->children) serialize_node(c, depth + 1, out);
    out += pad + "}\n";
  } else if (const auto* p = std::get_if<ParNode>(&node.v)) {
    out += pad + "par {\n";
    for (const Node& c : p->children) serialize_node(c, depth + 1, out);
    out += pad + "}\n";
  } else {
    const auto& a = std::get<AssignNode>(node.v);
    out += pad + "assign ";
    for (size_t i = 0; i < a.team.members.size(); ++i) {
      if (i) out += ", ";
      out += "robot" + std::to_string(a.team.members[i]);
    }
    out += " {\n";
    for (const ActionCall& call : a.actions) {
      out += pad + "  " + std::string(to_string(call.skill)) + "(";
      for (size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ", ";
        out += call.args[i];
      }
      out += ");\n";
    }
    out += pad + "}\n";
  }
}

}  // namespace detail

inline std::string serialize(const PlanAst& ast) {
  std::string out = "plan {\n";
  detail::serialize_node(ast.root, 1, out);
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Static validation
// ---------------------------------------------------------------------------

enum class Severity { Warning, Error };

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string location;  // node path, e.g. "seq/par[0]/assign[1]"
  std::string message;
};

inline bool has_errors(const std::vector<ValidationIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == Severity::Error;
  });
}

inline std::set<RobotId> robots_in(const Node& node) {
  std::set<RobotId> out;
  if (const auto* a = std::get_if<AssignNode>(&node.v)) {
    out.insert(a->team.members.begin(), a->team.members.end());
  } else {
    const auto& children = std::holds_alternative<SeqNode>(node.v)
                               ? std::get<SeqNode>(node.v).children
                               : std::get<ParNode>(node.v).children;
    for (const Node& c : children) {
      auto sub = robots_in(c);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

namespace detail {

inline void validate_node(const Node& node, const std::string& path,
                          const std::map<RobotId, const RobotSpec*>& robots,
                          const WorldState& world,
                          std::vector<ValidationIssue>& issues) {
  auto child_path = [&path](const char* kind, size_t i) {
    return path + "/" + kind + "[" + std::to_string(i) + "]";
  };
  if (const auto* a = std::get_if<AssignNode>(&node.v)) {
    SkillSet team_skills;
    for (RobotId id : a->team.members) {
      auto it = robots.find(id);
      if (it == robots.end()) {
        issues.push_back({Severity::Error, path,
                          "unknown robot robot" + std::to_string(id)});
        continue;
      }
      SkillSet s = it->second->skill_set();
      team_skills.insert(s.begin(), s.end());
    }
    for (const ActionCall& call : a->actions) {
      if (!team_skills.count(call.skill)) {
        issues.push_back({Severity::Error, path,
                          "skill " + std::string(to_string(call.skill)) +
                              " not possessed by the assigned team"});
      }
      for (const std::string& arg : call.args) {
        if (!world.has_entity(arg)) {
          issues.push_back({Severity::Error, path,
                            "unknown object or region '" + arg + "'"});
          continue;
        }
        // Patrol works on regions, manipulation skills on objects; the
        // go-to skills accept either.
        bool is_region = world.regions.count(arg) > 0;
        bool goes_anywhere = call.skill == Skill::GoToObject ||
                             call.skill == Skill::GoToLocation;
        if (goes_anywhere) continue;
        if (call.skill == Skill::Patrol && !is_region) {
          issues.push_back({Severity::Error, path,
                            "Patrol target '" + arg + "' is not a region"});
        } else if (call.skill != Skill::Patrol && is_region) {
          issues.push_back({Severity::Error, path,
                            "'" + arg + "' is a region, not an object"});
        }
      }
    }
    return;
  }
  const bool is_seq = std::holds_alternative<SeqNode>(node.v);
  const auto& children = is_seq ? std::get<SeqNode>(node.v).children
                                : std::get<ParNode>(node.v).children;
  if (children.empty()) {
    issues.push_back({Severity::Warning, path,
                      std::string("empty ") + (is_seq ? "seq" : "par") +
                          " block"});
  }
  if (!is_seq) {
    // A robot cannot act in two sibling branches of the same par.
    std::map<RobotId, size_t> first_branch;
    for (size_t i = 0; i < children.size(); ++i) {
      for (RobotId id : robots_in(children[i])) {
        auto [it, inserted] = first_branch.emplace(id, i);
        if (!inserted && it->second != i) {
          issues.push_back(
              {Severity::Error, child_path("par", i),
               "robot robot" + std::to_string(id) +
                   " is assigned to two concurrent branches"});
        }
      }
    }
  }
  const char* kind = is_seq ? "seq" : "par";
  for (size_t i = 0; i < children.size(); ++i) {
    validate_node(children[i], child_path(kind, i), robots, world, issues);
  }
}

}  // namespace detail

inline std::vector<ValidationIssue> validate(const PlanAst& ast,
                                             std::span<const RobotSpec> robots,
                                             const WorldState& world) {
  std::map<RobotId, const RobotSpec*> by_id;
  for (const RobotSpec& r : robots) by_id[r.id] = &r;
  std::vector<ValidationIssue> issues;
  detail::validate_node(ast.root, "plan", by_id, world, issues);
  return issues;
}

// ---------------------------------------------------------------------------
// Phases: the ordered execution phases of a plan. Each par node and each
// assign leaf reached through seq nesting forms one phase.
// ---------------------------------------------------------------------------

inline void collect_phase_units(const Node& node, std::vector<const Node*>& out) {
  if (const auto* s = std::get_if<SeqNode>(&node.v)) {
    for (const Node& c : s->children) collect_phase_units(c, out);
  } else {
    out.push_back(&node);
  }
}

inline std::vector<std::set<RobotId>> phases(const PlanAst& ast) {
  std::vector<const Node*> units;
  collect_phase_units(ast.root, units);
  std::vector<std::set<RobotId>> out;
  out.reserve(units.size());
  for (const Node* u : units) out.push_back(robots_in(*u));
  return out;
}

}  // namespace crewplan

#endif  // CREWPLAN_DSL_HPP
