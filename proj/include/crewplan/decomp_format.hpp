#ifndef CREWPLAN_DECOMP_FORMAT_HPP
#define CREWPLAN_DECOMP_FORMAT_HPP

#include <string>

#include "crewplan/core.hpp"
#include "crewplan/dsl.hpp"

namespace crewplan {

// Textual form of a decomposition, the stage-1 exchange format:
//
//   tasks {
//     task t1 "slice the apple" order 0 {
//       GoToObject(Knife);
//       ...
//     }
//     task t2 "stow the pot" order 1 demand PickupObject 8 {
//       ...
//     }
//   }
//
// `#` comments run to end of line, as in the plan language.

inline Decomposition parse_decomposition(std::string_view text) {
  using detail::Tok;
  detail::Lexer lex(text);
  lex.expect_keyword("tasks");
  lex.expect(Tok::LBrace);
  Decomposition out;
  while (lex.peek().kind != Tok::RBrace) {
    lex.expect_keyword("task");
    std::string id = lex.expect(Tok::Ident).text;
    std::string description = lex.expect(Tok::String).text;
    lex.expect_keyword("order");
    detail::Token order_tok = lex.expect(Tok::Number);
    int order = static_cast<int>(order_tok.number);
    std::optional<Demand> demand;
    if (lex.peek().kind == Tok::Ident && lex.peek().text == "demand") {
      lex.next();
      detail::Token skill_tok = lex.expect(Tok::Ident);
      Skill skill = detail::parse_skill_name(skill_tok);
      demand = Demand{skill, lex.expect(Tok::Number).number};
    }
    lex.expect(Tok::LBrace);
    std::vector<ActionCall> actions;
    while (lex.peek().kind != Tok::RBrace) {
      actions.push_back(detail::parse_action(lex));
    }
    lex.expect(Tok::RBrace);
    try {
      out.subtasks.push_back(make_subtask(std::move(id), std::move(description),
                                          std::move(actions), order,
                                          std::move(demand)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(order_tok.line, order_tok.col, e.what());
    }
  }
  lex.expect(Tok::RBrace);
  lex.expect(Tok::End);
  try {
    check_decomposition(out);
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
  return out;
}

// Canonical rendering; parse_decomposition(serialize_decomposition(d)) == d.
inline std::string serialize_decomposition(const Decomposition& d) {
  std::string out = "tasks {\n";
  for (const SubTask& st : d.subtasks) {
    out += "  task " + st.id + " \"" + st.description + "\" order " +
           std::to_string(st.temporal_order);
    if (st.demand) {
      out += " demand " + std::string(to_string(st.demand->skill)) + " " +
             detail::format_amount(st.demand->amount);
    }
    out += " {\n";
    for (const ActionCall& call : st.actions) {
      out += "    " + std::string(to_string(call.skill)) + "(";
      for (size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ", ";
        out += call.args[i];
      }
      out += ");\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace crewplan

#endif  // CREWPLAN_DECOMP_FORMAT_HPP
