#pragma once

#include <stdexcept>
#include <string>

#include "rlz/term.hpp"

namespace rlz {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t pos_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(pos_) + ": " + what_), pos(pos_) {}
};

// Grammar (whitespace-insensitive, application left associative, \x. binds to
// the end of the expression):
//   t  ::= ident | "cc" | "#"ident | "nu"nat | t t | "\"ident"."t | "k["pi"]"
//   pi ::= "w_"ident | t "." pi | "?"ident
TermPtr parse_term(const std::string& text);
StackPtr parse_stack(const std::string& text);

// "<term> * <stack>" (also accepts the display star).
Process parse_process(const std::string& text);

}  // namespace rlz
