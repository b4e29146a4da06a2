#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lcc/derivation.hpp"
#include "lcc/term.hpp"
#include "lcc/types.hpp"

namespace lcc {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& what, int line_, int col_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" +
                           std::to_string(col_)),
        line(line_),
        col(col_) {}
};

// Terms: lowercase identifiers are variables, uppercase ones constructors,
// `\x. t` abstraction, juxtaposition application (left-associative),
// `{| C1 -> u1 ; C2 -> u2 |}. t` case analysis, `!` the daimon. Types: `$X`
// ordinary variables, `@a` data variables, uppercase constants,
// juxtaposition application, then `&`, then `|`, then right-associative
// `->`, with forall/exists bodies extending maximally right. `--` starts a
// line comment in every input.
TermPtr parse_term(const std::string& src);
TypePtr parse_type(const std::string& src);

// `;`-separated types; the empty string is the empty vector.
std::vector<TypePtr> parse_type_vector(const std::string& src);

// `T <= U`, `x: T, y: U |- t : T` (context empty: `|- t : T`), or the same
// with a case-binding literal as subject.
Judgment parse_judgment(const std::string& src);

std::string print_term(const TermPtr& t);
std::string print_binding(const CaseBinding& b);
std::string print_type(const TypePtr& t);
std::string print_type_vector(const std::vector<TypePtr>& v);
std::string print_context(const Context& c);
std::string print_judgment(const Judgment& j);

std::string read_file(const std::string& path);

}  // namespace lcc
