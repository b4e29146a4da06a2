#pragma once

#include <string>

#include "lcc/derivation.hpp"

namespace lcc {

// Derivation scripts: a parenthesized tree, one node per parenthesis group,
//   (rule-name "judgment" [key=value ...] premise...)
// with judgments in the usual concrete syntax. Witness keys:
//   ty="TYPE"  tv=$X|@a  var=x  i0=N  vec="T1; T2"  (vec="" is the empty vector)
// `--` starts a comment outside quoted strings. Throws ParseError.
Derivation parse_script(const std::string& src);

std::string print_script(const Derivation& d);

}  // namespace lcc
