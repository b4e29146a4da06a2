#pragma once

#include <string>
#include <vector>

#include "lcc/term.hpp"

namespace lcc {

// Size is node count: leaves count 1, abstraction adds 1 to its body,
// application adds 1 to both children, a case construct adds 1 to its
// scrutinee plus all branch bodies.
int term_size(const TermPtr& t);

struct EnumConfig {
  int max_size = 6;
  std::vector<std::string> constructors = {"C"};
  std::vector<std::string> variables = {};
  bool allow_daimon = true;
  bool closed_only = true;
  bool defined_only = false;
};

// Exhaustive and duplicate-free up to alpha: bound variables are canonically
// named x1, x2, ... by binder depth. Case bindings range over all subsets of
// the constructor alphabet (the empty one included), keys in sorted order.
// Deterministic order, smallest-first in enumerate_terms.
std::vector<TermPtr> enumerate_terms_of_size(int size, const EnumConfig& cfg);
std::vector<TermPtr> enumerate_terms(const EnumConfig& cfg);

}  // namespace lcc
