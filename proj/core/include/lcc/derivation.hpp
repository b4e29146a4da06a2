#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcc/term.hpp"
#include "lcc/types.hpp"

namespace lcc {

// Typing environments map term variables to types; entry order is kept for
// printing but comparison is as a finite map with alpha-equal types.
struct Context {
  std::vector<std::pair<std::string, TypePtr>> entries;

  TypePtr lookup(const std::string& x) const;
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

bool context_eq(const Context& a, const Context& b);
std::set<TypeVar> context_free_type_vars(const Context& c);

struct Judgment {
  enum class Kind { Subtype, TermTyping, BindingTyping };
  Kind kind = Kind::Subtype;
  TypePtr lhs, rhs;     // Subtype
  Context ctx;          // typing judgments
  TermPtr subject;      // TermTyping
  CaseBinding binding;  // BindingTyping
  TypePtr ty;           // typing judgments
};

// Witnesses make checking syntax-directed: ty instantiates a quantifier
// (forall-elim, exists-intro, subs-free axioms), tv names the variable a
// quantifier rule uses in its premise, var names the context entry Union and
// Exist rewrite, i0 picks the case-binding branch, vec is the argument
// vector split.
struct Witness {
  std::optional<TypePtr> ty;
  std::optional<TypeVar> tv;
  std::optional<std::string> var;
  std::optional<int> i0;
  std::optional<std::vector<TypePtr>> vec;
};

struct Derivation {
  std::string rule;
  Judgment conclusion;
  Witness witness;
  std::vector<Derivation> premises;
};

// On rejection, node holds the premise-index path from the root to the first
// failing node (pre-order: a node's own schema is checked before its
// premises) and reason says what failed there.
struct CheckResult {
  bool ok = true;
  std::vector<int> node;
  std::string reason;
  std::vector<std::string> warnings;
};

CheckResult check_subtyping(const Derivation& d);
CheckResult check_typing(const Derivation& d);

// Dispatches on the conclusion's judgment kind.
CheckResult check_derivation(const Derivation& d);

// Bounded backward search for a sub-typing derivation. Anything returned
// passes check_subtyping; absence proves nothing.
std::optional<Derivation> search_subtyping(const TypePtr& lhs, const TypePtr& rhs,
                                           int max_depth);

}  // namespace lcc
