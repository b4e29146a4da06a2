#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

enum class TermKind { Var, Constr, Lam, App, Case, Daimon };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Finite map from constructor names to branch bodies. Branch order is kept
// for printing and position addressing; equality treats it as a function.
struct CaseBinding {
  std::vector<std::pair<std::string, TermPtr>> branches;

  bool contains(const std::string& c) const;
  TermPtr lookup(const std::string& c) const;  // null when absent
  std::size_t size() const { return branches.size(); }
  bool empty() const { return branches.empty(); }
};

struct Term {
  TermKind kind = TermKind::Daimon;
  std::string name;     // Var, Constr
  std::string bound;    // Lam binder
  TermPtr sub0;         // Lam body, App function, Case scrutinee
  TermPtr sub1;         // App argument
  CaseBinding binding;  // Case
};

// Variable names start with a lowercase letter, constructor names with an
// uppercase one; the two alphabets never meet.
bool is_variable_name(const std::string& s);
bool is_constructor_name(const std::string& s);

TermPtr var(std::string name);
TermPtr constr(std::string name);
TermPtr lam(std::string bound, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr app(TermPtr fun, const std::vector<TermPtr>& args);
TermPtr case_of(CaseBinding binding, TermPtr scrutinee);
TermPtr daimon();
CaseBinding make_binding(std::vector<std::pair<std::string, TermPtr>> branches);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const CaseBinding& b);
bool is_closed(const TermPtr& t);

// A name based on `base` that avoids everything in `avoid` (primes appended).
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of `u` for the free variable `x`.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u);
CaseBinding substitute(const CaseBinding& b, const std::string& x, const TermPtr& u);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const CaseBinding& a, const CaseBinding& b);

// Canonical serialization: equal exactly for alpha-equivalent terms.
// Bound variables become binder-depth indices and branches are ordered by
// key, so it doubles as a hash key for graph node identity.
std::string alpha_key(const TermPtr& t);

// Spine view: t == head applied to args, head not an application.
struct Spine {
  TermPtr head;
  std::vector<TermPtr> args;
};
Spine spine_of(const TermPtr& t);

// Structural measure. Applications add, case constructs multiply:
//   s(x) = s(c) = s(!) = 1, s(\x.t) = s(t)+1, s(t u) = s(t)+s(u),
//   s({|b|}.t) = s(t) * (s(b)+2), s(b) = sum of branch body measures.
std::uint64_t structural_measure(const TermPtr& t);
std::uint64_t structural_measure(const CaseBinding& b);

}  // namespace lcc
