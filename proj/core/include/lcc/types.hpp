#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcc {

// Ordinary variables ($X) range over all types, data variables (@a) only
// over data types. Type constants share their names with term constructors.
enum class TypeKind {
  OrdVar,
  DataVar,
  Const,
  App,
  Arrow,
  Union,
  Inter,
  ForallOrd,
  ForallData,
  ExistsOrd,
  ExistsData
};

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  TypeKind kind = TypeKind::OrdVar;
  std::string name;  // variables, Const, quantifier binder
  TypePtr sub0;      // App head, Arrow domain, Union/Inter left, quantifier body
  TypePtr sub1;      // App argument, Arrow codomain, Union/Inter right
};

TypePtr ord_var(std::string name);
TypePtr data_var(std::string name);
TypePtr tconst(std::string name);
TypePtr tapp(TypePtr head, TypePtr arg);
TypePtr arrow(TypePtr dom, TypePtr cod);
TypePtr type_union(TypePtr lhs, TypePtr rhs);
TypePtr type_inter(TypePtr lhs, TypePtr rhs);
TypePtr forall_ord(std::string name, TypePtr body);
TypePtr forall_data(std::string name, TypePtr body);
TypePtr exists_ord(std::string name, TypePtr body);
TypePtr exists_data(std::string name, TypePtr body);

struct TypeVar {
  bool is_data = false;
  std::string name;
  auto operator<=>(const TypeVar&) const = default;
};

// Data types: data variables, constants, applications with data heads,
// unions and intersections of data types, quantified data types. Ordinary
// variables and arrows are not data.
bool is_data_type(const TypePtr& t);

// Application heads must be data types everywhere inside t. On failure the
// child-index path of the offending application is reported.
struct WellformedResult {
  bool ok = true;
  std::vector<int> position;
};
WellformedResult check_wellformed(const TypePtr& t);

std::set<TypeVar> type_free_vars(const TypePtr& t);

struct DataSubstitutionViolation : std::runtime_error {
  explicit DataSubstitutionViolation(const std::string& what)
      : std::runtime_error(what) {}
};

// Capture-avoiding; replacing a data variable with a non-data type throws.
TypePtr type_substitute(const TypePtr& t, const TypeVar& v, const TypePtr& r);

bool type_alpha_eq(const TypePtr& a, const TypePtr& b);

// c(T1..Tk;T) reads as ((c T1)..Tk) T and (T1..Tk;T)->U as T1->..->Tk->T->U.
TypePtr expand_type_application(TypePtr head, const std::vector<TypePtr>& args);
TypePtr expand_arrow(const std::vector<TypePtr>& args, TypePtr result);

// Inverse of expand_arrow: strip k domains off an arrow chain, if possible.
std::optional<TypePtr> peel_arrows(const TypePtr& t, const std::vector<TypePtr>& args);

// Type constant spine of applications: head constant name plus arguments.
struct TypeSpine {
  TypePtr head;
  std::vector<TypePtr> args;
};
TypeSpine type_spine_of(const TypePtr& t);

// Pure data types are built from constants and application alone.
bool is_pure_data_type(const TypePtr& t);

}  // namespace lcc
