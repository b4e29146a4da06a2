#include "lcc/types.hpp"

#include <algorithm>

namespace lcc {

namespace {

TypePtr node(TypeKind kind, std::string name, TypePtr sub0, TypePtr sub1) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = kind;
  t->name = std::move(name);
  t->sub0 = std::move(sub0);
  t->sub1 = std::move(sub1);
  return t;
}

bool binds_data(TypeKind k) {
  return k == TypeKind::ForallData || k == TypeKind::ExistsData;
}

bool is_quantifier(TypeKind k) {
  return k == TypeKind::ForallOrd || k == TypeKind::ForallData ||
         k == TypeKind::ExistsOrd || k == TypeKind::ExistsData;
}

}  // namespace

TypePtr ord_var(std::string name) { return node(TypeKind::OrdVar, std::move(name), nullptr, nullptr); }
TypePtr data_var(std::string name) { return node(TypeKind::DataVar, std::move(name), nullptr, nullptr); }
TypePtr tconst(std::string name) { return node(TypeKind::Const, std::move(name), nullptr, nullptr); }
TypePtr tapp(TypePtr head, TypePtr arg) { return node(TypeKind::App, "", std::move(head), std::move(arg)); }
TypePtr arrow(TypePtr dom, TypePtr cod) { return node(TypeKind::Arrow, "", std::move(dom), std::move(cod)); }
TypePtr type_union(TypePtr lhs, TypePtr rhs) { return node(TypeKind::Union, "", std::move(lhs), std::move(rhs)); }
TypePtr type_inter(TypePtr lhs, TypePtr rhs) { return node(TypeKind::Inter, "", std::move(lhs), std::move(rhs)); }
TypePtr forall_ord(std::string name, TypePtr body) { return node(TypeKind::ForallOrd, std::move(name), std::move(body), nullptr); }
TypePtr forall_data(std::string name, TypePtr body) { return node(TypeKind::ForallData, std::move(name), std::move(body), nullptr); }
TypePtr exists_ord(std::string name, TypePtr body) { return node(TypeKind::ExistsOrd, std::move(name), std::move(body), nullptr); }
TypePtr exists_data(std::string name, TypePtr body) { return node(TypeKind::ExistsData, std::move(name), std::move(body), nullptr); }

bool is_data_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::DataVar:
    case TypeKind::Const:
      return true;
    case TypeKind::App:
      return is_data_type(t->sub0);
    case TypeKind::Union:
    case TypeKind::Inter:
      return is_data_type(t->sub0) && is_data_type(t->sub1);
    case TypeKind::ForallOrd:
    case TypeKind::ForallData:
    case TypeKind::ExistsOrd:
    case TypeKind::ExistsData:
      return is_data_type(t->sub0);
    case TypeKind::OrdVar:
    case TypeKind::Arrow:
      return false;
  }
  return false;
}

namespace {

bool wellformed_rec(const TypePtr& t, std::vector<int>& path, std::vector<int>& out) {
  if (t->kind == TypeKind::App && !is_data_type(t->sub0)) {
    out = path;
    return false;
  }
  auto descend = [&](const TypePtr& child, int idx) {
    path.push_back(idx);
    bool ok = wellformed_rec(child, path, out);
    path.pop_back();
    return ok;
  };
  if (t->sub0 && !descend(t->sub0, 0)) return false;
  if (t->sub1 && !descend(t->sub1, 1)) return false;
  return true;
}

}  // namespace

WellformedResult check_wellformed(const TypePtr& t) {
  WellformedResult r;
  std::vector<int> path;
  r.ok = wellformed_rec(t, path, r.position);
  return r;
}

namespace {

void free_vars_rec(const TypePtr& t, std::vector<TypeVar>& bound,
                   std::set<TypeVar>& out) {
  switch (t->kind) {
    case TypeKind::OrdVar: {
      TypeVar v{false, t->name};
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    }
    case TypeKind::DataVar: {
      TypeVar v{true, t->name};
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    }
    case TypeKind::Const:
      return;
    default:
      break;
  }
  if (is_quantifier(t->kind)) {
    bound.push_back(TypeVar{binds_data(t->kind), t->name});
    free_vars_rec(t->sub0, bound, out);
    bound.pop_back();
    return;
  }
  if (t->sub0) free_vars_rec(t->sub0, bound, out);
  if (t->sub1) free_vars_rec(t->sub1, bound, out);
}

std::string fresh_type_name(const std::string& base, const std::set<TypeVar>& avoid,
                            bool is_data) {
  std::string candidate = base;
  while (avoid.count(TypeVar{is_data, candidate})) candidate += '\'';
  return candidate;
}

TypePtr rename_bound(const TypePtr& quant, const std::set<TypeVar>& avoid);

TypePtr subst_rec(const TypePtr& t, const TypeVar& v, const TypePtr& r) {
  switch (t->kind) {
    case TypeKind::OrdVar:
      return (!v.is_data && t->name == v.name) ? r : t;
    case TypeKind::DataVar:
      return (v.is_data && t->name == v.name) ? r : t;
    case TypeKind::Const:
      return t;
    case TypeKind::App:
      return tapp(subst_rec(t->sub0, v, r), subst_rec(t->sub1, v, r));
    case TypeKind::Arrow:
      return arrow(subst_rec(t->sub0, v, r), subst_rec(t->sub1, v, r));
    case TypeKind::Union:
      return type_union(subst_rec(t->sub0, v, r), subst_rec(t->sub1, v, r));
    case TypeKind::Inter:
      return type_inter(subst_rec(t->sub0, v, r), subst_rec(t->sub1, v, r));
    default:
      break;
  }
  TypeVar binder{binds_data(t->kind), t->name};
  if (binder == v) return t;
  auto body_fv = type_free_vars(t->sub0);
  if (!body_fv.count(v)) return t;
  auto r_fv = type_free_vars(r);
  TypePtr quant = t;
  if (r_fv.count(binder)) {
    std::set<TypeVar> avoid = r_fv;
    avoid.insert(body_fv.begin(), body_fv.end());
    avoid.insert(v);
    quant = rename_bound(t, avoid);
  }
  return node(quant->kind, quant->name, subst_rec(quant->sub0, v, r), nullptr);
}

TypePtr rename_bound(const TypePtr& quant, const std::set<TypeVar>& avoid) {
  bool data = binds_data(quant->kind);
  std::string fresh = fresh_type_name(quant->name, avoid, data);
  TypeVar old{data, quant->name};
  TypePtr fresh_var = data ? data_var(fresh) : ord_var(fresh);
  return node(quant->kind, fresh, subst_rec(quant->sub0, old, fresh_var), nullptr);
}

}  // namespace

std::set<TypeVar> type_free_vars(const TypePtr& t) {
  std::vector<TypeVar> bound;
  std::set<TypeVar> out;
  free_vars_rec(t, bound, out);
  return out;
}

TypePtr type_substitute(const TypePtr& t, const TypeVar& v, const TypePtr& r) {
  if (v.is_data && !is_data_type(r))
    throw DataSubstitutionViolation("data variable @" + v.name +
                                    " replaced by a non-data type");
  return subst_rec(t, v, r);
}

namespace {

struct TypeAlphaEnv {
  std::vector<std::pair<TypeVar, int>> scopes;

  int lookup(const TypeVar& v) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
      if (it->first == v) return it->second;
    return -1;
  }
};

bool type_alpha_rec(const TypePtr& a, const TypePtr& b, TypeAlphaEnv& ea,
                    TypeAlphaEnv& eb, int depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::OrdVar:
    case TypeKind::DataVar: {
      TypeVar va{a->kind == TypeKind::DataVar, a->name};
      TypeVar vb{b->kind == TypeKind::DataVar, b->name};
      int la = ea.lookup(va);
      int lb = eb.lookup(vb);
      if (la != lb) return false;
      return la >= 0 || a->name == b->name;
    }
    case TypeKind::Const:
      return a->name == b->name;
    case TypeKind::App:
    case TypeKind::Arrow:
    case TypeKind::Union:
    case TypeKind::Inter:
      return type_alpha_rec(a->sub0, b->sub0, ea, eb, depth) &&
             type_alpha_rec(a->sub1, b->sub1, ea, eb, depth);
    default: {
      ea.scopes.emplace_back(TypeVar{binds_data(a->kind), a->name}, depth);
      eb.scopes.emplace_back(TypeVar{binds_data(b->kind), b->name}, depth);
      bool ok = type_alpha_rec(a->sub0, b->sub0, ea, eb, depth + 1);
      ea.scopes.pop_back();
      eb.scopes.pop_back();
      return ok;
    }
  }
}

}  // namespace

bool type_alpha_eq(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  TypeAlphaEnv ea, eb;
  return type_alpha_rec(a, b, ea, eb, 0);
}

TypePtr expand_type_application(TypePtr head, const std::vector<TypePtr>& args) {
  TypePtr acc = std::move(head);
  for (const auto& a : args) acc = tapp(acc, a);
  return acc;
}

TypePtr expand_arrow(const std::vector<TypePtr>& args, TypePtr result) {
  TypePtr acc = std::move(result);
  for (auto it = args.rbegin(); it != args.rend(); ++it) acc = arrow(*it, acc);
  return acc;
}

std::optional<TypePtr> peel_arrows(const TypePtr& t, const std::vector<TypePtr>& args) {
  TypePtr cur = t;
  for (const auto& a : args) {
    if (cur->kind != TypeKind::Arrow) return std::nullopt;
    if (!type_alpha_eq(cur->sub0, a)) return std::nullopt;
    cur = cur->sub1;
  }
  return cur;
}

TypeSpine type_spine_of(const TypePtr& t) {
  TypeSpine s;
  TypePtr cur = t;
  while (cur->kind == TypeKind::App) {
    s.args.push_back(cur->sub1);
    cur = cur->sub0;
  }
  s.head = cur;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

bool is_pure_data_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Const:
      return true;
    case TypeKind::App:
      return is_pure_data_type(t->sub0) && is_pure_data_type(t->sub1);
    default:
      return false;
  }
}

}  // namespace lcc
