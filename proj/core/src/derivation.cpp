#include "lcc/derivation.hpp"

#include <algorithm>

#include "lcc/syntax.hpp"

namespace lcc {

TypePtr Context::lookup(const std::string& x) const {
  for (const auto& [k, t] : entries)
    if (k == x) return t;
  return nullptr;
}

bool context_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, t] : a.entries) {
    TypePtr u = b.lookup(k);
    if (!u || !type_alpha_eq(t, u)) return false;
  }
  return true;
}

std::set<TypeVar> context_free_type_vars(const Context& c) {
  std::set<TypeVar> out;
  for (const auto& [k, t] : c.entries) {
    auto fv = type_free_vars(t);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

namespace {

bool is_forall_kind(TypeKind k) {
  return k == TypeKind::ForallOrd || k == TypeKind::ForallData;
}

bool is_exists_kind(TypeKind k) {
  return k == TypeKind::ExistsOrd || k == TypeKind::ExistsData;
}

bool quant_binds_data(TypeKind k) {
  return k == TypeKind::ForallData || k == TypeKind::ExistsData;
}

TypePtr make_quant(TypeKind k, const std::string& name, TypePtr body) {
  switch (k) {
    case TypeKind::ForallOrd: return forall_ord(name, std::move(body));
    case TypeKind::ForallData: return forall_data(name, std::move(body));
    case TypeKind::ExistsOrd: return exists_ord(name, std::move(body));
    case TypeKind::ExistsData: return exists_data(name, std::move(body));
    default: throw std::logic_error("not a quantifier kind");
  }
}

TypeVar binder_of(const TypePtr& quant) {
  return TypeVar{quant_binds_data(quant->kind), quant->name};
}

bool wf_ok(const TypePtr& t) { return check_wellformed(t).ok; }

struct Checker {
  CheckResult result;
  std::vector<int> path;

  bool fail(const std::string& reason) {
    result.ok = false;
    result.node = path;
    result.reason = reason;
    return false;
  }

  void warn(const std::string& msg) {
    std::string where = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) where += ",";
      where += std::to_string(path[i]);
    }
    where += "]";
    result.warnings.push_back(where + " " + msg);
  }

  bool judgment_wf(const Judgment& j) {
    switch (j.kind) {
      case Judgment::Kind::Subtype:
        if (!j.lhs || !j.rhs) return fail("sub-typing judgment misses a side");
        if (!wf_ok(j.lhs) || !wf_ok(j.rhs))
          return fail("ill-formed type: application head is not a data type");
        return true;
      default:
        if (!j.ty) return fail("typing judgment misses its type");
        if (!wf_ok(j.ty))
          return fail("ill-formed type: application head is not a data type");
        for (const auto& [k, t] : j.ctx.entries)
          if (!wf_ok(t))
            return fail("ill-formed context type for " + k);
        if (j.kind == Judgment::Kind::TermTyping && !j.subject)
          return fail("typing judgment misses its subject");
        return true;
    }
  }

  bool check(const Derivation& d) {
    if (!judgment_wf(d.conclusion)) return false;
    bool local = d.conclusion.kind == Judgment::Kind::Subtype ? subtype_node(d)
                                                              : typing_node(d);
    if (!local) return false;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      bool ok = check(d.premises[i]);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool need_premises(const Derivation& d, std::size_t n) {
    if (d.premises.size() != n)
      return fail(d.rule + " expects " + std::to_string(n) + " premises, has " +
                  std::to_string(d.premises.size()));
    return true;
  }

  bool premise_subtype(const Derivation& d, std::size_t i) {
    if (d.premises[i].conclusion.kind != Judgment::Kind::Subtype)
      return fail(d.rule + ": premise " + std::to_string(i) +
                  " must be a sub-typing judgment");
    return true;
  }

  bool premise_typing(const Derivation& d, std::size_t i) {
    if (d.premises[i].conclusion.kind == Judgment::Kind::Subtype)
      return fail(d.rule + ": premise " + std::to_string(i) +
                  " must be a typing judgment");
    return true;
  }

  // ----- sub-typing ------------------------------------------------------

  bool subtype_node(const Derivation& d) {
    const TypePtr& l = d.conclusion.lhs;
    const TypePtr& r = d.conclusion.rhs;
    const std::string& rule = d.rule;

    if (rule == "refl") {
      if (!need_premises(d, 0)) return false;
      if (!type_alpha_eq(l, r)) return fail("refl: sides differ");
      return true;
    }
    if (rule == "trans") {
      if (!need_premises(d, 2) || !premise_subtype(d, 0) || !premise_subtype(d, 1))
        return false;
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!type_alpha_eq(p0.lhs, l)) return fail("trans: first premise starts elsewhere");
      if (!type_alpha_eq(p1.rhs, r)) return fail("trans: second premise ends elsewhere");
      if (!type_alpha_eq(p0.rhs, p1.lhs)) return fail("trans: middle types differ");
      return true;
    }
    if (rule == "arrow") {
      if (!need_premises(d, 2) || !premise_subtype(d, 0) || !premise_subtype(d, 1))
        return false;
      if (l->kind != TypeKind::Arrow || r->kind != TypeKind::Arrow)
        return fail("arrow: both sides must be arrow types");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!type_alpha_eq(p0.lhs, r->sub0) || !type_alpha_eq(p0.rhs, l->sub0))
        return fail("arrow: first premise is not the contravariant domain comparison");
      if (!type_alpha_eq(p1.lhs, l->sub1) || !type_alpha_eq(p1.rhs, r->sub1))
        return fail("arrow: second premise is not the codomain comparison");
      return true;
    }
    if (rule == "app") {
      if (!need_premises(d, 2) || !premise_subtype(d, 0) || !premise_subtype(d, 1))
        return false;
      if (l->kind != TypeKind::App || r->kind != TypeKind::App)
        return fail("app: both sides must be type applications");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!type_alpha_eq(p0.lhs, l->sub0) || !type_alpha_eq(p0.rhs, r->sub0))
        return fail("app: first premise must compare the heads");
      if (!type_alpha_eq(p1.lhs, l->sub1) || !type_alpha_eq(p1.rhs, r->sub1))
        return fail("app: second premise must compare the arguments");
      return true;
    }
    if (rule == "union-intro-l" || rule == "union-intro-r") {
      if (!need_premises(d, 0)) return false;
      if (r->kind != TypeKind::Union) return fail(rule + ": right side must be a union");
      const TypePtr& side = rule == "union-intro-l" ? r->sub0 : r->sub1;
      if (!type_alpha_eq(l, side)) return fail(rule + ": left side is not that component");
      return true;
    }
    if (rule == "union-elim") {
      if (!need_premises(d, 2) || !premise_subtype(d, 0) || !premise_subtype(d, 1))
        return false;
      if (l->kind != TypeKind::Union) return fail("union-elim: left side must be a union");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!type_alpha_eq(p0.lhs, l->sub0) || !type_alpha_eq(p0.rhs, r))
        return fail("union-elim: first premise mismatches");
      if (!type_alpha_eq(p1.lhs, l->sub1) || !type_alpha_eq(p1.rhs, r))
        return fail("union-elim: second premise mismatches");
      return true;
    }
    if (rule == "inter-intro") {
      if (!need_premises(d, 2) || !premise_subtype(d, 0) || !premise_subtype(d, 1))
        return false;
      if (r->kind != TypeKind::Inter)
        return fail("inter-intro: right side must be an intersection");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!type_alpha_eq(p0.lhs, l) || !type_alpha_eq(p0.rhs, r->sub0))
        return fail("inter-intro: first premise mismatches");
      if (!type_alpha_eq(p1.lhs, l) || !type_alpha_eq(p1.rhs, r->sub1))
        return fail("inter-intro: second premise mismatches");
      return true;
    }
    if (rule == "inter-elim-l" || rule == "inter-elim-r") {
      if (!need_premises(d, 0)) return false;
      if (l->kind != TypeKind::Inter)
        return fail(rule + ": left side must be an intersection");
      const TypePtr& side = rule == "inter-elim-l" ? l->sub0 : l->sub1;
      if (!type_alpha_eq(r, side)) return fail(rule + ": right side is not that component");
      return true;
    }
    if (rule == "forall-intro") {
      if (!need_premises(d, 1) || !premise_subtype(d, 0)) return false;
      if (!is_forall_kind(r->kind))
        return fail("forall-intro: right side must be universally quantified");
      TypeVar v = d.witness.tv.value_or(binder_of(r));
      if (v.is_data != quant_binds_data(r->kind))
        return fail("forall-intro: witness variable kind mismatches the quantifier");
      const Judgment& p0 = d.premises[0].conclusion;
      if (!type_alpha_eq(p0.lhs, l)) return fail("forall-intro: premise left side differs");
      if (!type_alpha_eq(make_quant(r->kind, v.name, p0.rhs), r))
        return fail("forall-intro: quantifying the premise does not give the conclusion");
      if (type_free_vars(l).count(v))
        return fail("forall-intro: " + std::string(v.is_data ? "@" : "$") + v.name +
                    " occurs free on the left");
      return true;
    }
    if (rule == "exists-elim") {
      if (!need_premises(d, 1) || !premise_subtype(d, 0)) return false;
      if (!is_exists_kind(l->kind))
        return fail("exists-elim: left side must be existentially quantified");
      TypeVar v = d.witness.tv.value_or(binder_of(l));
      if (v.is_data != quant_binds_data(l->kind))
        return fail("exists-elim: witness variable kind mismatches the quantifier");
      const Judgment& p0 = d.premises[0].conclusion;
      if (!type_alpha_eq(p0.rhs, r)) return fail("exists-elim: premise right side differs");
      if (!type_alpha_eq(make_quant(l->kind, v.name, p0.lhs), l))
        return fail("exists-elim: quantifying the premise does not give the conclusion");
      if (type_free_vars(r).count(v))
        return fail("exists-elim: " + std::string(v.is_data ? "@" : "$") + v.name +
                    " occurs free on the right");
      return true;
    }
    if (rule == "forall-elim" || rule == "forall-elim-data") {
      if (!need_premises(d, 0)) return false;
      bool data = rule == "forall-elim-data";
      if (l->kind != (data ? TypeKind::ForallData : TypeKind::ForallOrd))
        return fail(rule + ": left side must be the matching universal quantifier");
      if (!d.witness.ty) return fail(rule + ": requires witness ty");
      if (data && !is_data_type(*d.witness.ty))
        return fail("forall-elim-data: witness type is not a data type");
      TypePtr instantiated = type_substitute(l->sub0, binder_of(l), *d.witness.ty);
      if (!type_alpha_eq(r, instantiated))
        return fail(rule + ": right side is not the instantiated body");
      return true;
    }
    if (rule == "exists-intro" || rule == "exists-intro-data") {
      if (!need_premises(d, 0)) return false;
      bool data = rule == "exists-intro-data";
      if (r->kind != (data ? TypeKind::ExistsData : TypeKind::ExistsOrd))
        return fail(rule + ": right side must be the matching existential quantifier");
      if (!d.witness.ty) return fail(rule + ": requires witness ty");
      if (data && !is_data_type(*d.witness.ty))
        return fail("exists-intro-data: witness type is not a data type");
      TypePtr instantiated = type_substitute(r->sub0, binder_of(r), *d.witness.ty);
      if (!type_alpha_eq(l, instantiated))
        return fail(rule + ": left side is not the instantiated body");
      return true;
    }
    if (rule == "data") {
      if (!need_premises(d, 0)) return false;
      if (!is_data_type(l)) return fail("data: left side must be a data type");
      if (r->kind != TypeKind::Arrow || r->sub1->kind != TypeKind::App)
        return fail("data: right side must be T -> D T");
      if (!type_alpha_eq(r->sub1->sub0, l) || !type_alpha_eq(r->sub1->sub1, r->sub0))
        return fail("data: right side must be T -> D T with D the left side");
      return true;
    }
    if (rule == "constr") {
      if (!need_premises(d, 0)) return false;
      if (l->kind != TypeKind::Inter)
        return fail("constr: left side must be an intersection");
      TypeSpine a = type_spine_of(l->sub0);
      TypeSpine b = type_spine_of(l->sub1);
      if (a.head->kind != TypeKind::Const || b.head->kind != TypeKind::Const)
        return fail("constr: both components must be constant-headed applications");
      if (a.head->name == b.head->name)
        return fail("constr: the constructors must differ");
      if (!(r->kind == TypeKind::ForallData && r->sub0->kind == TypeKind::DataVar &&
            r->sub0->name == r->name))
        return fail("constr: right side must be the bottom data type forall @a. @a");
      return true;
    }

    // distributivity axioms, all premise-free; the conclusion's right side
    // is rebuilt from the left side's pieces and compared up to alpha
    auto axiom = [&](bool shape_ok, const TypePtr& expected_rhs,
                     const char* shape_msg) {
      if (!need_premises(d, 0)) return false;
      if (!shape_ok) return fail(rule + ": " + shape_msg);
      if (!type_alpha_eq(r, expected_rhs))
        return fail(rule + ": right side is not the distributed form");
      return true;
    };

    if (rule == "app-inter") {
      bool shape = l->kind == TypeKind::Inter && l->sub0->kind == TypeKind::App &&
                   l->sub1->kind == TypeKind::App;
      TypePtr expected =
          shape ? tapp(type_inter(l->sub0->sub0, l->sub1->sub0),
                       type_inter(l->sub0->sub1, l->sub1->sub1))
                : nullptr;
      return axiom(shape, expected, "left side must be an intersection of applications");
    }
    if (rule == "app-forall") {
      bool shape = is_forall_kind(l->kind) && l->sub0->kind == TypeKind::App;
      TypePtr expected =
          shape ? tapp(make_quant(l->kind, l->name, l->sub0->sub0),
                       make_quant(l->kind, l->name, l->sub0->sub1))
                : nullptr;
      return axiom(shape, expected, "left side must be a quantified application");
    }
    if (rule == "arrow-inter" || rule == "arrow-union") {
      bool shape = l->kind == TypeKind::Inter && l->sub0->kind == TypeKind::Arrow &&
                   l->sub1->kind == TypeKind::Arrow;
      TypePtr expected = nullptr;
      if (shape) {
        if (rule == "arrow-inter")
          expected = arrow(type_inter(l->sub0->sub0, l->sub1->sub0),
                           type_inter(l->sub0->sub1, l->sub1->sub1));
        else
          expected = arrow(type_union(l->sub0->sub0, l->sub1->sub0),
                           type_union(l->sub0->sub1, l->sub1->sub1));
      }
      return axiom(shape, expected, "left side must be an intersection of arrows");
    }
    if (rule == "arrow-forall") {
      bool shape = is_forall_kind(l->kind) && l->sub0->kind == TypeKind::Arrow;
      TypePtr expected =
          shape ? arrow(make_quant(l->kind, l->name, l->sub0->sub0),
                        make_quant(l->kind, l->name, l->sub0->sub1))
                : nullptr;
      return axiom(shape, expected, "left side must be a quantified arrow");
    }
    if (rule == "arrow-exists") {
      bool shape = is_forall_kind(l->kind) && l->sub0->kind == TypeKind::Arrow;
      TypePtr expected = nullptr;
      if (shape) {
        TypeKind ex = l->kind == TypeKind::ForallOrd ? TypeKind::ExistsOrd
                                                     : TypeKind::ExistsData;
        expected = arrow(make_quant(ex, l->name, l->sub0->sub0),
                         make_quant(ex, l->name, l->sub0->sub1));
      }
      return axiom(shape, expected, "left side must be a quantified arrow");
    }
    if (rule == "union-app-r") {
      bool shape = l->kind == TypeKind::App && l->sub1->kind == TypeKind::Union;
      TypePtr expected = shape ? type_union(tapp(l->sub0, l->sub1->sub0),
                                            tapp(l->sub0, l->sub1->sub1))
                               : nullptr;
      return axiom(shape, expected, "left side must apply to a union");
    }
    if (rule == "union-app-l") {
      bool shape = l->kind == TypeKind::App && l->sub0->kind == TypeKind::Union;
      TypePtr expected = shape ? type_union(tapp(l->sub0->sub0, l->sub1),
                                            tapp(l->sub0->sub1, l->sub1))
                               : nullptr;
      return axiom(shape, expected, "left side must be a union applied to a type");
    }
    if (rule == "exists-app-r") {
      bool shape = l->kind == TypeKind::App && is_exists_kind(l->sub1->kind);
      if (shape && type_free_vars(l->sub0).count(binder_of(l->sub1)))
        return fail("exists-app-r: the bound variable occurs free in the head");
      TypePtr expected = shape ? make_quant(l->sub1->kind, l->sub1->name,
                                            tapp(l->sub0, l->sub1->sub0))
                               : nullptr;
      return axiom(shape, expected, "left side must apply to an existential");
    }
    if (rule == "exists-app-l") {
      bool shape = l->kind == TypeKind::App && is_exists_kind(l->sub0->kind);
      if (shape && type_free_vars(l->sub1).count(binder_of(l->sub0)))
        return fail("exists-app-l: the bound variable occurs free in the argument");
      TypePtr expected = shape ? make_quant(l->sub0->kind, l->sub0->name,
                                            tapp(l->sub0->sub0, l->sub1))
                               : nullptr;
      return axiom(shape, expected, "left side must be an existential applied to a type");
    }
    if (rule == "union-forall") {
      bool shape = is_forall_kind(l->kind) && l->sub0->kind == TypeKind::Union;
      if (shape && type_free_vars(l->sub0->sub1).count(binder_of(l)))
        return fail("union-forall: the bound variable occurs free in the right component");
      TypePtr expected = shape ? type_union(make_quant(l->kind, l->name, l->sub0->sub0),
                                            l->sub0->sub1)
                               : nullptr;
      return axiom(shape, expected, "left side must be a quantified union");
    }
    if (rule == "exists-inter") {
      bool shape = l->kind == TypeKind::Inter && is_exists_kind(l->sub0->kind);
      if (shape && type_free_vars(l->sub1).count(binder_of(l->sub0)))
        return fail("exists-inter: the bound variable occurs free in the right component");
      TypePtr expected = shape ? make_quant(l->sub0->kind, l->sub0->name,
                                            type_inter(l->sub0->sub0, l->sub1))
                               : nullptr;
      return axiom(shape, expected, "left side must intersect an existential");
    }

    return fail("unknown sub-typing rule " + rule);
  }

  // ----- typing ----------------------------------------------------------

  bool subjects_eq(const Judgment& a, const Judgment& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Judgment::Kind::TermTyping) return alpha_eq(a.subject, b.subject);
    return alpha_eq(a.binding, b.binding);
  }

  bool typing_node(const Derivation& d) {
    const Judgment& c = d.conclusion;
    const std::string& rule = d.rule;
    bool is_term = c.kind == Judgment::Kind::TermTyping;

    if (rule == "init") {
      if (!need_premises(d, 0)) return false;
      if (!is_term || c.subject->kind != TermKind::Var)
        return fail("init: subject must be a variable");
      TypePtr in_ctx = c.ctx.lookup(c.subject->name);
      if (!in_ctx) return fail("init: " + c.subject->name + " is not in the context");
      if (!type_alpha_eq(in_ctx, c.ty))
        return fail("init: context gives " + c.subject->name + " a different type");
      return true;
    }
    if (rule == "false") {
      if (!need_premises(d, 0)) return false;
      if (!is_term || c.subject->kind != TermKind::Daimon)
        return fail("false: subject must be the daimon");
      return true;
    }
    if (rule == "constr") {
      if (!need_premises(d, 0)) return false;
      if (!is_term || c.subject->kind != TermKind::Constr)
        return fail("constr: subject must be a constructor");
      if (!(c.ty->kind == TypeKind::Const && c.ty->name == c.subject->name))
        return fail("constr: the type must be the constructor's own constant");
      return true;
    }
    if (rule == "arrow-intro") {
      if (!need_premises(d, 1) || !premise_typing(d, 0)) return false;
      if (!is_term || c.subject->kind != TermKind::Lam)
        return fail("arrow-intro: subject must be an abstraction");
      if (c.ty->kind != TypeKind::Arrow)
        return fail("arrow-intro: conclusion type must be an arrow");
      const Judgment& p = d.premises[0].conclusion;
      if (p.kind != Judgment::Kind::TermTyping)
        return fail("arrow-intro: premise must type a term");
      const std::string& x = c.subject->bound;
      if (c.ctx.lookup(x))
        return fail("arrow-intro: binder " + x +
                    " shadows a context variable; rename the abstraction");
      if (p.ctx.size() != c.ctx.size() + 1)
        return fail("arrow-intro: premise context must extend the conclusion's by the binder");
      TypePtr bound_ty = p.ctx.lookup(x);
      if (!bound_ty || !type_alpha_eq(bound_ty, c.ty->sub0))
        return fail("arrow-intro: premise must bind " + x + " at the domain type");
      for (const auto& [k, t] : c.ctx.entries) {
        TypePtr u = p.ctx.lookup(k);
        if (!u || !type_alpha_eq(t, u))
          return fail("arrow-intro: premise context changes " + k);
      }
      if (!alpha_eq(p.subject, c.subject->sub0))
        return fail("arrow-intro: premise subject is not the body");
      if (!type_alpha_eq(p.ty, c.ty->sub1))
        return fail("arrow-intro: premise type is not the codomain");
      return true;
    }
    if (rule == "arrow-elim") {
      if (!need_premises(d, 2) || !premise_typing(d, 0) || !premise_typing(d, 1))
        return false;
      if (!is_term || c.subject->kind != TermKind::App)
        return fail("arrow-elim: subject must be an application");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (p0.kind != Judgment::Kind::TermTyping || p1.kind != Judgment::Kind::TermTyping)
        return fail("arrow-elim: premises must type terms");
      if (!context_eq(p0.ctx, c.ctx) || !context_eq(p1.ctx, c.ctx))
        return fail("arrow-elim: premises must share the conclusion's context");
      if (!alpha_eq(p0.subject, c.subject->sub0))
        return fail("arrow-elim: first premise subject is not the function");
      if (!alpha_eq(p1.subject, c.subject->sub1))
        return fail("arrow-elim: second premise subject is not the argument");
      if (p0.ty->kind != TypeKind::Arrow)
        return fail("arrow-elim: the function premise must have an arrow type");
      if (!type_alpha_eq(p0.ty->sub0, p1.ty))
        return fail("arrow-elim: argument type mismatches the domain");
      if (!type_alpha_eq(p0.ty->sub1, c.ty))
        return fail("arrow-elim: conclusion type mismatches the codomain");
      return true;
    }
    if (rule == "case") {
      if (!need_premises(d, 2) || !premise_typing(d, 0) || !premise_typing(d, 1))
        return false;
      if (!is_term || c.subject->kind != TermKind::Case)
        return fail("case: subject must be a case construct");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (p0.kind != Judgment::Kind::TermTyping)
        return fail("case: first premise must type the scrutinee");
      if (p1.kind != Judgment::Kind::BindingTyping)
        return fail("case: second premise must type the binding");
      if (!context_eq(p0.ctx, c.ctx) || !context_eq(p1.ctx, c.ctx))
        return fail("case: premises must share the conclusion's context");
      if (!alpha_eq(p0.subject, c.subject->sub0))
        return fail("case: first premise subject is not the scrutinee");
      if (!alpha_eq(p1.binding, c.subject->binding))
        return fail("case: second premise subject is not the binding");
      std::vector<TypePtr> vec = d.witness.vec.value_or(std::vector<TypePtr>{});
      auto peeled = peel_arrows(p0.ty, vec);
      if (!peeled)
        return fail("case: the scrutinee type does not decompose along the witness vector");
      if (p1.ty->kind != TypeKind::Arrow)
        return fail("case: the binding premise must have an arrow type");
      if (!type_alpha_eq(p1.ty->sub0, *peeled))
        return fail("case: binding domain mismatches the scrutinee result type");
      if (!type_alpha_eq(c.ty, expand_arrow(vec, p1.ty->sub1)))
        return fail("case: conclusion type is not the vector arrow to the binding codomain");
      return true;
    }
    if (rule == "cb") {
      if (c.kind != Judgment::Kind::BindingTyping)
        return fail("cb: conclusion must type a case binding");
      std::size_t n = c.binding.size();
      if (!need_premises(d, n)) return false;
      if (!d.witness.i0) return fail("cb: requires witness i0");
      int i0 = *d.witness.i0;
      if (i0 < 1 || i0 > static_cast<int>(n))
        return fail("cb: branch index i0=" + std::to_string(i0) + " is out of range");
      for (std::size_t i = 0; i < n; ++i) {
        if (!premise_typing(d, i)) return false;
        const Judgment& p = d.premises[i].conclusion;
        if (p.kind != Judgment::Kind::TermTyping)
          return fail("cb: premises must type the branch bodies");
        if (!context_eq(p.ctx, c.ctx))
          return fail("cb: premise " + std::to_string(i) +
                      " must share the conclusion's context");
        if (!alpha_eq(p.subject, c.binding.branches[i].second))
          return fail("cb: premise " + std::to_string(i) +
                      " does not type branch " + c.binding.branches[i].first);
      }
      std::vector<TypePtr> vec = d.witness.vec.value_or(std::vector<TypePtr>{});
      const Judgment& pi = d.premises[i0 - 1].conclusion;
      auto peeled = peel_arrows(pi.ty, vec);
      if (!peeled)
        return fail("cb: the chosen premise type does not decompose along the witness vector");
      TypePtr head = tconst(c.binding.branches[i0 - 1].first);
      TypePtr expected = arrow(expand_type_application(head, vec), *peeled);
      if (!type_alpha_eq(c.ty, expected))
        return fail("cb: conclusion type must be " + print_type(expected));
      return true;
    }
    if (rule == "cb-bot") {
      if (c.kind != Judgment::Kind::BindingTyping)
        return fail("cb-bot: conclusion must type a case binding");
      std::size_t n = c.binding.size();
      if (!need_premises(d, n)) return false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!premise_typing(d, i)) return false;
        const Judgment& p = d.premises[i].conclusion;
        if (p.kind != Judgment::Kind::TermTyping)
          return fail("cb-bot: premises must type the branch bodies");
        if (!context_eq(p.ctx, c.ctx))
          return fail("cb-bot: premise " + std::to_string(i) +
                      " must share the conclusion's context");
        if (!alpha_eq(p.subject, c.binding.branches[i].second))
          return fail("cb-bot: premise " + std::to_string(i) +
                      " does not type branch " + c.binding.branches[i].first);
      }
      bool shape = c.ty->kind == TypeKind::Arrow &&
                   c.ty->sub0->kind == TypeKind::ForallData &&
                   c.ty->sub0->sub0->kind == TypeKind::DataVar &&
                   c.ty->sub0->sub0->name == c.ty->sub0->name &&
                   c.ty->sub1->kind == TypeKind::ForallOrd &&
                   c.ty->sub1->sub0->kind == TypeKind::OrdVar &&
                   c.ty->sub1->sub0->name == c.ty->sub1->name;
      if (!shape)
        return fail("cb-bot: type must be (forall @a. @a) -> forall $X. $X");
      return true;
    }
    if (rule == "univ") {
      if (!need_premises(d, 1) || !premise_typing(d, 0)) return false;
      if (!is_forall_kind(c.ty->kind))
        return fail("univ: conclusion type must be universally quantified");
      const Judgment& p = d.premises[0].conclusion;
      if (!subjects_eq(p, c)) return fail("univ: premise subject differs");
      if (!context_eq(p.ctx, c.ctx)) return fail("univ: premise context differs");
      TypeVar v = d.witness.tv.value_or(binder_of(c.ty));
      if (v.is_data != quant_binds_data(c.ty->kind))
        return fail("univ: witness variable kind mismatches the quantifier");
      if (!type_alpha_eq(make_quant(c.ty->kind, v.name, p.ty), c.ty))
        return fail("univ: quantifying the premise type does not give the conclusion");
      if (context_free_type_vars(c.ctx).count(v))
        return fail("univ: " + std::string(v.is_data ? "@" : "$") + v.name +
                    " occurs free in the context");
      return true;
    }
    if (rule == "inter") {
      if (!need_premises(d, 2) || !premise_typing(d, 0) || !premise_typing(d, 1))
        return false;
      if (c.ty->kind != TypeKind::Inter)
        return fail("inter: conclusion type must be an intersection");
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!subjects_eq(p0, c) || !subjects_eq(p1, c))
        return fail("inter: premise subjects differ");
      if (!context_eq(p0.ctx, c.ctx) || !context_eq(p1.ctx, c.ctx))
        return fail("inter: premise contexts differ");
      if (!type_alpha_eq(p0.ty, c.ty->sub0) || !type_alpha_eq(p1.ty, c.ty->sub1))
        return fail("inter: premise types are not the two components");
      return true;
    }
    if (rule == "exist") {
      if (!need_premises(d, 1) || !premise_typing(d, 0)) return false;
      if (!d.witness.var) return fail("exist: requires witness var");
      const std::string& x = *d.witness.var;
      TypePtr ex_ty = c.ctx.lookup(x);
      if (!ex_ty) return fail("exist: " + x + " is not in the context");
      if (!is_exists_kind(ex_ty->kind))
        return fail("exist: " + x + " must have an existential type");
      TypeVar v = d.witness.tv.value_or(binder_of(ex_ty));
      if (v.is_data != quant_binds_data(ex_ty->kind))
        return fail("exist: witness variable kind mismatches the quantifier");
      const Judgment& p = d.premises[0].conclusion;
      if (!subjects_eq(p, c)) return fail("exist: premise subject differs");
      if (!type_alpha_eq(p.ty, c.ty)) return fail("exist: premise type differs");
      TypePtr opened = p.ctx.lookup(x);
      if (!opened) return fail("exist: premise context misses " + x);
      if (!type_alpha_eq(make_quant(ex_ty->kind, v.name, opened), ex_ty))
        return fail("exist: quantifying the premise binding does not give the context type");
      if (p.ctx.size() != c.ctx.size())
        return fail("exist: premise context resizes");
      for (const auto& [k, t] : c.ctx.entries) {
        if (k == x) continue;
        TypePtr u = p.ctx.lookup(k);
        if (!u || !type_alpha_eq(t, u))
          return fail("exist: premise context changes " + k);
      }
      if (type_free_vars(c.ty).count(v))
        return fail("exist: " + std::string(v.is_data ? "@" : "$") + v.name +
                    " occurs free in the conclusion type");
      Context rest;
      for (const auto& e : c.ctx.entries)
        if (e.first != x) rest.entries.push_back(e);
      if (context_free_type_vars(rest).count(v))
        warn("exist: " + std::string(v.is_data ? "@" : "$") + v.name +
             " stays free in the rest of the context");
      return true;
    }
    if (rule == "union") {
      if (!need_premises(d, 2) || !premise_typing(d, 0) || !premise_typing(d, 1))
        return false;
      if (!d.witness.var) return fail("union: requires witness var");
      const std::string& x = *d.witness.var;
      TypePtr u_ty = c.ctx.lookup(x);
      if (!u_ty) return fail("union: " + x + " is not in the context");
      if (u_ty->kind != TypeKind::Union)
        return fail("union: " + x + " must have a union type");
      const Judgment* ps[2] = {&d.premises[0].conclusion, &d.premises[1].conclusion};
      const TypePtr sides[2] = {u_ty->sub0, u_ty->sub1};
      for (int k = 0; k < 2; ++k) {
        const Judgment& p = *ps[k];
        if (!subjects_eq(p, c)) return fail("union: premise subject differs");
        if (!type_alpha_eq(p.ty, c.ty)) return fail("union: premise type differs");
        TypePtr split = p.ctx.lookup(x);
        if (!split || !type_alpha_eq(split, sides[k]))
          return fail("union: premise " + std::to_string(k) +
                      " must bind " + x + " at that union component");
        if (p.ctx.size() != c.ctx.size()) return fail("union: premise context resizes");
        for (const auto& [key, t] : c.ctx.entries) {
          if (key == x) continue;
          TypePtr u = p.ctx.lookup(key);
          if (!u || !type_alpha_eq(t, u))
            return fail("union: premise context changes " + key);
        }
      }
      return true;
    }
    if (rule == "subs") {
      if (!need_premises(d, 2) || !premise_typing(d, 0) || !premise_subtype(d, 1))
        return false;
      const Judgment& p0 = d.premises[0].conclusion;
      const Judgment& p1 = d.premises[1].conclusion;
      if (!subjects_eq(p0, c)) return fail("subs: premise subject differs");
      if (!context_eq(p0.ctx, c.ctx)) return fail("subs: premise context differs");
      if (!type_alpha_eq(p1.lhs, p0.ty))
        return fail("subs: the sub-typing premise must start from the premise type");
      if (!type_alpha_eq(p1.rhs, c.ty))
        return fail("subs: the sub-typing premise must end at the conclusion type");
      return true;
    }
    return fail("unknown typing rule " + rule);
  }
};

}  // namespace

CheckResult check_subtyping(const Derivation& d) {
  Checker c;
  if (d.conclusion.kind != Judgment::Kind::Subtype) {
    c.fail("check_subtyping expects a sub-typing conclusion");
    return c.result;
  }
  c.check(d);
  return c.result;
}

CheckResult check_typing(const Derivation& d) {
  Checker c;
  if (d.conclusion.kind == Judgment::Kind::Subtype) {
    c.fail("check_typing expects a typing conclusion");
    return c.result;
  }
  c.check(d);
  return c.result;
}

CheckResult check_derivation(const Derivation& d) {
  return d.conclusion.kind == Judgment::Kind::Subtype ? check_subtyping(d)
                                                      : check_typing(d);
}

// ----- search --------------------------------------------------------------

namespace {

Judgment sub_judgment(const TypePtr& l, const TypePtr& r) {
  Judgment j;
  j.kind = Judgment::Kind::Subtype;
  j.lhs = l;
  j.rhs = r;
  return j;
}

Derivation leaf(std::string rule, const TypePtr& l, const TypePtr& r,
                Witness w = {}) {
  return Derivation{std::move(rule), sub_judgment(l, r), std::move(w), {}};
}

Derivation node2(std::string rule, const TypePtr& l, const TypePtr& r,
                 Derivation p0, Derivation p1, Witness w = {}) {
  Derivation d{std::move(rule), sub_judgment(l, r), std::move(w), {}};
  d.premises.push_back(std::move(p0));
  d.premises.push_back(std::move(p1));
  return d;
}

Derivation node1(std::string rule, const TypePtr& l, const TypePtr& r,
                 Derivation p0, Witness w = {}) {
  Derivation d{std::move(rule), sub_judgment(l, r), std::move(w), {}};
  d.premises.push_back(std::move(p0));
  return d;
}

// First-order matching of `target` against `pattern` where `hole` is the one
// unknown; purely syntactic on binders, good enough to guess instantiations.
bool match_rec(const TypePtr& pattern, const TypePtr& target, const TypeVar& hole,
               int shadow, std::optional<TypePtr>& out) {
  bool is_hole =
      shadow == 0 &&
      ((pattern->kind == TypeKind::OrdVar && !hole.is_data && pattern->name == hole.name) ||
       (pattern->kind == TypeKind::DataVar && hole.is_data && pattern->name == hole.name));
  if (is_hole) {
    if (out) return type_alpha_eq(*out, target);
    out = target;
    return true;
  }
  if (pattern->kind != target->kind) return false;
  switch (pattern->kind) {
    case TypeKind::OrdVar:
    case TypeKind::DataVar:
    case TypeKind::Const:
      return pattern->name == target->name;
    case TypeKind::App:
    case TypeKind::Arrow:
    case TypeKind::Union:
    case TypeKind::Inter:
      return match_rec(pattern->sub0, target->sub0, hole, shadow, out) &&
             match_rec(pattern->sub1, target->sub1, hole, shadow, out);
    default: {
      if (pattern->name != target->name) return false;
      bool shadows = quant_binds_data(pattern->kind) == hole.is_data &&
                     pattern->name == hole.name;
      return match_rec(pattern->sub0, target->sub0, hole, shadow + (shadows ? 1 : 0),
                       out);
    }
  }
}

std::vector<TypePtr> match_instantiations(const TypePtr& pattern, const TypeVar& hole,
                                          const TypePtr& target, bool want_data) {
  std::vector<TypePtr> out;
  std::optional<TypePtr> found;
  if (match_rec(pattern, target, hole, 0, found)) {
    if (found) {
      if (!want_data || is_data_type(*found)) out.push_back(*found);
    } else {
      // vacuous quantifier: any instantiation works, take the bottom type
      out.push_back(want_data ? forall_data("a", data_var("a"))
                              : forall_ord("X", ord_var("X")));
    }
  }
  return out;
}

struct Searcher {
  std::optional<Derivation> search(const TypePtr& l, const TypePtr& r, int depth) {
    if (type_alpha_eq(l, r)) return leaf("refl", l, r);

    if (auto found = try_axioms(l, r)) return found;
    if (depth <= 0) return std::nullopt;

    if (l->kind == TypeKind::Arrow && r->kind == TypeKind::Arrow) {
      auto p0 = search(r->sub0, l->sub0, depth - 1);
      auto p1 = search(l->sub1, r->sub1, depth - 1);
      if (p0 && p1) return node2("arrow", l, r, std::move(*p0), std::move(*p1));
    }
    if (l->kind == TypeKind::App && r->kind == TypeKind::App) {
      auto p0 = search(l->sub0, r->sub0, depth - 1);
      auto p1 = search(l->sub1, r->sub1, depth - 1);
      if (p0 && p1) return node2("app", l, r, std::move(*p0), std::move(*p1));
    }
    if (r->kind == TypeKind::Inter) {
      auto p0 = search(l, r->sub0, depth - 1);
      auto p1 = p0 ? search(l, r->sub1, depth - 1) : std::nullopt;
      if (p0 && p1) return node2("inter-intro", l, r, std::move(*p0), std::move(*p1));
    }
    if (l->kind == TypeKind::Union) {
      auto p0 = search(l->sub0, r, depth - 1);
      auto p1 = p0 ? search(l->sub1, r, depth - 1) : std::nullopt;
      if (p0 && p1) return node2("union-elim", l, r, std::move(*p0), std::move(*p1));
    }
    if (is_forall_kind(r->kind)) {
      TypeVar v = binder_of(r);
      auto l_fv = type_free_vars(l);
      if (!l_fv.count(v)) {
        if (auto p = search(l, r->sub0, depth - 1))
          return node1("forall-intro", l, r, std::move(*p), Witness{{}, v, {}, {}, {}});
      }
    }
    if (is_exists_kind(l->kind)) {
      TypeVar v = binder_of(l);
      auto r_fv = type_free_vars(r);
      if (!r_fv.count(v)) {
        if (auto p = search(l->sub0, r, depth - 1))
          return node1("exists-elim", l, r, std::move(*p), Witness{{}, v, {}, {}, {}});
      }
    }
    if (l->kind == TypeKind::Inter) {
      if (auto p = search(l->sub0, r, depth - 1))
        return node2("trans", l, r, leaf("inter-elim-l", l, l->sub0), std::move(*p));
      if (auto p = search(l->sub1, r, depth - 1))
        return node2("trans", l, r, leaf("inter-elim-r", l, l->sub1), std::move(*p));
    }
    if (r->kind == TypeKind::Union) {
      if (auto p = search(l, r->sub0, depth - 1))
        return node2("trans", l, r, std::move(*p), leaf("union-intro-l", r->sub0, r));
      if (auto p = search(l, r->sub1, depth - 1))
        return node2("trans", l, r, std::move(*p), leaf("union-intro-r", r->sub1, r));
    }
    if (is_forall_kind(l->kind)) {
      bool data = l->kind == TypeKind::ForallData;
      for (const auto& u : match_instantiations(l->sub0, binder_of(l), r, data)) {
        TypePtr inst = type_substitute(l->sub0, binder_of(l), u);
        if (auto p = search(inst, r, depth - 1))
          return node2("trans", l, r,
                       leaf(data ? "forall-elim-data" : "forall-elim", l, inst,
                            Witness{u, {}, {}, {}, {}}),
                       std::move(*p));
      }
    }
    if (is_exists_kind(r->kind)) {
      bool data = r->kind == TypeKind::ExistsData;
      for (const auto& u : match_instantiations(r->sub0, binder_of(r), l, data)) {
        TypePtr inst = type_substitute(r->sub0, binder_of(r), u);
        if (auto p = search(l, inst, depth - 1))
          return node2("trans", l, r, std::move(*p),
                       leaf(data ? "exists-intro-data" : "exists-intro", inst, r,
                            Witness{u, {}, {}, {}, {}}));
      }
    }
    return std::nullopt;
  }

  std::optional<Derivation> try_axioms(const TypePtr& l, const TypePtr& r) {
    static const char* plain_axioms[] = {
        "union-intro-l", "union-intro-r", "inter-elim-l", "inter-elim-r",
        "data",          "constr",        "app-inter",    "app-forall",
        "arrow-inter",   "arrow-forall",  "arrow-union",  "arrow-exists",
        "union-app-r",   "union-app-l",   "exists-app-r", "exists-app-l",
        "union-forall",  "exists-inter"};
    for (const char* rule : plain_axioms) {
      Derivation cand = leaf(rule, l, r);
      if (check_subtyping(cand).ok) return cand;
    }
    if (is_forall_kind(l->kind)) {
      bool data = l->kind == TypeKind::ForallData;
      for (const auto& u : match_instantiations(l->sub0, binder_of(l), r, data)) {
        Derivation cand = leaf(data ? "forall-elim-data" : "forall-elim", l, r,
                               Witness{u, {}, {}, {}, {}});
        if (check_subtyping(cand).ok) return cand;
      }
    }
    if (is_exists_kind(r->kind)) {
      bool data = r->kind == TypeKind::ExistsData;
      for (const auto& u : match_instantiations(r->sub0, binder_of(r), l, data)) {
        Derivation cand = leaf(data ? "exists-intro-data" : "exists-intro", l, r,
                               Witness{u, {}, {}, {}, {}});
        if (check_subtyping(cand).ok) return cand;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Derivation> search_subtyping(const TypePtr& lhs, const TypePtr& rhs,
                                           int max_depth) {
  Searcher s;
  auto found = s.search(lhs, rhs, max_depth);
  if (found && !check_subtyping(*found).ok) return std::nullopt;
  return found;
}

}  // namespace lcc
