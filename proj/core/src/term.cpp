#include "lcc/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace lcc {

bool CaseBinding::contains(const std::string& c) const {
  return lookup(c) != nullptr;
}

TermPtr CaseBinding::lookup(const std::string& c) const {
  for (const auto& [key, body] : branches)
    if (key == c) return body;
  return nullptr;
}

bool is_variable_name(const std::string& s) {
  if (s.empty() || !(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '\'';
  });
}

bool is_constructor_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '\'';
  });
}

TermPtr var(std::string name) {
  if (!is_variable_name(name)) throw std::invalid_argument("bad variable name: " + name);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  return t;
}

TermPtr constr(std::string name) {
  if (!is_constructor_name(name)) throw std::invalid_argument("bad constructor name: " + name);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Constr;
  t->name = std::move(name);
  return t;
}

TermPtr lam(std::string bound, TermPtr body) {
  if (!is_variable_name(bound)) throw std::invalid_argument("bad binder name: " + bound);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Lam;
  t->bound = std::move(bound);
  t->sub0 = std::move(body);
  return t;
}

TermPtr app(TermPtr fun, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->sub0 = std::move(fun);
  t->sub1 = std::move(arg);
  return t;
}

TermPtr app(TermPtr fun, const std::vector<TermPtr>& args) {
  TermPtr acc = std::move(fun);
  for (const auto& a : args) acc = app(acc, a);
  return acc;
}

TermPtr case_of(CaseBinding binding, TermPtr scrutinee) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Case;
  t->binding = std::move(binding);
  t->sub0 = std::move(scrutinee);
  return t;
}

TermPtr daimon() {
  static const TermPtr d = [] {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Daimon;
    return t;
  }();
  return d;
}

CaseBinding make_binding(std::vector<std::pair<std::string, TermPtr>> branches) {
  CaseBinding b{std::move(branches)};
  std::set<std::string> seen;
  for (const auto& [key, body] : b.branches) {
    if (!is_constructor_name(key)) throw std::invalid_argument("bad branch key: " + key);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate branch key: " + key);
    if (!body) throw std::invalid_argument("null branch body");
  }
  return b;
}

namespace {

void free_vars_into(const TermPtr& t, std::set<std::string>& bound_names,
                    std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound_names.count(t->name)) out.insert(t->name);
      break;
    case TermKind::Constr:
    case TermKind::Daimon:
      break;
    case TermKind::Lam: {
      bool was_bound = bound_names.count(t->bound) > 0;
      bound_names.insert(t->bound);
      free_vars_into(t->sub0, bound_names, out);
      if (!was_bound) bound_names.erase(t->bound);
      break;
    }
    case TermKind::App:
      free_vars_into(t->sub0, bound_names, out);
      free_vars_into(t->sub1, bound_names, out);
      break;
    case TermKind::Case:
      free_vars_into(t->sub0, bound_names, out);
      for (const auto& [key, body] : t->binding.branches)
        free_vars_into(body, bound_names, out);
      break;
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound_names, out;
  free_vars_into(t, bound_names, out);
  return out;
}

std::set<std::string> free_vars(const CaseBinding& b) {
  std::set<std::string> out;
  for (const auto& [key, body] : b.branches) {
    auto fv = free_vars(body);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base;
  while (avoid.count(candidate)) candidate += '\'';
  return candidate;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == x ? u : t;
    case TermKind::Constr:
    case TermKind::Daimon:
      return t;
    case TermKind::Lam: {
      if (t->bound == x) return t;
      auto body_fv = free_vars(t->sub0);
      if (!body_fv.count(x)) return t;
      auto u_fv = free_vars(u);
      if (u_fv.count(t->bound)) {
        std::set<std::string> avoid = u_fv;
        avoid.insert(body_fv.begin(), body_fv.end());
        avoid.insert(x);
        std::string fresh = fresh_name(t->bound, avoid);
        TermPtr renamed = substitute(t->sub0, t->bound, var(fresh));
        return lam(fresh, substitute(renamed, x, u));
      }
      return lam(t->bound, substitute(t->sub0, x, u));
    }
    case TermKind::App:
      return app(substitute(t->sub0, x, u), substitute(t->sub1, x, u));
    case TermKind::Case:
      return case_of(substitute(t->binding, x, u), substitute(t->sub0, x, u));
  }
  throw std::logic_error("unreachable term kind");
}

CaseBinding substitute(const CaseBinding& b, const std::string& x, const TermPtr& u) {
  CaseBinding out;
  out.branches.reserve(b.branches.size());
  for (const auto& [key, body] : b.branches)
    out.branches.emplace_back(key, substitute(body, x, u));
  return out;
}

namespace {

// Branch indices sorted by key, so bindings compare as finite maps.
std::vector<std::size_t> sorted_branch_order(const CaseBinding& b) {
  std::vector<std::size_t> idx(b.branches.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return b.branches[i].first < b.branches[j].first;
  });
  return idx;
}

struct AlphaEnv {
  std::vector<std::pair<std::string, int>> scopes;

  int lookup(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
      if (it->first == name) return it->second;
    return -1;
  }
};

bool alpha_eq_rec(const TermPtr& a, const TermPtr& b, AlphaEnv& ea, AlphaEnv& eb,
                  int depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      int la = ea.lookup(a->name);
      int lb = eb.lookup(b->name);
      if (la != lb) return false;
      return la >= 0 || a->name == b->name;
    }
    case TermKind::Constr:
      return a->name == b->name;
    case TermKind::Daimon:
      return true;
    case TermKind::Lam: {
      ea.scopes.emplace_back(a->bound, depth);
      eb.scopes.emplace_back(b->bound, depth);
      bool ok = alpha_eq_rec(a->sub0, b->sub0, ea, eb, depth + 1);
      ea.scopes.pop_back();
      eb.scopes.pop_back();
      return ok;
    }
    case TermKind::App:
      return alpha_eq_rec(a->sub0, b->sub0, ea, eb, depth) &&
             alpha_eq_rec(a->sub1, b->sub1, ea, eb, depth);
    case TermKind::Case: {
      if (a->binding.size() != b->binding.size()) return false;
      auto ia = sorted_branch_order(a->binding);
      auto ib = sorted_branch_order(b->binding);
      for (std::size_t k = 0; k < ia.size(); ++k) {
        const auto& [ka, ba] = a->binding.branches[ia[k]];
        const auto& [kb, bb] = b->binding.branches[ib[k]];
        if (ka != kb) return false;
        if (!alpha_eq_rec(ba, bb, ea, eb, depth)) return false;
      }
      return alpha_eq_rec(a->sub0, b->sub0, ea, eb, depth);
    }
  }
  return false;
}

void alpha_key_rec(const TermPtr& t, AlphaEnv& env, int depth, std::string& out) {
  switch (t->kind) {
    case TermKind::Var: {
      int level = env.lookup(t->name);
      if (level >= 0)
        out += "b" + std::to_string(level);
      else
        out += "f" + t->name;
      break;
    }
    case TermKind::Constr:
      out += "c" + t->name;
      break;
    case TermKind::Daimon:
      out += "!";
      break;
    case TermKind::Lam:
      out += "(\\.";
      env.scopes.emplace_back(t->bound, depth);
      alpha_key_rec(t->sub0, env, depth + 1, out);
      env.scopes.pop_back();
      out += ")";
      break;
    case TermKind::App:
      out += "(";
      alpha_key_rec(t->sub0, env, depth, out);
      out += " ";
      alpha_key_rec(t->sub1, env, depth, out);
      out += ")";
      break;
    case TermKind::Case: {
      out += "{";
      for (std::size_t i : sorted_branch_order(t->binding)) {
        const auto& [key, body] = t->binding.branches[i];
        out += key + "->";
        alpha_key_rec(body, env, depth, out);
        out += ";";
      }
      out += "}.";
      alpha_key_rec(t->sub0, env, depth, out);
      break;
    }
  }
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  AlphaEnv ea, eb;
  return alpha_eq_rec(a, b, ea, eb, 0);
}

bool alpha_eq(const CaseBinding& a, const CaseBinding& b) {
  if (a.size() != b.size()) return false;
  auto ia = sorted_branch_order(a);
  auto ib = sorted_branch_order(b);
  AlphaEnv ea, eb;
  for (std::size_t k = 0; k < ia.size(); ++k) {
    const auto& [ka, ba] = a.branches[ia[k]];
    const auto& [kb, bb] = b.branches[ib[k]];
    if (ka != kb) return false;
    if (!alpha_eq_rec(ba, bb, ea, eb, 0)) return false;
  }
  return true;
}

std::string alpha_key(const TermPtr& t) {
  std::string out;
  AlphaEnv env;
  alpha_key_rec(t, env, 0, out);
  return out;
}

Spine spine_of(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->kind == TermKind::App) {
    s.args.push_back(cur->sub1);
    cur = cur->sub0;
  }
  s.head = cur;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

std::uint64_t structural_measure(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Constr:
    case TermKind::Daimon:
      return 1;
    case TermKind::Lam:
      return structural_measure(t->sub0) + 1;
    case TermKind::App:
      return structural_measure(t->sub0) + structural_measure(t->sub1);
    case TermKind::Case:
      return structural_measure(t->sub0) * (structural_measure(t->binding) + 2);
  }
  throw std::logic_error("unreachable term kind");
}

std::uint64_t structural_measure(const CaseBinding& b) {
  std::uint64_t sum = 0;
  for (const auto& [key, body] : b.branches) sum += structural_measure(body);
  return sum;
}

}  // namespace lcc
