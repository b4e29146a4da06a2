#include "lcc/reduction.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "lcc/syntax.hpp"

namespace lcc {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::AL: return "AL";
    case Rule::AD: return "AD";
    case Rule::LA: return "LA";
    case Rule::LD: return "LD";
    case Rule::CO: return "CO";
    case Rule::CD: return "CD";
    case Rule::CA: return "CA";
    case Rule::CL: return "CL";
    case Rule::CC: return "CC";
  }
  return "?";
}

std::optional<Rule> rule_by_name(const std::string& name) {
  static const std::pair<const char*, Rule> table[] = {
      {"AL", Rule::AL}, {"AD", Rule::AD}, {"LA", Rule::LA},
      {"LD", Rule::LD}, {"CO", Rule::CO}, {"CD", Rule::CD},
      {"CA", Rule::CA}, {"CL", Rule::CL}, {"CC", Rule::CC}};
  for (const auto& [n, r] : table)
    if (name == n) return r;
  return std::nullopt;
}

RuleSet RuleSet::full() {
  RuleSet s;
  for (Rule r : {Rule::AL, Rule::AD, Rule::LA, Rule::LD, Rule::CO, Rule::CD,
                 Rule::CA, Rule::CL, Rule::CC})
    s.add(r);
  return s;
}

RuleSet RuleSet::lc_minus() {
  RuleSet s = full();
  s.mask &= ~(1u << static_cast<unsigned>(Rule::CC));
  return s;
}

RuleSet RuleSet::lcom() { return RuleSet{}.add(Rule::CA).add(Rule::CL); }

RuleSet RuleSet::lb() {
  return RuleSet{}.add(Rule::AL).add(Rule::AD).add(Rule::LA).add(Rule::LD).add(
      Rule::CO).add(Rule::CD);
}

std::optional<RuleSet> RuleSet::by_name(const std::string& name) {
  if (name == "full") return full();
  if (name == "lcminus") return lc_minus();
  if (name == "lcom") return lcom();
  if (name == "lb") return lb();
  return std::nullopt;
}

std::string path_to_string(const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

namespace {

// CL renames the binder out of the binding's way when needed; the side
// condition guards against capture, not against the rule firing.
TermPtr contract_cl(const CaseBinding& binding, const TermPtr& scrut_lam) {
  std::string x = scrut_lam->bound;
  TermPtr body = scrut_lam->sub0;
  auto binding_fv = free_vars(binding);
  if (binding_fv.count(x)) {
    auto avoid = binding_fv;
    auto body_fv = free_vars(body);
    avoid.insert(body_fv.begin(), body_fv.end());
    std::string fresh = fresh_name(x, avoid);
    body = substitute(body, x, var(fresh));
    x = fresh;
  }
  return lam(x, case_of(binding, body));
}

std::optional<TermPtr> try_rule(const TermPtr& t, Rule rule) {
  switch (rule) {
    case Rule::AL:
      if (t->kind == TermKind::App && t->sub0->kind == TermKind::Lam)
        return substitute(t->sub0->sub0, t->sub0->bound, t->sub1);
      return std::nullopt;
    case Rule::AD:
      if (t->kind == TermKind::App && t->sub0->kind == TermKind::Daimon)
        return daimon();
      return std::nullopt;
    case Rule::LA:
      if (t->kind == TermKind::Lam && t->sub0->kind == TermKind::App &&
          t->sub0->sub1->kind == TermKind::Var && t->sub0->sub1->name == t->bound &&
          !free_vars(t->sub0->sub0).count(t->bound))
        return t->sub0->sub0;
      return std::nullopt;
    case Rule::LD:
      if (t->kind == TermKind::Lam && t->sub0->kind == TermKind::Daimon)
        return daimon();
      return std::nullopt;
    case Rule::CO:
      if (t->kind == TermKind::Case && t->sub0->kind == TermKind::Constr)
        if (TermPtr body = t->binding.lookup(t->sub0->name)) return body;
      return std::nullopt;
    case Rule::CD:
      if (t->kind == TermKind::Case && t->sub0->kind == TermKind::Daimon)
        return daimon();
      return std::nullopt;
    case Rule::CA:
      if (t->kind == TermKind::Case && t->sub0->kind == TermKind::App)
        return app(case_of(t->binding, t->sub0->sub0), t->sub0->sub1);
      return std::nullopt;
    case Rule::CL:
      if (t->kind == TermKind::Case && t->sub0->kind == TermKind::Lam)
        return contract_cl(t->binding, t->sub0);
      return std::nullopt;
    case Rule::CC:
      if (t->kind == TermKind::Case && t->sub0->kind == TermKind::Case)
        return case_of(compose_bindings(t->binding, t->sub0->binding), t->sub0->sub0);
      return std::nullopt;
  }
  return std::nullopt;
}

constexpr Rule kAllRules[] = {Rule::AL, Rule::AD, Rule::LA, Rule::LD, Rule::CO,
                              Rule::CD, Rule::CA, Rule::CL, Rule::CC};

// Collects (redex, whole-term reduct) pairs in leftmost-outermost order;
// each level wraps the reducts found below it back into the full term.
void collect_redexes(const TermPtr& t, RuleSet rules, Path& path,
                     std::vector<std::pair<Redex, TermPtr>>& out) {
  for (Rule r : kAllRules) {
    if (!rules.enabled(r)) continue;
    if (auto reduct = try_rule(t, r)) out.push_back({Redex{path, r}, *reduct});
  }
  auto descend = [&](const TermPtr& child, int index, auto wrap) {
    std::size_t mark = out.size();
    path.push_back(index);
    collect_redexes(child, rules, path, out);
    path.pop_back();
    for (std::size_t k = mark; k < out.size(); ++k)
      out[k].second = wrap(out[k].second);
  };
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Constr:
    case TermKind::Daimon:
      break;
    case TermKind::Lam:
      descend(t->sub0, 0, [&](TermPtr u) { return lam(t->bound, std::move(u)); });
      break;
    case TermKind::App:
      descend(t->sub0, 0, [&](TermPtr u) { return app(std::move(u), t->sub1); });
      descend(t->sub1, 1, [&](TermPtr u) { return app(t->sub0, std::move(u)); });
      break;
    case TermKind::Case:
      descend(t->sub0, 0,
              [&](TermPtr u) { return case_of(t->binding, std::move(u)); });
      for (std::size_t i = 0; i < t->binding.size(); ++i)
        descend(t->binding.branches[i].second, static_cast<int>(i) + 1,
                [&](TermPtr u) {
                  CaseBinding b = t->binding;
                  b.branches[i].second = std::move(u);
                  return case_of(std::move(b), t->sub0);
                });
      break;
  }
}

TermPtr contract_at(const TermPtr& t, const Path& pos, std::size_t i, Rule rule) {
  if (i == pos.size()) {
    auto reduct = try_rule(t, rule);
    if (!reduct)
      throw InvalidRedexError(std::string("rule ") + rule_name(rule) +
                              " does not match at " + path_to_string(pos));
    return *reduct;
  }
  int c = pos[i];
  switch (t->kind) {
    case TermKind::Lam:
      if (c == 0) return lam(t->bound, contract_at(t->sub0, pos, i + 1, rule));
      break;
    case TermKind::App:
      if (c == 0) return app(contract_at(t->sub0, pos, i + 1, rule), t->sub1);
      if (c == 1) return app(t->sub0, contract_at(t->sub1, pos, i + 1, rule));
      break;
    case TermKind::Case:
      if (c == 0)
        return case_of(t->binding, contract_at(t->sub0, pos, i + 1, rule));
      if (c >= 1 && c <= static_cast<int>(t->binding.size())) {
        CaseBinding b = t->binding;
        auto& [key, body] = b.branches[c - 1];
        body = contract_at(body, pos, i + 1, rule);
        return case_of(std::move(b), t->sub0);
      }
      break;
    default:
      break;
  }
  throw InvalidRedexError("no subterm at " + path_to_string(pos));
}

}  // namespace

std::vector<std::pair<Redex, TermPtr>> one_step_reducts(const TermPtr& t,
                                                        RuleSet rules) {
  std::vector<std::pair<Redex, TermPtr>> out;
  Path path;
  collect_redexes(t, rules, path, out);
  return out;
}

TermPtr contract(const TermPtr& t, const Redex& redex) {
  return contract_at(t, redex.pos, 0, redex.rule);
}

CaseBinding compose_bindings(const CaseBinding& outer, const CaseBinding& inner) {
  CaseBinding out;
  out.branches.reserve(inner.size());
  for (const auto& [key, body] : inner.branches)
    out.branches.emplace_back(key, case_of(outer, body));
  return out;
}

NormalizeOutcome normalize(const TermPtr& t, const NormalizeOptions& opts) {
  NormalizeOutcome outcome;
  outcome.term = t;
  std::mt19937_64 rng(opts.seed);
  for (int step = 0; step < opts.fuel; ++step) {
    auto reducts = one_step_reducts(outcome.term, opts.rules);
    if (reducts.empty()) {
      outcome.reached_normal_form = true;
      return outcome;
    }
    std::size_t pick = 0;
    if (opts.strategy == Strategy::RandomSeeded && reducts.size() > 1) {
      std::uniform_int_distribution<std::size_t> dist(0, reducts.size() - 1);
      pick = dist(rng);
    }
    outcome.trace.push_back({reducts[pick].first, reducts[pick].second});
    outcome.term = reducts[pick].second;
  }
  outcome.reached_normal_form = one_step_reducts(outcome.term, opts.rules).empty();
  return outcome;
}

TermPtr case_normal_form(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Constr:
    case TermKind::Daimon:
      return t;
    case TermKind::Lam:
      return lam(t->bound, case_normal_form(t->sub0));
    case TermKind::App:
      return app(case_normal_form(t->sub0), case_normal_form(t->sub1));
    case TermKind::Case: {
      const CaseBinding& theta = t->binding;
      const TermPtr& scrut = t->sub0;
      switch (scrut->kind) {
        case TermKind::Var:
        case TermKind::Constr:
        case TermKind::Daimon:
          return case_of(case_normal_form(theta), scrut);
        case TermKind::Lam: {
          TermPtr pushed = contract_cl(theta, scrut);
          return lam(pushed->bound, case_normal_form(pushed->sub0));
        }
        case TermKind::App:
          return app(case_normal_form(case_of(theta, scrut->sub0)),
                     case_normal_form(scrut->sub1));
        case TermKind::Case: {
          TermPtr inner_nf = case_normal_form(scrut);
          if (alpha_eq(inner_nf, scrut))
            return case_of(case_normal_form(theta), inner_nf);
          TermPtr next = case_of(theta, inner_nf);
          if (structural_measure(next) >= structural_measure(t))
            throw std::logic_error(
                "case-commutation measure failed to decrease on " + print_term(t));
          return case_normal_form(next);
        }
      }
      break;
    }
  }
  throw std::logic_error("unreachable term kind");
}

CaseBinding case_normal_form(const CaseBinding& b) {
  CaseBinding out;
  out.branches.reserve(b.size());
  for (const auto& [key, body] : b.branches)
    out.branches.emplace_back(key, case_normal_form(body));
  return out;
}

namespace {

bool undefined_witness_rec(const TermPtr& t, Path& path, Path& out) {
  if (t->kind == TermKind::Case && t->sub0->kind == TermKind::Constr &&
      !t->binding.contains(t->sub0->name)) {
    out = path;
    return true;
  }
  switch (t->kind) {
    case TermKind::Lam: {
      path.push_back(0);
      bool found = undefined_witness_rec(t->sub0, path, out);
      path.pop_back();
      return found;
    }
    case TermKind::App: {
      path.push_back(0);
      if (undefined_witness_rec(t->sub0, path, out)) {
        path.pop_back();
        return true;
      }
      path.back() = 1;
      bool found = undefined_witness_rec(t->sub1, path, out);
      path.pop_back();
      return found;
    }
    case TermKind::Case: {
      path.push_back(0);
      if (undefined_witness_rec(t->sub0, path, out)) {
        path.pop_back();
        return true;
      }
      for (std::size_t i = 0; i < t->binding.size(); ++i) {
        path.back() = static_cast<int>(i) + 1;
        if (undefined_witness_rec(t->binding.branches[i].second, path, out)) {
          path.pop_back();
          return true;
        }
      }
      path.pop_back();
      return false;
    }
    default:
      return false;
  }
}

}  // namespace

std::optional<Path> undefined_witness(const TermPtr& t) {
  Path path, out;
  if (undefined_witness_rec(t, path, out)) return out;
  return std::nullopt;
}

bool is_value_shape(const TermPtr& t) {
  if (t->kind == TermKind::Lam) return true;
  return spine_of(t).head->kind == TermKind::Constr;
}

Classification classify(const TermPtr& t) {
  Classification c;
  if (auto w = undefined_witness(t)) {
    c.kind = Classification::Kind::Undefined;
    c.witness = *w;
    return c;
  }
  c.free = free_vars(t);
  if (!c.free.empty()) {
    c.kind = Classification::Kind::Open;
    return c;
  }
  if (t->kind == TermKind::Lam)
    c.kind = Classification::Kind::ValueAbstraction;
  else if (spine_of(t).head->kind == TermKind::Constr)
    c.kind = Classification::Kind::ValueData;
  else
    c.kind = Classification::Kind::Neutral;
  return c;
}

const char* graph_status_name(GraphStatus s) {
  switch (s) {
    case GraphStatus::Complete: return "complete";
    case GraphStatus::TruncatedNodes: return "truncated(nodes)";
    case GraphStatus::TruncatedDepth: return "truncated(depth)";
    case GraphStatus::TruncatedCycle: return "truncated(cycle)";
  }
  return "?";
}

std::vector<int> ReductionGraph::sinks() const {
  std::vector<bool> has_out(nodes.size(), false);
  for (const auto& e : edges) has_out[e.source] = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (expanded[i] && !has_out[i]) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

bool has_directed_cycle(int n, const std::vector<GraphEdge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) adj[e.source].push_back(e.target);
  // 0 unseen, 1 on stack, 2 done
  std::vector<int> color(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int start = 0; start < n; ++start) {
    if (color[start]) continue;
    color[start] = 1;
    stack.push_back({start, 0});
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[v].size()) {
        int w = adj[v][next++];
        if (color[w] == 1) return true;
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

ReductionGraph reduction_graph(const TermPtr& t, RuleSet rules, GraphBudget budget) {
  ReductionGraph g;
  std::unordered_map<std::string, int> index;
  g.nodes.push_back(t);
  g.expanded.push_back(false);
  index[alpha_key(t)] = 0;
  std::queue<std::pair<int, int>> frontier;
  frontier.push({0, 0});
  bool nodes_hit = false, depth_hit = false;
  while (!frontier.empty() && !nodes_hit) {
    auto [id, depth] = frontier.front();
    frontier.pop();
    auto reducts = one_step_reducts(g.nodes[id], rules);
    if (depth >= budget.max_depth && !reducts.empty()) {
      depth_hit = true;
      continue;
    }
    for (const auto& [redex, u] : reducts) {
      std::string key = alpha_key(u);
      auto it = index.find(key);
      int uid;
      if (it == index.end()) {
        if (static_cast<int>(g.nodes.size()) >= budget.max_nodes) {
          nodes_hit = true;
          break;
        }
        uid = static_cast<int>(g.nodes.size());
        index.emplace(std::move(key), uid);
        g.nodes.push_back(u);
        g.expanded.push_back(false);
        frontier.push({uid, depth + 1});
      } else {
        uid = it->second;
      }
      g.edges.push_back({id, redex, uid});
    }
    if (!nodes_hit) g.expanded[id] = true;
  }
  if (nodes_hit)
    g.status = GraphStatus::TruncatedNodes;
  else if (depth_hit)
    g.status = GraphStatus::TruncatedDepth;
  else if (has_directed_cycle(static_cast<int>(g.nodes.size()), g.edges))
    g.status = GraphStatus::TruncatedCycle;
  else
    g.status = GraphStatus::Complete;
  return g;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string graph_to_dot(const ReductionGraph& g) {
  std::ostringstream out;
  out << "digraph reduction {\n";
  if (!g.complete()) out << "  // truncated\n";
  auto sink_ids = g.sinks();
  std::vector<bool> is_sink(g.nodes.size(), false);
  for (int s : sink_ids) is_sink[s] = true;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << dot_escape(print_term(g.nodes[i])) << "\"";
    if (is_sink[i]) out << " peripheries=2";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.source << " -> n" << e.target << " [label=\""
        << rule_name(e.redex.rule) << " " << path_to_string(e.redex.pos)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

ValueSearch values_of(const TermPtr& t, GraphBudget budget) {
  ReductionGraph g = reduction_graph(t, RuleSet::lc_minus(), budget);
  ValueSearch vs;
  vs.complete = g.complete();
  for (const auto& node : g.nodes)
    if (is_value_shape(node)) vs.values.push_back(node);
  return vs;
}

namespace {

std::optional<TermPtr> principal_rec(const TermPtr& t) {
  Spine s = spine_of(t);
  if (s.head->kind == TermKind::Lam && !s.args.empty()) {
    TermPtr acc = substitute(s.head->sub0, s.head->bound, s.args[0]);
    for (std::size_t i = 1; i < s.args.size(); ++i) acc = app(acc, s.args[i]);
    return acc;
  }
  if (s.head->kind != TermKind::Case) return std::nullopt;
  if (!s.args.empty()) {
    auto r = principal_rec(s.head);
    if (!r) return std::nullopt;
    TermPtr acc = *r;
    for (const auto& a : s.args) acc = app(acc, a);
    return acc;
  }
  const CaseBinding& theta = t->binding;
  const TermPtr& scrut = t->sub0;
  switch (scrut->kind) {
    case TermKind::Constr:
      if (TermPtr body = theta.lookup(scrut->name)) return body;
      return std::nullopt;
    case TermKind::Lam:
      return contract_cl(theta, scrut);
    case TermKind::App:
      return app(case_of(theta, scrut->sub0), scrut->sub1);
    case TermKind::Case: {
      auto r = principal_rec(scrut);
      if (!r) return std::nullopt;
      return case_of(theta, *r);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<TermPtr> principal_reduct(const TermPtr& t) {
  if (!is_closed(t)) return std::nullopt;
  return principal_rec(t);
}

std::string render_trace(const TermPtr& initial, const NormalizeOutcome& outcome) {
  std::ostringstream out;
  out << "initial: " << print_term(initial) << "\n";
  for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
    const auto& step = outcome.trace[i];
    out << "step " << (i + 1) << ": " << rule_name(step.redex.rule) << " @ "
        << path_to_string(step.redex.pos) << " => " << print_term(step.result)
        << "\n";
  }
  if (outcome.reached_normal_form)
    out << "normal form: " << print_term(outcome.term) << "\n";
  else
    out << "fuel exhausted after " << outcome.trace.size()
        << " steps: " << print_term(outcome.term) << "\n";
  out << "steps: " << outcome.trace.size() << "\n";
  return out.str();
}

}  // namespace lcc
