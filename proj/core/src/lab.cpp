#include "lcc/lab.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lcc/derivation.hpp"
#include "lcc/script.hpp"
#include "lcc/syntax.hpp"

namespace lcc {

namespace {

void add_failure(SuiteReport& r, const std::string& term, const std::string& property,
                 const std::string& replay) {
  r.failures.push_back(SuiteFailure{term, property, replay});
}

bool contains_daimon(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Daimon:
      return true;
    case TermKind::Var:
    case TermKind::Constr:
      return false;
    case TermKind::Lam:
      return contains_daimon(t->sub0);
    case TermKind::App:
      return contains_daimon(t->sub0) || contains_daimon(t->sub1);
    case TermKind::Case: {
      if (contains_daimon(t->sub0)) return true;
      for (const auto& [k, b] : t->binding.branches)
        if (contains_daimon(b)) return true;
      return false;
    }
  }
  return false;
}

bool is_pure_value(const TermPtr& t) {
  Spine s = spine_of(t);
  if (s.head->kind != TermKind::Constr) return false;
  return std::all_of(s.args.begin(), s.args.end(), is_pure_value);
}

// Pure value against pure data type: constructor chains must mirror.
bool spine_mirrors(const TermPtr& t, const TypePtr& ty) {
  Spine s = spine_of(t);
  TypeSpine ts = type_spine_of(ty);
  if (s.head->kind != TermKind::Constr || ts.head->kind != TypeKind::Const)
    return false;
  if (s.head->name != ts.head->name) return false;
  if (s.args.size() != ts.args.size()) return false;
  for (std::size_t i = 0; i < s.args.size(); ++i)
    if (!spine_mirrors(s.args[i], ts.args[i])) return false;
  return true;
}

bool all_nodes_defined(const ReductionGraph& g, Path* where, int* node) {
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (auto w = undefined_witness(g.nodes[i])) {
      if (where) *where = *w;
      if (node) *node = static_cast<int>(i);
      return false;
    }
  }
  return true;
}

// Bounded nonempty-path search in the LC- reduction graph.
enum class PathResult { Found, Absent, Truncated };

PathResult find_path(const TermPtr& from, const TermPtr& to, const LabBudget& budget) {
  std::string target = alpha_key(to);
  std::set<std::string> seen{alpha_key(from)};
  std::vector<TermPtr> frontier{from};
  std::size_t cap = static_cast<std::size_t>(budget.graph.max_nodes);
  for (int depth = 1; depth <= budget.path_depth; ++depth) {
    std::vector<TermPtr> next;
    for (const auto& u : frontier) {
      for (const auto& [redex, v] : one_step_reducts(u, RuleSet::lc_minus())) {
        std::string key = alpha_key(v);
        if (key == target) return PathResult::Found;
        if (seen.size() >= cap) return PathResult::Truncated;
        if (seen.insert(key).second) next.push_back(v);
      }
    }
    if (next.empty()) return PathResult::Absent;
    frontier = std::move(next);
  }
  return PathResult::Truncated;
}

}  // namespace

SuiteReport suite_com_normalization(const EnumConfig& cfg, const LabBudget& budget) {
  SuiteReport r{"com_normalization"};
  for (const auto& t : enumerate_terms(cfg)) {
    ++r.checked;
    std::string text = print_term(t);
    std::uint64_t before = structural_measure(t);
    for (const auto& [redex, u] : one_step_reducts(t, RuleSet::lcom())) {
      if (structural_measure(u) >= before) {
        add_failure(r, text, "lcom step does not strictly decrease the measure",
                    text);
        break;
      }
    }
    ReductionGraph g = reduction_graph(t, RuleSet::lcom(), budget.graph);
    if (!g.complete()) {
      ++r.skipped;
      continue;
    }
    auto sinks = g.sinks();
    if (sinks.size() != 1) {
      add_failure(r, text, "lcom graph is not confluent to a unique normal form",
                  text);
      continue;
    }
    try {
      TermPtr cnf = case_normal_form(t);
      if (!alpha_eq(g.nodes[static_cast<std::size_t>(sinks[0])], cnf))
        add_failure(r, text, "lcom normal form differs from case_normal_form", text);
    } catch (const std::exception& e) {
      add_failure(r, text, std::string("case_normal_form failed: ") + e.what(), text);
    }
  }
  return r;
}

SuiteReport suite_normal_form_shape(const EnumConfig& cfg, const LabBudget& budget) {
  (void)budget;
  SuiteReport r{"normal_form_shape"};
  for (const auto& t : enumerate_terms(cfg)) {
    if (!is_closed(t)) continue;
    if (undefined_witness(t)) continue;
    if (!one_step_reducts(t, RuleSet::lc_minus()).empty()) continue;
    ++r.checked;
    if (!(t->kind == TermKind::Daimon || is_value_shape(t)))
      add_failure(r, print_term(t),
                  "closed defined normal term is neither the daimon nor a value",
                  print_term(t));
  }
  return r;
}

SuiteReport suite_commutation_simulation(const EnumConfig& cfg,
                                         const LabBudget& budget) {
  SuiteReport r{"commutation_simulation"};
  for (const auto& t : enumerate_terms(cfg)) {
    std::string text = print_term(t);
    TermPtr com_t;
    try {
      com_t = case_normal_form(t);
    } catch (const std::exception& e) {
      ++r.checked;
      add_failure(r, text, std::string("case_normal_form failed: ") + e.what(), text);
      continue;
    }
    for (const auto& [redex, t2] : one_step_reducts(t, RuleSet::lb())) {
      ++r.checked;
      TermPtr com_t2 = case_normal_form(t2);
      switch (find_path(com_t, com_t2, budget)) {
        case PathResult::Found:
          break;
        case PathResult::Truncated:
          ++r.skipped;
          break;
        case PathResult::Absent:
          add_failure(r, text,
                      "no nonempty LC- path between the commuted forms of an LB step",
                      text + "  step " + std::string(rule_name(redex.rule)) + " " +
                          path_to_string(redex.pos));
          break;
      }
    }
    // certificate transfer: commuted form perfectly normalising => original too
    ++r.checked;
    ReductionGraph gc = reduction_graph(com_t, RuleSet::lc_minus(), budget.graph);
    if (!gc.complete()) {
      ++r.skipped;
      continue;
    }
    if (!all_nodes_defined(gc, nullptr, nullptr)) continue;
    ReductionGraph gt = reduction_graph(t, RuleSet::lc_minus(), budget.graph);
    if (!gt.complete()) {
      ++r.skipped;
      continue;
    }
    if (!all_nodes_defined(gt, nullptr, nullptr))
      add_failure(r, text,
                  "commuted form certifies perfect normalization but the term has an "
                  "undefined reduct",
                  text);
  }
  return r;
}

SuiteReport suite_confluence(const EnumConfig& cfg, RuleSet rules,
                             const LabBudget& budget) {
  SuiteReport r{"confluence"};
  for (const auto& t : enumerate_terms(cfg)) {
    ReductionGraph g = reduction_graph(t, rules, budget.graph);
    if (!g.complete()) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    auto sinks = g.sinks();
    for (std::size_t i = 1; i < sinks.size(); ++i) {
      if (!alpha_eq(g.nodes[static_cast<std::size_t>(sinks[0])],
                    g.nodes[static_cast<std::size_t>(sinks[i])])) {
        add_failure(r, print_term(t), "complete graph has non-equal sinks",
                    print_term(t));
        break;
      }
    }
  }
  return r;
}

SuiteReport suite_principal_reduct(const EnumConfig& cfg, const LabBudget& budget) {
  SuiteReport r{"principal_reduct"};
  for (const auto& t : enumerate_terms(cfg)) {
    Classification c = classify(t);
    if (c.kind != Classification::Kind::Neutral) continue;
    auto p = principal_reduct(t);
    if (!p) continue;
    ++r.checked;
    std::string text = print_term(t);
    bool among = false;
    for (const auto& [redex, u] : one_step_reducts(t, RuleSet::lc_minus()))
      if (alpha_eq(u, *p)) {
        among = true;
        break;
      }
    if (!among) {
      add_failure(r, text, "principal reduct is not a one-step LC- reduct", text);
      continue;
    }
    ValueSearch vt = values_of(t, budget.graph);
    ValueSearch vp = values_of(*p, budget.graph);
    if (!vt.complete || !vp.complete) {
      ++r.skipped;
      continue;
    }
    for (const auto& v : vt.values) {
      bool kept = std::any_of(vp.values.begin(), vp.values.end(),
                              [&](const TermPtr& w) { return alpha_eq(v, w); });
      if (!kept) {
        add_failure(r, text, "a value reachable from the term is lost by the "
                             "principal reduct",
                    text + "  value " + print_term(v));
        break;
      }
    }
  }
  return r;
}

SuiteReport suite_typed_soundness(const std::string& corpus_dir,
                                  const LabBudget& budget) {
  namespace fs = std::filesystem;
  SuiteReport r{"typed_soundness"};
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".lcd")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    ++r.checked;
    Derivation d;
    try {
      d = parse_script(read_file(path));
    } catch (const std::exception& e) {
      add_failure(r, path, std::string("script does not parse: ") + e.what(), path);
      continue;
    }
    CheckResult res = check_derivation(d);
    if (!res.ok) {
      add_failure(r, path, "script rejected: " + res.reason, path);
      continue;
    }
    const Judgment& c = d.conclusion;
    if (c.kind != Judgment::Kind::TermTyping || !is_closed(c.subject)) continue;
    std::string text = print_term(c.subject);
    ReductionGraph g = reduction_graph(c.subject, RuleSet::lc_minus(), budget.graph);
    if (!g.complete()) {
      ++r.skipped;
      continue;
    }
    Path where;
    int node = 0;
    if (!all_nodes_defined(g, &where, &node)) {
      add_failure(r, text,
                  "typed closed subject reaches an undefined reduct at " +
                      path_to_string(where),
                  path);
      continue;
    }
    if (!contains_daimon(c.subject) && is_pure_data_type(c.ty)) {
      auto sinks = g.sinks();
      if (sinks.size() != 1) {
        add_failure(r, text, "no unique normal form for a pure-data-typed subject",
                    path);
        continue;
      }
      const TermPtr& nf = g.nodes[static_cast<std::size_t>(sinks[0])];
      if (!is_pure_value(nf) || !spine_mirrors(nf, c.ty))
        add_failure(r, text,
                    "normal form is not a pure value mirroring the type's "
                    "constructor spine",
                    path);
    }
  }
  return r;
}

std::string report_to_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << ": checked " << r.checked << ", skipped "
      << r.skipped << ", failures " << r.failures.size() << "\n";
  for (const auto& f : r.failures) {
    out << "  FAIL " << f.term << "\n";
    out << "    property: " << f.property << "\n";
    out << "    replay: " << f.replay << "\n";
  }
  return out.str();
}

std::string report_to_json(const SuiteReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["checked"] = r.checked;
  j["skipped"] = r.skipped;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures)
    j["failures"].push_back(
        {{"term", f.term}, {"property", f.property}, {"replay", f.replay}});
  return j.dump(2);
}

std::vector<SuiteReport> run_all_suites(const EnumConfig& cfg,
                                        const std::string& corpus_dir,
                                        const LabBudget& budget) {
  std::vector<SuiteReport> out;
  out.push_back(suite_com_normalization(cfg, budget));
  out.push_back(suite_normal_form_shape(cfg, budget));
  out.push_back(suite_commutation_simulation(cfg, budget));
  out.push_back(suite_confluence(cfg, RuleSet::lc_minus(), budget));
  out.push_back(suite_principal_reduct(cfg, budget));
  if (!corpus_dir.empty()) out.push_back(suite_typed_soundness(corpus_dir, budget));
  return out;
}

}  // namespace lcc
