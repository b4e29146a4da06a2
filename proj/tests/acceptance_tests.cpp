#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lcc/derivation.hpp"
#include "lcc/enumeration.hpp"
#include "lcc/lab.hpp"
#include "lcc/reduction.hpp"
#include "lcc/script.hpp"
#include "lcc/syntax.hpp"

using namespace lcc;

namespace {

int failed_criteria = 0;

std::string corpus(const std::string& rel) {
  return std::string(LCC_CORPUS_DIR) + "/" + rel;
}

std::string golden(const std::string& rel) {
  return std::string(LCC_GOLDEN_DIR) + "/" + rel;
}

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

void report(int n, const std::string& what, bool ok, const std::string& detail) {
  if (ok) {
    std::cout << "criterion " << n << ": pass - " << what << "\n";
  } else {
    std::cout << "criterion " << n << ": FAIL - " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    ++failed_criteria;
  }
}

bool contains_subterm(const TermPtr& t, const TermPtr& target) {
  if (alpha_eq(t, target)) return true;
  switch (t->kind) {
    case TermKind::Lam:
      return contains_subterm(t->sub0, target);
    case TermKind::App:
      return contains_subterm(t->sub0, target) || contains_subterm(t->sub1, target);
    case TermKind::Case:
      if (contains_subterm(t->sub0, target)) return true;
      for (const auto& [key, body] : t->binding.branches)
        if (contains_subterm(body, target)) return true;
      return false;
    default:
      return false;
  }
}

std::map<Rule, int> rule_multiset(const NormalizeOutcome& out) {
  std::map<Rule, int> m;
  for (const auto& step : out.trace) m[step.redex.rule]++;
  return m;
}

void criterion_1() {
  auto start = Clock::now();
  std::string detail;
  bool ok = true;

  TermPtr pred = parse_term(read_file(corpus("terms/pred_s0.lct")));
  NormalizeOptions opt;
  NormalizeOutcome pred_out = normalize(pred, opt);
  if (render_trace(pred, pred_out) != read_file(golden("pred_s0.trace"))) {
    ok = false;
    detail = "pred_s0 trace differs from the golden file";
  }
  std::vector<Rule> want{Rule::AL, Rule::CA, Rule::CO, Rule::AL};
  if (pred_out.trace.size() != 4 || !pred_out.reached_normal_form ||
      print_term(pred_out.term) != "Zero") {
    ok = false;
    detail = "pred_s0 must reach Zero in exactly 4 steps";
  } else {
    for (int i = 0; i < 4; ++i)
      if (pred_out.trace[static_cast<std::size_t>(i)].redex.rule !=
          want[static_cast<std::size_t>(i)]) {
        ok = false;
        detail = "pred_s0 step rules must be AL, CA, CO, AL";
      }
  }

  TermPtr ex = parse_term(read_file(corpus("terms/example31.lct")));
  NormalizeOutcome ex_out = normalize(ex, opt);
  if (render_trace(ex, ex_out) != read_file(golden("example31.trace"))) {
    ok = false;
    detail = "example31 trace differs from the golden file";
  }
  if (!ex_out.reached_normal_form || print_term(ex_out.term) != "Tab t1 t3") {
    ok = false;
    detail = "example31 must normalize to Tab t1 t3";
  }
  auto m = rule_multiset(ex_out);
  if (m[Rule::CA] != 3 || m[Rule::CO] != 1 || m[Rule::AL] != 3 ||
      ex_out.trace.size() != 7) {
    ok = false;
    detail = "example31 step multiset must be CA x3, CO x1, AL x3";
  }

  long elapsed = ms_since(start);
  if (elapsed >= 1000) {
    ok = false;
    detail = "took " + std::to_string(elapsed) + " ms, bound is 1 s";
  }
  report(1, "worked reduction chains match the golden traces", ok, detail);
}

void criterion_2() {
  auto start = Clock::now();
  std::string detail;
  bool ok = true;

  TermPtr d = parse_term(read_file(corpus("terms/diverge.lct")));
  if (!one_step_reducts(d, RuleSet::lc_minus()).empty()) {
    ok = false;
    detail = "the nested case term must be normal without CC";
  }

  NormalizeOptions full;
  full.rules = RuleSet::full();
  full.fuel = 20;
  NormalizeOutcome out = normalize(d, full);
  TermPtr omega = parse_term("(\\x. x x) (\\x. x x)");
  bool hit = false;
  for (const auto& step : out.trace)
    if (contains_subterm(step.result, omega)) hit = true;
  if (!hit) {
    ok = false;
    detail = "no self-application loop reached within 20 CC steps";
  }

  for (int budget : {50, 500}) {
    ReductionGraph g = reduction_graph(d, RuleSet::full(), GraphBudget{budget, 60});
    if (g.complete()) {
      ok = false;
      detail = "full-rule graph completed at node budget " + std::to_string(budget);
    }
  }

  CaseBinding composed = compose_bindings(d->binding, d->sub0->binding);
  TermPtr loop_branch = composed.lookup("C'");
  TermPtr want_branch = parse_term("{| D -> \\x. x x |}. (D (\\x. x x))");
  if (!loop_branch || !alpha_eq(loop_branch, want_branch)) {
    ok = false;
    detail = "composed binding lacks the self-application branch";
  }

  TermPtr m = parse_term(read_file(corpus("terms/matchfail.lct")));
  CaseBinding composed_mf = compose_bindings(m->binding, m->sub0->binding);
  TermPtr stuck = composed_mf.lookup("C'");
  if (!stuck || classify(stuck).kind != Classification::Kind::Undefined ||
      m->binding.contains("C'")) {
    ok = false;
    detail = "composed binding lacks the match-failure branch";
  }

  long elapsed = ms_since(start);
  if (elapsed >= 1000) {
    ok = false;
    detail = "took " + std::to_string(elapsed) + " ms, bound is 1 s";
  }
  report(2, "case composition reproduces divergence and match failure", ok, detail);
}

void criterion_3() {
  auto start = Clock::now();
  std::string detail;
  bool ok = true;

  std::vector<std::string> positives = {
      "scripts/example31.lcd",        "scripts/example31_vector.lcd",
      "scripts/case_lambda_left.lcd", "scripts/case_lambda_right.lcd",
      "scripts/diverge_typing.lcd",   "scripts/matchfail_typing.lcd",
      "scripts/pred_union.lcd",       "scripts/identity.lcd",
      "scripts/pure_value.lcd",       "scripts/empty_binding.lcd",
  };
  for (const auto& f : positives) {
    CheckResult r = check_derivation(parse_script(read_file(corpus(f))));
    if (!r.ok) {
      ok = false;
      detail = f + " rejected: " + r.reason + " at " + path_to_string(r.node);
    }
  }

  struct Neg {
    std::string file;
    std::string node;
    std::string reason;
  };
  std::vector<Neg> negatives = {
      {"scripts_negative/neg_constr_equal.lcd", "[]",
       "constr: the constructors must differ"},
      {"scripts_negative/neg_cb_index.lcd", "[]",
       "cb: branch index i0=2 is out of range"},
      {"scripts_negative/neg_forall_fresh.lcd", "[]",
       "forall-intro: $X occurs free on the left"},
  };
  for (const auto& n : negatives) {
    CheckResult r = check_derivation(parse_script(read_file(corpus(n.file))));
    if (r.ok || path_to_string(r.node) != n.node || r.reason != n.reason) {
      ok = false;
      detail = n.file + " must be rejected at " + n.node + " with: " + n.reason;
    }
  }

  long elapsed = ms_since(start);
  if (elapsed >= 1000) {
    ok = false;
    detail = "took " + std::to_string(elapsed) + " ms, bound is 1 s";
  }
  report(3, "derivation corpus accepted and rejected as documented", ok, detail);
}

EnumConfig desk_config() {
  EnumConfig cfg;
  cfg.max_size = 6;
  cfg.constructors = {"C"};
  cfg.allow_daimon = true;
  cfg.closed_only = true;
  return cfg;
}

std::string first_failure(const SuiteReport& r) {
  if (r.failures.empty()) return "";
  return r.failures[0].term + ": " + r.failures[0].property;
}

void criterion_4() {
  auto start = Clock::now();
  SuiteReport r = suite_com_normalization(desk_config(), LabBudget{});
  long elapsed = ms_since(start);
  bool ok = r.checked > 0 && r.failures.empty();
  std::string detail = first_failure(r);
  if (elapsed >= 60000) {
    ok = false;
    detail = "took " + std::to_string(elapsed) + " ms, bound is 60 s";
  }
  report(4,
         "case-commutation strongly normalizes with unique normal forms (" +
             std::to_string(r.checked) + " checked)",
         ok, detail);
}

void criterion_5() {
  SuiteReport r = suite_normal_form_shape(desk_config(), LabBudget{});
  report(5,
         "closed defined normal terms are the daimon or values (" +
             std::to_string(r.checked) + " checked)",
         r.checked > 0 && r.failures.empty(), first_failure(r));
}

void criterion_6() {
  SuiteReport r = suite_commutation_simulation(desk_config(), LabBudget{});
  bool ok = r.checked > 0 && r.failures.empty();
  std::string detail = first_failure(r);
  if (!r.failures.empty()) {
    // genuine counterexamples: an AD or LD step under a case construct erases
    // the spine the commuted wrapper was pushed into, so the commuted reduct
    // is unreachable; minimal instance {| |}. \x. !  step LD [0]
    detail = std::to_string(r.failures.size()) +
             " daimon absorption counterexamples, first: " + r.failures[0].replay;
  }
  if (100 * r.skipped >= r.checked) {
    ok = false;
    detail = "skipped " + std::to_string(r.skipped) + " of " +
             std::to_string(r.checked) + " instances, bound is 1 percent";
  }
  report(6,
         "commutation normal forms simulate every plain step (" +
             std::to_string(r.checked) + " checked, " + std::to_string(r.skipped) +
             " skipped)",
         ok, detail);
}

void criterion_7() {
  SuiteReport r = suite_confluence(desk_config(), RuleSet::lc_minus(), LabBudget{});
  report(7,
         "complete reduction graphs are confluent (" + std::to_string(r.checked) +
             " checked)",
         r.checked > 0 && r.failures.empty(), first_failure(r));
}

void criterion_8() {
  SuiteReport r = suite_principal_reduct(desk_config(), LabBudget{});
  report(8,
         "principal reducts preserve reachable values (" +
             std::to_string(r.checked) + " checked)",
         r.checked > 0 && r.failures.empty(), first_failure(r));
}

void criterion_9() {
  SuiteReport r = suite_typed_soundness(corpus("scripts"), LabBudget{});
  report(9,
         "typed corpus subjects normalize soundly (" + std::to_string(r.checked) +
             " scripts)",
         r.checked == 10 && r.failures.empty(), first_failure(r));
}

void criterion_10() {
  std::string detail;
  bool ok = true;

  for (const auto& t : enumerate_terms(desk_config())) {
    if (!alpha_eq(parse_term(print_term(t)), t)) {
      ok = false;
      detail = "round trip broke on " + print_term(t);
      break;
    }
  }

  for (const std::string rel : {"terms/pred_s0.lct", "terms/example31.lct"}) {
    TermPtr t = parse_term(read_file(corpus(rel)));
    NormalizeOptions opt;
    std::string once = render_trace(t, normalize(t, opt));
    std::string twice = render_trace(t, normalize(t, opt));
    if (once != twice) {
      ok = false;
      detail = "repeated traces differ for " + rel;
    }
  }

  report(10, "parse/print round trip and deterministic traces", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failed_criteria == 0) {
    std::cout << "all 10 acceptance criteria pass\n";
    return 0;
  }
  std::cout << failed_criteria << " acceptance criteria failed\n";
  return 1;
}
