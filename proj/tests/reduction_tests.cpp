#include "doctest.h"
#include "lcc/reduction.hpp"
#include "lcc/syntax.hpp"

using namespace lcc;

namespace {
TermPtr pt(const std::string& s) { return parse_term(s); }
}

TEST_CASE("rule sets resolve by name") {
  REQUIRE(RuleSet::by_name("full").has_value());
  CHECK(RuleSet::by_name("full")->enabled(Rule::CC));
  CHECK(!RuleSet::by_name("lcminus")->enabled(Rule::CC));
  CHECK(*RuleSet::by_name("lcom") == RuleSet{}.add(Rule::CA).add(Rule::CL));
  CHECK(!RuleSet::by_name("lb")->enabled(Rule::CA));
  CHECK(!RuleSet::by_name("nope").has_value());
  CHECK(RuleSet::lc_minus() == RuleSet::lcom().united(RuleSet::lb()));
}

TEST_CASE("each rule fires on its canonical redex") {
  auto fires = [](const std::string& s, Rule r) {
    auto steps = one_step_reducts(pt(s), RuleSet::full());
    for (auto& [redex, reduct] : steps)
      if (redex.rule == r && redex.pos.empty()) return print_term(reduct);
    return std::string("<none>");
  };
  CHECK(fires("(\\x. x) C", Rule::AL) == "C");
  CHECK(fires("! C", Rule::AD) == "!");
  CHECK(fires("\\x. y x", Rule::LA) == "y");
  CHECK(fires("\\x. !", Rule::LD) == "!");
  CHECK(fires("{| C -> u |}. C", Rule::CO) == "u");
  CHECK(fires("{| C -> u |}. !", Rule::CD) == "!");
  CHECK(fires("{| C -> u |}. (x y)", Rule::CA) == "({| C -> u |}. x) y");
  CHECK(fires("{| C -> u |}. ({| D -> v |}. x)", Rule::CC) ==
        "{| D -> {| C -> u |}. v |}. x");
}

TEST_CASE("eta contraction requires the bound variable to be absent") {
  auto steps = one_step_reducts(pt("\\x. x x"), RuleSet::full());
  for (auto& [redex, reduct] : steps) CHECK(redex.rule != Rule::LA);
}

TEST_CASE("case over lambda freshens the binder when captured") {
  TermPtr t = pt("{| C -> x |}. (\\x. x)");
  auto steps = one_step_reducts(t, RuleSet::lcom());
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].first.rule == Rule::CL);
  TermPtr r = steps[0].second;
  REQUIRE(r->kind == TermKind::Lam);
  CHECK(r->bound != "x");
  CHECK(free_vars(r) == std::set<std::string>{"x"});
}

TEST_CASE("lcminus steps are exactly lcom plus lb steps") {
  std::vector<std::string> samples = {
      "(\\x. x) ({| C -> u |}. (y z))",
      "{| C -> \\x. x |}. ({| D -> ! |}. w)",
      "\\x. ({| C -> ! |}. x) x",
      "{| C -> u ; D -> v |}. (C w)",
  };
  for (auto& s : samples) {
    TermPtr t = pt(s);
    auto minus = one_step_reducts(t, RuleSet::lc_minus());
    auto com = one_step_reducts(t, RuleSet::lcom());
    auto lb = one_step_reducts(t, RuleSet::lb());
    CHECK(minus.size() == com.size() + lb.size());
    auto member = [&](const Redex& r) {
      for (auto& [q, u] : minus)
        if (q.rule == r.rule && q.pos == r.pos) return true;
      return false;
    };
    for (auto& [r, u] : com) CHECK(member(r));
    for (auto& [r, u] : lb) CHECK(member(r));
  }
}

TEST_CASE("contract rejects a stale redex descriptor") {
  TermPtr t = pt("(\\x. x) C");
  CHECK_THROWS_AS(contract(t, Redex{{}, Rule::CO}), InvalidRedexError);
  CHECK_THROWS_AS(contract(t, Redex{{0, 0, 0}, Rule::AL}), InvalidRedexError);
  CHECK(print_term(contract(t, Redex{{}, Rule::AL})) == "C");
}

TEST_CASE("binding composition applies the outer case to each branch") {
  CaseBinding inner = make_binding({{"C", pt("u")}});
  CaseBinding outer = make_binding({{"D", pt("v")}});
  CaseBinding both = compose_bindings(outer, inner);
  REQUIRE(both.size() == 1);
  CHECK(both.branches[0].first == "C");
  CHECK(print_term(both.branches[0].second) == "{| D -> v |}. u");

  CaseBinding empty_outer = compose_bindings(make_binding({}), inner);
  REQUIRE(empty_outer.size() == 1);
  CHECK(print_term(empty_outer.branches[0].second) == "{| |}. u");

  CaseBinding empty_inner = compose_bindings(outer, make_binding({}));
  CHECK(empty_inner.empty());
}

TEST_CASE("leftmost outermost normalization finds plain normal forms") {
  NormalizeOptions opt;
  auto out = normalize(pt("(\\n. {| Zero -> Zero ; S -> \\z. z |}. n) (S Zero)"), opt);
  CHECK(out.reached_normal_form);
  CHECK(print_term(out.term) == "Zero");
  REQUIRE(out.trace.size() == 4);
  CHECK(out.trace[0].redex.rule == Rule::AL);
  CHECK(out.trace[1].redex.rule == Rule::CA);
  CHECK(out.trace[2].redex.rule == Rule::CO);
  CHECK(out.trace[3].redex.rule == Rule::AL);
  CHECK(path_to_string(out.trace[2].redex.pos) == "[0]");
}

TEST_CASE("random strategy reaches the same normal form on confluent input") {
  TermPtr t = pt("(\\x. \\y. x) ((\\w. w) C) D");
  NormalizeOptions lo;
  auto a = normalize(t, lo);
  NormalizeOptions rnd;
  rnd.strategy = Strategy::RandomSeeded;
  rnd.seed = 42;
  auto b = normalize(t, rnd);
  REQUIRE(a.reached_normal_form);
  REQUIRE(b.reached_normal_form);
  CHECK(alpha_eq(a.term, b.term));

  // same seed, same trace
  auto c = normalize(t, rnd);
  REQUIRE(b.trace.size() == c.trace.size());
  for (size_t i = 0; i < b.trace.size(); ++i) {
    CHECK(b.trace[i].redex.rule == c.trace[i].redex.rule);
    CHECK(b.trace[i].redex.pos == c.trace[i].redex.pos);
  }
}

TEST_CASE("fuel exhaustion reports the partial trace") {
  NormalizeOptions opt;
  opt.fuel = 5;
  auto out = normalize(pt("(\\x. x x) (\\x. x x)"), opt);
  CHECK(!out.reached_normal_form);
  CHECK(out.trace.size() == 5);
}

TEST_CASE("case normal form eliminates commutation redexes") {
  TermPtr t = pt("{| C -> C |}. ((\\x. x) C)");
  TermPtr n = case_normal_form(t);
  CHECK(print_term(n) == "(\\x. {| C -> C |}. x) C");
  CHECK(one_step_reducts(n, RuleSet::lcom()).empty());
  CHECK(structural_measure(t) > structural_measure(n));
}

TEST_CASE("classification follows the precedence order") {
  auto kind = [](const std::string& s) { return classify(pt(s)).kind; };
  CHECK(kind("x") == Classification::Kind::Open);
  CHECK(kind("{| C -> u |}. x") == Classification::Kind::Open);
  CHECK(kind("{| D -> ! |}. C") == Classification::Kind::Undefined);
  CHECK(kind("C (\\x. x)") == Classification::Kind::ValueData);
  CHECK(kind("\\x. x") == Classification::Kind::ValueAbstraction);
  CHECK(kind("!") == Classification::Kind::Neutral);
  CHECK(kind("(\\x. x) C") == Classification::Kind::Neutral);
  // undefined wins over open
  CHECK(kind("{| D -> x |}. C") == Classification::Kind::Undefined);
}

TEST_CASE("undefined witness reports the failing case position") {
  TermPtr t = pt("\\y. {| D -> ! |}. C");
  auto w = undefined_witness(t);
  REQUIRE(w.has_value());
  CHECK(path_to_string(*w) == "[0]");
  CHECK(!undefined_witness(pt("{| C -> u |}. C")).has_value());
}

TEST_CASE("value shapes are constructor spines and abstractions") {
  CHECK(is_value_shape(pt("C x y")));
  CHECK(is_value_shape(pt("\\x. !")));
  CHECK(!is_value_shape(pt("x y")));
  CHECK(!is_value_shape(pt("!")));
}

TEST_CASE("reduction graphs report completion and truncation") {
  auto g = reduction_graph(pt("(\\x. x) C"), RuleSet::lc_minus());
  CHECK(g.status == GraphStatus::Complete);
  CHECK(g.complete());
  CHECK(g.nodes.size() == 2);
  REQUIRE(g.sinks().size() == 1);
  CHECK(print_term(g.nodes[g.sinks()[0]]) == "C");

  GraphBudget tiny;
  tiny.max_nodes = 2;
  auto big = reduction_graph(pt("(\\x. \\y. x y) (\\a. a) C"), RuleSet::lc_minus(), tiny);
  CHECK(big.status == GraphStatus::TruncatedNodes);

  GraphBudget shallow;
  shallow.max_depth = 1;
  auto deep = reduction_graph(pt("(\\x. x) ((\\y. y) ((\\z. z) C))"),
                              RuleSet::lc_minus(), shallow);
  CHECK(deep.status == GraphStatus::TruncatedDepth);

  auto omega = reduction_graph(pt("(\\x. x x) (\\x. x x)"), RuleSet::lc_minus());
  CHECK(omega.status == GraphStatus::TruncatedCycle);
  CHECK(!omega.complete());
}

TEST_CASE("dot export outlines the sinks twice") {
  auto g = reduction_graph(pt("(\\x. x) C"), RuleSet::lc_minus());
  std::string dot = graph_to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
  CHECK(dot.find("AL") != std::string::npos);
}

TEST_CASE("value search collects constructor heads under lcminus") {
  auto vs = values_of(pt("(\\x. x) (C !)"));
  CHECK(vs.complete);
  REQUIRE(vs.values.size() == 1);
  CHECK(print_term(vs.values[0]) == "C !");

  auto none = values_of(pt("!"));
  CHECK(none.complete);
  CHECK(none.values.empty());
}

TEST_CASE("principal reducts exist exactly for closed neutral terms") {
  auto pr = [](const std::string& s) { return principal_reduct(pt(s)); };
  auto p = pr("(\\x. x) C");
  REQUIRE(p.has_value());
  CHECK(print_term(*p) == "C");
  CHECK(!pr("x y").has_value());
  CHECK(!pr("! C").has_value());
  CHECK(!pr("{| D -> ! |}. C").has_value());

  auto q = pr("{| C -> ! |}. C");
  REQUIRE(q.has_value());
  CHECK(print_term(*q) == "!");

  // spine equations walk under applications
  auto r = pr("((\\x. x) (\\y. y)) C");
  REQUIRE(r.has_value());
  CHECK(print_term(*r) == "(\\y. y) C");
}

TEST_CASE("trace rendering is stable") {
  NormalizeOptions opt;
  TermPtr t = pt("(\\x. x) C");
  auto out = normalize(t, opt);
  std::string trace = render_trace(t, out);
  CHECK(trace.find("initial: (\\x. x) C") != std::string::npos);
  CHECK(trace.find("step 1: AL @ [] => C") != std::string::npos);
  CHECK(trace.find("normal form: C") != std::string::npos);
  CHECK(trace.find("steps: 1") != std::string::npos);
}
