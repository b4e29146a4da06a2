#include "doctest.h"
#include "lcc/term.hpp"

using namespace lcc;

TEST_CASE("factories validate identifier alphabets") {
  CHECK_THROWS_AS(var("X"), std::invalid_argument);
  CHECK_THROWS_AS(constr("c"), std::invalid_argument);
  CHECK_NOTHROW(var("x'"));
  CHECK_NOTHROW(constr("C'"));
  CHECK_THROWS_AS(make_binding({{"C", daimon()}, {"C", daimon()}}),
                  std::invalid_argument);
}

TEST_CASE("free variables respect binding") {
  TermPtr t = lam("x", app(var("x"), var("y")));
  auto fv = free_vars(t);
  CHECK(fv == std::set<std::string>{"y"});
  CHECK(!is_closed(t));
  CHECK(is_closed(lam("y", lam("x", app(var("x"), var("y"))))));

  TermPtr c = case_of(make_binding({{"C", var("x")}}), var("y"));
  fv = free_vars(c);
  CHECK(fv == std::set<std::string>{"x", "y"});
}

TEST_CASE("substitution avoids capture") {
  // (\y. x) with x := y must rename the binder
  TermPtr t = lam("y", var("x"));
  TermPtr r = substitute(t, "x", var("y"));
  REQUIRE(r->kind == TermKind::Lam);
  CHECK(r->bound != "y");
  CHECK(r->sub0->kind == TermKind::Var);
  CHECK(r->sub0->name == "y");

  // no-op when the variable is shadowed
  TermPtr s = lam("x", var("x"));
  CHECK(alpha_eq(substitute(s, "x", daimon()), s));
}

TEST_CASE("alpha equivalence identifies renamed binders") {
  TermPtr a = lam("x", lam("y", app(var("x"), var("y"))));
  TermPtr b = lam("u", lam("v", app(var("u"), var("v"))));
  CHECK(alpha_eq(a, b));
  CHECK(!alpha_eq(a, lam("u", lam("v", app(var("v"), var("u"))))));
  CHECK(alpha_key(a) == alpha_key(b));

  // binding comparison ignores branch order
  CaseBinding b1 = make_binding({{"C", var("z")}, {"D", daimon()}});
  CaseBinding b2 = make_binding({{"D", daimon()}, {"C", var("z")}});
  CHECK(alpha_eq(b1, b2));
}

TEST_CASE("fresh names avoid the given set") {
  std::set<std::string> avoid{"x", "x'"};
  std::string f = fresh_name("x", avoid);
  CHECK(!avoid.count(f));
  CHECK(f.rfind("x", 0) == 0);
}

TEST_CASE("spines decompose application chains") {
  TermPtr t = app(app(constr("Tab"), var("x")), daimon());
  Spine s = spine_of(t);
  CHECK(s.head->name == "Tab");
  REQUIRE(s.args.size() == 2);
  CHECK(s.args[0]->name == "x");
  CHECK(s.args[1]->kind == TermKind::Daimon);
}

TEST_CASE("structural measure follows the defining equations") {
  // s({|{C -> C}|} . ((\x. x) C)) = s((\x.x) C) * (s(C) + 2) = 3 * 3 = 9
  TermPtr redex = app(lam("x", var("x")), constr("C"));
  CHECK(structural_measure(redex) == 3);
  TermPtr t = case_of(make_binding({{"C", constr("C")}}), redex);
  CHECK(structural_measure(t) == 9);
  // one CA step later: ({|{C -> C}|} . (\x. x)) C, measure 2*3 + 1 = 7
  TermPtr after = app(case_of(make_binding({{"C", constr("C")}}), lam("x", var("x"))),
                      constr("C"));
  CHECK(structural_measure(after) == 7);
  CHECK(structural_measure(daimon()) == 1);
}
