#include "doctest.h"
#include "lcc/syntax.hpp"
#include "lcc/enumeration.hpp"

using namespace lcc;

TEST_CASE("term printing round trips through the parser") {
  std::vector<std::string> sources = {
      "x",
      "\\x. x y",
      "(\\x. x) y",
      "C x (D y)",
      "{| C -> u ; D' -> \\x. x |}. (w z)",
      "{| |}. !",
      "x (y z)",
      "\\x. \\y. x",
  };
  for (auto& s : sources) {
    TermPtr t = parse_term(s);
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  }
}

TEST_CASE("printing inserts parentheses only where grouping demands") {
  CHECK(print_term(parse_term("x y z")) == "x y z");
  CHECK(print_term(parse_term("x (y z)")) == "x (y z)");
  CHECK(print_term(parse_term("\\x. x y")) == "\\x. x y");
  CHECK(print_term(parse_term("(\\x. x) y")) == "(\\x. x) y");
  // a case scrutinee extends maximally right, like a lambda body
  CHECK(print_term(parse_term("{|C->u|}.x y")) == "{| C -> u |}. x y");
  CHECK(print_term(parse_term("({|C->u|}.x) y")) == "({| C -> u |}. x) y");
}

TEST_CASE("round trip holds across a small enumeration") {
  EnumConfig cfg;
  cfg.max_size = 4;
  cfg.closed_only = false;
  cfg.variables = {"y"};
  for (auto& t : enumerate_terms(cfg)) {
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  }
}

TEST_CASE("case branches keep their written order") {
  TermPtr t = parse_term("{| D -> u ; C -> v |}. x");
  REQUIRE(t->binding.size() == 2);
  CHECK(t->binding.branches[0].first == "D");
  CHECK(t->binding.branches[1].first == "C");
  CHECK(print_term(t) == "{| D -> u ; C -> v |}. x");
}

TEST_CASE("parser rejects duplicate branch constructors") {
  CHECK_THROWS_AS(parse_term("{| C -> u ; C -> v |}. x"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_term("\\x.\n  (y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("at 2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("x y)"), ParseError);
  CHECK_THROWS_AS(parse_term("\\X. x"), ParseError);
}

TEST_CASE("type printing round trips through the parser") {
  std::vector<std::string> sources = {
      "$X",
      "@a",
      "Nat",
      "Tab Nat @a",
      "Nat -> Nat -> Nat",
      "(Nat -> Nat) -> Nat",
      "Nat & Nat | Nat",
      "(Nat | Nat) & Nat",
      "forall $X. $X -> $X",
      "exists @a. Tab @a & Nat",
      "Tab (forall @a. @a)",
      "forall $X. forall @a. @a -> $X",
  };
  for (auto& s : sources) {
    TypePtr t = parse_type(s);
    CHECK(type_alpha_eq(parse_type(print_type(t)), t));
  }
}

TEST_CASE("type operator precedence binds application then meet then join then arrow") {
  CHECK(type_alpha_eq(parse_type("Tab Nat & Nat"),
                      type_inter(parse_type("Tab Nat"), parse_type("Nat"))));
  CHECK(type_alpha_eq(parse_type("Nat & Nat | Nat"),
                      type_union(type_inter(parse_type("Nat"), parse_type("Nat")),
                                 parse_type("Nat"))));
  CHECK(type_alpha_eq(parse_type("Nat | Nat -> Nat"),
                      arrow(type_union(parse_type("Nat"), parse_type("Nat")),
                            parse_type("Nat"))));
  // arrow associates right
  CHECK(type_alpha_eq(parse_type("Nat -> Nat -> Nat"),
                      arrow(parse_type("Nat"), parse_type("Nat -> Nat"))));
  // quantifiers extend maximally right
  CHECK(type_alpha_eq(parse_type("forall $X. $X -> $X"),
                      forall_ord("X", parse_type("$X -> $X"))));
}

TEST_CASE("type vectors split on semicolons") {
  auto v = parse_type_vector("Nat; $X ; forall @a. @a");
  REQUIRE(v.size() == 3);
  CHECK(type_alpha_eq(v[2], parse_type("forall @a. @a")));
  CHECK(parse_type_vector("").empty());
  CHECK(parse_type_vector("  ").empty());
  CHECK(print_type_vector(v) == "Nat; $X; forall @a. @a");
}

TEST_CASE("judgments parse in all three forms") {
  Judgment s = parse_judgment("Nat <= Nat | Nat");
  CHECK(s.kind == Judgment::Kind::Subtype);
  CHECK(type_alpha_eq(s.lhs, parse_type("Nat")));

  Judgment t = parse_judgment("x: Nat, f: Nat -> Nat |- f x : Nat");
  CHECK(t.kind == Judgment::Kind::TermTyping);
  REQUIRE(t.ctx.size() == 2);
  CHECK(t.ctx.entries[0].first == "x");
  CHECK(alpha_eq(t.subject, parse_term("f x")));
  CHECK(type_alpha_eq(t.ty, parse_type("Nat")));

  Judgment b = parse_judgment("|- {| C -> x ; D -> ! |} : Nat -> Nat");
  CHECK(b.kind == Judgment::Kind::BindingTyping);
  CHECK(b.binding.size() == 2);

  CHECK(print_judgment(parse_judgment(print_judgment(t))) == print_judgment(t));
}

TEST_CASE("judgment printing round trips") {
  std::vector<std::string> sources = {
      "Nat <= Nat",
      "|- ! : forall $X. $X",
      "x: Nat |- x : Nat",
      "|- {| |} : (forall @a. @a) -> forall $X. $X",
  };
  for (auto& s : sources) {
    Judgment j = parse_judgment(s);
    Judgment k = parse_judgment(print_judgment(j));
    CHECK(print_judgment(k) == print_judgment(j));
  }
}

TEST_CASE("read file reports missing paths") {
  CHECK_THROWS(read_file("/nonexistent/path.lct"));
}
