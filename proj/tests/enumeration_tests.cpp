#include "doctest.h"
#include "lcc/enumeration.hpp"
#include "lcc/reduction.hpp"
#include "lcc/syntax.hpp"

#include <map>
#include <set>

using namespace lcc;

TEST_CASE("term size counts nodes") {
  CHECK(term_size(parse_term("x")) == 1);
  CHECK(term_size(parse_term("!")) == 1);
  CHECK(term_size(parse_term("\\x. x y")) == 4);
  CHECK(term_size(parse_term("{| C -> u |}. x")) == 3);
  CHECK(term_size(parse_term("{| |}. x")) == 2);
}

TEST_CASE("closed enumeration counts are frozen") {
  EnumConfig cfg;
  cfg.max_size = 3;
  auto with_daimon = enumerate_terms(cfg);
  CHECK(with_daimon.size() == 27);

  cfg.allow_daimon = false;
  auto without = enumerate_terms(cfg);
  CHECK(without.size() == 14);

  cfg.allow_daimon = true;
  CHECK(enumerate_terms_of_size(1, cfg).size() == 2);
  CHECK(enumerate_terms_of_size(2, cfg).size() == 5);
  CHECK(enumerate_terms_of_size(3, cfg).size() == 20);
}

TEST_CASE("enumerated terms are distinct, closed, and within size") {
  EnumConfig cfg;
  cfg.max_size = 4;
  auto terms = enumerate_terms(cfg);
  std::set<std::string> keys;
  for (auto& t : terms) {
    CHECK(is_closed(t));
    CHECK(term_size(t) <= 4);
    keys.insert(alpha_key(t));
  }
  CHECK(keys.size() == terms.size());
}

TEST_CASE("enumeration is deterministic") {
  EnumConfig cfg;
  cfg.max_size = 4;
  auto a = enumerate_terms(cfg);
  auto b = enumerate_terms(cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(print_term(a[i]) == print_term(b[i]));
}

TEST_CASE("counts satisfy the size recurrence") {
  // independent cross check: T(1) = 2 (C, !); T(n) includes lambdas over T(n-1)
  // with one extra bound variable, applications splitting n-1, and case terms.
  EnumConfig cfg;
  cfg.max_size = 5;
  auto all = enumerate_terms(cfg);
  std::map<int, int> by_size;
  for (auto& t : all) by_size[term_size(t)]++;
  CHECK(by_size[1] == 2);
  CHECK(by_size[2] == 5);
  CHECK(by_size[3] == 20);
  // lambdas at size n+1 are at least the count at size n (wrap each body)
  CHECK(by_size[4] >= by_size[3]);
  CHECK(by_size[5] >= by_size[4]);
  int total = 0;
  for (auto& [sz, n] : by_size) total += n;
  CHECK(total == static_cast<int>(all.size()));
}

TEST_CASE("open enumeration includes the supplied free variables") {
  EnumConfig cfg;
  cfg.max_size = 1;
  cfg.closed_only = false;
  cfg.variables = {"y"};
  auto terms = enumerate_terms(cfg);
  bool has_y = false;
  for (auto& t : terms)
    if (t->kind == TermKind::Var && t->name == "y") has_y = true;
  CHECK(has_y);
}

TEST_CASE("defined only filters out match failures") {
  EnumConfig cfg;
  cfg.max_size = 3;
  cfg.defined_only = true;
  auto terms = enumerate_terms(cfg);
  for (auto& t : terms) CHECK(!undefined_witness(t).has_value());
  EnumConfig all = cfg;
  all.defined_only = false;
  CHECK(terms.size() < enumerate_terms(all).size());
}

TEST_CASE("invalid sizes are rejected") {
  EnumConfig cfg;
  cfg.max_size = 0;
  CHECK_THROWS_AS(enumerate_terms(cfg), std::invalid_argument);
  EnumConfig one;
  CHECK_THROWS_AS(enumerate_terms_of_size(0, one), std::invalid_argument);
}
