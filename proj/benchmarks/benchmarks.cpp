#include <benchmark/benchmark.h>

#include "lcc/enumeration.hpp"
#include "lcc/lab.hpp"
#include "lcc/reduction.hpp"
#include "lcc/syntax.hpp"

namespace {

const char* kExample31 =
    "{| Tab -> \\x. \\y. Tab x |}. (Tab ((\\w. w) t1) t2 t3)";

void BM_NormalizeExample(benchmark::State& state) {
  lcc::TermPtr t = lcc::parse_term(kExample31);
  for (auto _ : state) {
    auto out = lcc::normalize(t, {});
    benchmark::DoNotOptimize(out.term);
  }
}
BENCHMARK(BM_NormalizeExample);

void BM_CaseNormalForm(benchmark::State& state) {
  lcc::TermPtr t = lcc::parse_term(
      "{| C -> C ; D -> ! |}. ({| C -> D ; D -> C |}. ((\\x. x) (\\y. C y)))");
  for (auto _ : state) {
    auto nf = lcc::case_normal_form(t);
    benchmark::DoNotOptimize(nf);
  }
}
BENCHMARK(BM_CaseNormalForm);

void BM_EnumerateSize5(benchmark::State& state) {
  lcc::EnumConfig cfg;
  cfg.max_size = 5;
  for (auto _ : state) {
    auto v = lcc::enumerate_terms(cfg);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_EnumerateSize5);

void BM_ReductionGraph(benchmark::State& state) {
  lcc::TermPtr t = lcc::parse_term(kExample31);
  for (auto _ : state) {
    auto g = lcc::reduction_graph(t, lcc::RuleSet::lc_minus());
    benchmark::DoNotOptimize(g.nodes.size());
  }
}
BENCHMARK(BM_ReductionGraph);

}  // namespace

BENCHMARK_MAIN();
