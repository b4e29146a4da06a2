#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcc/derivation.hpp"
#include "lcc/lab.hpp"
#include "lcc/reduction.hpp"
#include "lcc/script.hpp"
#include "lcc/syntax.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitParse = 2;

lcc::RuleSet rules_or_throw(const std::string& name) {
  auto rs = lcc::RuleSet::by_name(name);
  if (!rs) throw CLI::ValidationError("--rules", "unknown rule set " + name);
  return *rs;
}

lcc::NormalizeOptions strategy_options(const std::string& strategy, int fuel,
                                       const std::string& rules) {
  lcc::NormalizeOptions opts;
  opts.rules = rules_or_throw(rules);
  opts.fuel = fuel;
  if (strategy == "lo") {
    opts.strategy = lcc::Strategy::LeftmostOutermost;
  } else if (strategy.rfind("random:", 0) == 0) {
    opts.strategy = lcc::Strategy::RandomSeeded;
    opts.seed = std::stoull(strategy.substr(7));
  } else {
    throw CLI::ValidationError("--strategy", "expected lo or random:SEED");
  }
  return opts;
}

std::string classification_text(const lcc::Classification& c) {
  using Kind = lcc::Classification::Kind;
  switch (c.kind) {
    case Kind::Open: {
      std::string out = "open, free variables:";
      for (const auto& v : c.free) out += " " + v;
      return out;
    }
    case Kind::Undefined:
      return "undefined, match failure at " + lcc::path_to_string(c.witness);
    case Kind::ValueData:
      return "value (data structure)";
    case Kind::ValueAbstraction:
      return "value (abstraction)";
    case Kind::Neutral:
      return "neutral";
  }
  return "";
}

int run(int argc, char** argv) {
  CLI::App app{"lambda calculus with constructors workbench"};
  app.require_subcommand(1);

  std::string file, rules = "lcminus", strategy = "lo", dot_path, report_path;
  std::string lhs_text, rhs_text, corpus_dir;
  int fuel = 10000, depth = 8, max_nodes = 500, max_depth = 60, size = 6;
  bool trace = false;
  std::vector<std::string> suites;

  auto* reduce = app.add_subcommand("reduce", "reduce a term file");
  reduce->add_option("file", file)->required();
  reduce->add_option("--rules", rules);
  reduce->add_option("--strategy", strategy);
  reduce->add_option("--fuel", fuel);
  reduce->add_flag("--trace", trace);

  auto* nf = app.add_subcommand("nf", "print the normal form");
  nf->add_option("file", file)->required();
  nf->add_option("--rules", rules);
  nf->add_option("--fuel", fuel);

  auto* cnf = app.add_subcommand("cnf", "print the case-commutation normal form");
  cnf->add_option("file", file)->required();

  auto* classify = app.add_subcommand("classify", "classify a term");
  classify->add_option("file", file)->required();

  auto* graph = app.add_subcommand("graph", "expand the reduction graph");
  graph->add_option("file", file)->required();
  graph->add_option("--rules", rules);
  graph->add_option("--max-nodes", max_nodes);
  graph->add_option("--max-depth", max_depth);
  graph->add_option("--dot", dot_path);

  auto* check = app.add_subcommand("check", "check a derivation script");
  check->add_option("script", file)->required();

  auto* subtype = app.add_subcommand("subtype", "search for a sub-typing derivation");
  subtype->add_option("lhs", lhs_text)->required();
  subtype->add_option("rhs", rhs_text)->required();
  subtype->add_option("--depth", depth);

  auto* measure = app.add_subcommand("measure", "print the structural measure");
  measure->add_option("file", file)->required();

  auto* lab = app.add_subcommand("lab", "run property suites");
  lab->add_option("suites", suites, "subset of suites to run");
  lab->add_option("--size", size);
  lab->add_option("--max-nodes", max_nodes);
  lab->add_option("--max-depth", max_depth);
  lab->add_option("--corpus", corpus_dir, "script directory for typed soundness");
  lab->add_option("--report", report_path, "write JSON reports to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (reduce->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    lcc::NormalizeOutcome out = lcc::normalize(t, strategy_options(strategy, fuel, rules));
    if (trace) {
      std::cout << lcc::render_trace(t, out);
    } else if (out.reached_normal_form) {
      std::cout << "normal form: " << lcc::print_term(out.term) << "\n"
                << "steps: " << out.trace.size() << "\n";
    }
    if (!out.reached_normal_form && !trace)
      std::cout << "fuel exhausted after " << out.trace.size()
                << " steps: " << lcc::print_term(out.term) << "\n";
    if (!out.reached_normal_form)
      std::cout << "note: no normal form within fuel; the term may diverge\n";
    return kExitOk;
  }
  if (nf->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    lcc::NormalizeOptions opts;
    opts.rules = rules_or_throw(rules);
    opts.fuel = fuel;
    lcc::NormalizeOutcome out = lcc::normalize(t, opts);
    if (!out.reached_normal_form) {
      std::cout << "fuel exhausted after " << out.trace.size()
                << " steps: " << lcc::print_term(out.term) << "\n";
      return kExitOk;
    }
    std::cout << lcc::print_term(out.term) << "\n";
    return kExitOk;
  }
  if (cnf->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    std::cout << lcc::print_term(lcc::case_normal_form(t)) << "\n";
    return kExitOk;
  }
  if (classify->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    std::cout << classification_text(lcc::classify(t)) << "\n";
    return kExitOk;
  }
  if (graph->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    lcc::ReductionGraph g =
        lcc::reduction_graph(t, rules_or_throw(rules), {max_nodes, max_depth});
    std::cout << "nodes: " << g.nodes.size() << ", edges: " << g.edges.size()
              << ", status: " << lcc::graph_status_name(g.status) << "\n";
    if (!dot_path.empty()) {
      std::ofstream out(dot_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + dot_path);
      out << lcc::graph_to_dot(g);
      std::cout << "dot written to " << dot_path << "\n";
    }
    return kExitOk;
  }
  if (check->parsed()) {
    lcc::Derivation d = lcc::parse_script(lcc::read_file(file));
    lcc::CheckResult res = lcc::check_derivation(d);
    for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";
    if (res.ok) {
      std::cout << "accepted: " << lcc::print_judgment(d.conclusion) << "\n";
      return kExitOk;
    }
    std::cout << "rejected at node " << lcc::path_to_string(res.node) << ": "
              << res.reason << "\n";
    return kExitRejected;
  }
  if (subtype->parsed()) {
    // arguments ending in .lty name type files, anything else is inline text
    auto type_arg = [](const std::string& s) {
      if (s.size() > 4 && s.compare(s.size() - 4, 4, ".lty") == 0)
        return lcc::parse_type(lcc::read_file(s));
      return lcc::parse_type(s);
    };
    lcc::TypePtr l = type_arg(lhs_text);
    lcc::TypePtr r = type_arg(rhs_text);
    auto found = lcc::search_subtyping(l, r, depth);
    if (!found) {
      std::cout << "not found (inconclusive)\n";
      return kExitOk;
    }
    std::cout << lcc::print_script(*found);
    return kExitOk;
  }
  if (measure->parsed()) {
    lcc::TermPtr t = lcc::parse_term(lcc::read_file(file));
    std::cout << lcc::structural_measure(t) << "\n";
    return kExitOk;
  }
  if (lab->parsed()) {
    lcc::EnumConfig cfg;
    cfg.max_size = size;
    lcc::LabBudget budget;
    budget.graph = {max_nodes, max_depth};
    std::vector<lcc::SuiteReport> reports;
    auto want = [&](const std::string& name) {
      return suites.empty() ||
             std::find(suites.begin(), suites.end(), name) != suites.end();
    };
    if (want("com_normalization"))
      reports.push_back(lcc::suite_com_normalization(cfg, budget));
    if (want("normal_form_shape"))
      reports.push_back(lcc::suite_normal_form_shape(cfg, budget));
    if (want("commutation_simulation"))
      reports.push_back(lcc::suite_commutation_simulation(cfg, budget));
    if (want("confluence"))
      reports.push_back(lcc::suite_confluence(cfg, lcc::RuleSet::lc_minus(), budget));
    if (want("principal_reduct"))
      reports.push_back(lcc::suite_principal_reduct(cfg, budget));
    if (!corpus_dir.empty() && want("typed_soundness"))
      reports.push_back(lcc::suite_typed_soundness(corpus_dir, budget));
    bool failed = false;
    for (const auto& r : reports) {
      std::cout << lcc::report_to_text(r);
      failed = failed || !r.failures.empty();
    }
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + report_path);
      out << "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i)
        out << lcc::report_to_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
      out << "]\n";
      std::cout << "report written to " << report_path << "\n";
    }
    return failed ? kExitRejected : kExitOk;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lcc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
