#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcc/term.hpp"

namespace lcc {

// The nine rewrite rules. AL/AD fire on applications, LA/LD under binders,
// the rest drive a case construct through its scrutinee. CC composes nested
// case constructs and is the one LC- leaves out.
enum class Rule { AL, AD, LA, LD, CO, CD, CA, CL, CC };

const char* rule_name(Rule r);
std::optional<Rule> rule_by_name(const std::string& name);

struct RuleSet {
  unsigned mask = 0;

  static RuleSet none() { return {}; }
  static RuleSet full();
  static RuleSet lc_minus();  // everything but CC
  static RuleSet lcom();      // CA, CL
  static RuleSet lb();        // AL, AD, LA, LD, CO, CD
  static std::optional<RuleSet> by_name(const std::string& name);

  bool enabled(Rule r) const { return mask & (1u << static_cast<unsigned>(r)); }
  RuleSet& add(Rule r) {
    mask |= 1u << static_cast<unsigned>(r);
    return *this;
  }
  RuleSet united(RuleSet other) const { return RuleSet{mask | other.mask}; }
  bool operator==(const RuleSet&) const = default;
};

// Path from the root: child indices, where a case construct numbers its
// scrutinee 0 and its branch bodies 1..n in binding order.
using Path = std::vector<int>;
std::string path_to_string(const Path& p);

struct Redex {
  Path pos;
  Rule rule;
};

struct InvalidRedexError : std::runtime_error {
  explicit InvalidRedexError(const std::string& what) : std::runtime_error(what) {}
};

// Every redex of t under the given rules, in leftmost-outermost order
// (prefix positions first, then smaller sibling index), with its reduct.
std::vector<std::pair<Redex, TermPtr>> one_step_reducts(const TermPtr& t, RuleSet rules);

// Contract one redex; throws InvalidRedexError when the position or rule no
// longer matches.
TermPtr contract(const TermPtr& t, const Redex& redex);

// outer o inner: each inner branch body gets the outer binding pushed onto it.
CaseBinding compose_bindings(const CaseBinding& outer, const CaseBinding& inner);

enum class Strategy { LeftmostOutermost, RandomSeeded };

struct NormalizeOptions {
  RuleSet rules = RuleSet::lc_minus();
  Strategy strategy = Strategy::LeftmostOutermost;
  std::uint64_t seed = 0;
  int fuel = 10000;
};

struct ReductionStep {
  Redex redex;
  TermPtr result;
};

struct NormalizeOutcome {
  bool reached_normal_form = false;
  TermPtr term;
  std::vector<ReductionStep> trace;
};

NormalizeOutcome normalize(const TermPtr& t, const NormalizeOptions& opts);

// Case-commutation normal form: pushes every case construct as deep as CA/CL
// allow. Terminates because the structural measure strictly decreases at
// every rewrite of a nested case; that decrease is asserted at runtime.
TermPtr case_normal_form(const TermPtr& t);
CaseBinding case_normal_form(const CaseBinding& b);

struct Classification {
  enum class Kind { Open, Undefined, ValueData, ValueAbstraction, Neutral };
  Kind kind;
  std::set<std::string> free;  // Open
  Path witness;                // Undefined: leftmost match-failure position
};

// Leftmost (pre-order) case construct whose scrutinee is a constructor
// outside the binding's domain.
std::optional<Path> undefined_witness(const TermPtr& t);

// Undefined wins over Open; values are recognized by shape (a constructor
// spine or an abstraction); everything else closed and defined is neutral,
// the daimon included.
Classification classify(const TermPtr& t);

bool is_value_shape(const TermPtr& t);

struct GraphBudget {
  int max_nodes = 500;
  int max_depth = 60;
};

enum class GraphStatus { Complete, TruncatedNodes, TruncatedDepth, TruncatedCycle };

const char* graph_status_name(GraphStatus s);

struct GraphEdge {
  int source;
  Redex redex;
  int target;
};

// Nodes are alpha-equivalence classes; node 0 is the root. Complete means
// every node was expanded within budget and no directed cycle exists, so the
// graph certifies strong normalization; a cycle is reported as truncation
// because it witnesses an infinite reduction sequence.
struct ReductionGraph {
  std::vector<TermPtr> nodes;
  std::vector<bool> expanded;
  std::vector<GraphEdge> edges;
  GraphStatus status = GraphStatus::Complete;

  bool complete() const { return status == GraphStatus::Complete; }
  std::vector<int> sinks() const;  // expanded nodes with no outgoing edge
};

ReductionGraph reduction_graph(const TermPtr& t, RuleSet rules, GraphBudget budget = {});

std::string graph_to_dot(const ReductionGraph& g);

struct ValueSearch {
  std::vector<TermPtr> values;
  bool complete = false;
};

// Values reachable from t under LC-, within the graph budget.
ValueSearch values_of(const TermPtr& t, GraphBudget budget = {});

// The principal reduct of a closed neutral term, when one of the head
// equations applies. Head-variable-free terms it leaves alone (daimon heads,
// match failures) have no principal reduct.
std::optional<TermPtr> principal_reduct(const TermPtr& t);

// Rendering of a normalization run; the CLI and the golden-trace tests share
// this so the bytes agree.
std::string render_trace(const TermPtr& initial, const NormalizeOutcome& outcome);

}  // namespace lcc
