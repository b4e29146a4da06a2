#pragma once

#include <string>
#include <vector>

#include "lcc/enumeration.hpp"
#include "lcc/reduction.hpp"

namespace lcc {

struct LabBudget {
  GraphBudget graph;
  int path_depth = 30;  // simulation path search bound
};

struct SuiteFailure {
  std::string term;      // offending term or script path
  std::string property;  // the violated property
  std::string replay;    // input that reproduces the failure deterministically
};

// Truncated instances count as skipped, never as passes.
struct SuiteReport {
  std::string suite;
  long checked = 0;
  long skipped = 0;
  std::vector<SuiteFailure> failures;
};

// Every LCOM step strictly decreases the structural measure; LCOM graphs are
// finite and confluent; the unique LCOM normal form alpha-equals
// case_normal_form.
SuiteReport suite_com_normalization(const EnumConfig& cfg, const LabBudget& budget);

// Every closed, defined, LC- normal term is the daimon or a value.
SuiteReport suite_normal_form_shape(const EnumConfig& cfg, const LabBudget& budget);

// For every LB step t -> t', a nonempty LC- path leads from the commuted
// form of t to the commuted form of t'; and when the commuted form's complete
// graph certifies perfect normalization, so does the original's.
SuiteReport suite_commutation_simulation(const EnumConfig& cfg, const LabBudget& budget);

// All complete reduction graphs have pairwise alpha-equal sinks.
SuiteReport suite_confluence(const EnumConfig& cfg, RuleSet rules,
                             const LabBudget& budget);

// For closed neutral terms with a principal reduct and a complete graph: the
// reduct is a one-step LC- target and loses no reachable value.
SuiteReport suite_principal_reduct(const EnumConfig& cfg, const LabBudget& budget);

// Scans a directory of .lcd scripts (sorted): every script checks; closed
// term subjects have complete, everywhere-defined LC- graphs; daimon-free
// subjects at pure data types normalize to pure values mirroring the type's
// constructor spine.
SuiteReport suite_typed_soundness(const std::string& corpus_dir,
                                  const LabBudget& budget);

std::string report_to_text(const SuiteReport& r);
std::string report_to_json(const SuiteReport& r);

// The six suites in order; corpus_dir empty skips typed soundness.
std::vector<SuiteReport> run_all_suites(const EnumConfig& cfg,
                                        const std::string& corpus_dir,
                                        const LabBudget& budget);

}  // namespace lcc
