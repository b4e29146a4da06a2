#include "lcc/enumeration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lcc/reduction.hpp"

namespace lcc {

int term_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Constr:
    case TermKind::Daimon:
      return 1;
    case TermKind::Lam:
      return 1 + term_size(t->sub0);
    case TermKind::App:
      return 1 + term_size(t->sub0) + term_size(t->sub1);
    case TermKind::Case: {
      int n = 1 + term_size(t->sub0);
      for (const auto& [k, b] : t->binding.branches) n += term_size(b);
      return n;
    }
  }
  return 0;
}

namespace {

std::string depth_name(int depth) { return "x" + std::to_string(depth); }

struct Enumerator {
  const EnumConfig& cfg;
  std::vector<std::string> constrs;
  std::map<std::pair<int, int>, std::vector<TermPtr>> memo;

  explicit Enumerator(const EnumConfig& c) : cfg(c) {
    constrs = c.constructors;
    std::sort(constrs.begin(), constrs.end());
    constrs.erase(std::unique(constrs.begin(), constrs.end()), constrs.end());
  }

  const std::vector<TermPtr>& gen(int size, int depth) {
    auto key = std::make_pair(size, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<TermPtr> out;
    if (size == 1) {
      for (int i = 1; i <= depth; ++i) out.push_back(var(depth_name(i)));
      if (!cfg.closed_only)
        for (const auto& v : cfg.variables) out.push_back(var(v));
      for (const auto& c : constrs) out.push_back(constr(c));
      if (cfg.allow_daimon) out.push_back(daimon());
    } else if (size > 1) {
      for (const auto& body : gen(size - 1, depth + 1))
        out.push_back(lam(depth_name(depth + 1), body));
      for (int fs = 1; fs <= size - 2; ++fs) {
        const auto& funs = gen(fs, depth);
        const auto& args = gen(size - 1 - fs, depth);
        for (const auto& f : funs)
          for (const auto& a : args) out.push_back(app(f, a));
      }
      for (std::size_t k = 0; k <= constrs.size(); ++k) {
        std::vector<std::size_t> subset(k);
        emit_subsets(size, depth, subset, 0, 0, out);
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }

  // Choose the next key index for a k-subset of the sorted alphabet.
  void emit_subsets(int size, int depth, std::vector<std::size_t>& subset,
                    std::size_t chosen, std::size_t from, std::vector<TermPtr>& out) {
    if (chosen == subset.size()) {
      emit_cases(size, depth, subset, out);
      return;
    }
    for (std::size_t i = from; i < constrs.size(); ++i) {
      subset[chosen] = i;
      emit_subsets(size, depth, subset, chosen + 1, i + 1, out);
    }
  }

  void emit_cases(int size, int depth, const std::vector<std::size_t>& subset,
                  std::vector<TermPtr>& out) {
    int budget = size - 1;  // scrutinee + branch bodies
    int slots = 1 + static_cast<int>(subset.size());
    if (budget < slots) return;
    std::vector<int> sizes(static_cast<std::size_t>(slots));
    emit_compositions(budget, 0, sizes, depth, subset, out);
  }

  void emit_compositions(int rest, std::size_t slot, std::vector<int>& sizes,
                         int depth, const std::vector<std::size_t>& subset,
                         std::vector<TermPtr>& out) {
    std::size_t slots = sizes.size();
    if (slot + 1 == slots) {
      sizes[slot] = rest;
      std::vector<std::pair<std::string, TermPtr>> branches(subset.size());
      fill_branches(sizes, depth, subset, 0, branches, out);
      return;
    }
    int reserve = static_cast<int>(slots - slot - 1);
    for (int s = 1; s + reserve <= rest; ++s) {
      sizes[slot] = s;
      emit_compositions(rest - s, slot + 1, sizes, depth, subset, out);
    }
  }

  void fill_branches(const std::vector<int>& sizes, int depth,
                     const std::vector<std::size_t>& subset, std::size_t i,
                     std::vector<std::pair<std::string, TermPtr>>& branches,
                     std::vector<TermPtr>& out) {
    if (i == subset.size()) {
      for (const auto& scrut : gen(sizes[0], depth))
        out.push_back(case_of(make_binding(branches), scrut));
      return;
    }
    for (const auto& body : gen(sizes[i + 1], depth)) {
      branches[i] = {constrs[subset[i]], body};
      fill_branches(sizes, depth, subset, i + 1, branches, out);
    }
  }
};

}  // namespace

std::vector<TermPtr> enumerate_terms_of_size(int size, const EnumConfig& cfg) {
  if (size < 1) throw std::invalid_argument("term size must be at least 1");
  Enumerator e(cfg);
  std::vector<TermPtr> out = e.gen(size, 0);
  if (cfg.defined_only) {
    std::vector<TermPtr> kept;
    for (auto& t : out)
      if (!undefined_witness(t)) kept.push_back(t);
    out = std::move(kept);
  }
  return out;
}

std::vector<TermPtr> enumerate_terms(const EnumConfig& cfg) {
  if (cfg.max_size < 1) throw std::invalid_argument("max_size must be at least 1");
  std::vector<TermPtr> out;
  for (int s = 1; s <= cfg.max_size; ++s) {
    auto v = enumerate_terms_of_size(s, cfg);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace lcc
