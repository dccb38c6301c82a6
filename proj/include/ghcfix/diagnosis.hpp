#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ghcfix/constraints.hpp"
#include "ghcfix/mode_solver.hpp"
#include "ghcfix/program.hpp"
#include "ghcfix/type_solver.hpp"

namespace ghcfix {

enum class Analysis : std::uint8_t { mode_only, type_only, mode_and_type };

inline bool uses_modes(Analysis a) { return a != Analysis::type_only; }
inline bool uses_types(Analysis a) { return a != Analysis::mode_only; }

const char* analysis_name(Analysis a);

enum class DetectionRule : std::uint8_t { guard_var_not_in_head, occur_check, singleton_naming };

const char* detection_rule_name(DetectionRule r);

struct DetectionViolation {
  DetectionRule rule;
  int clause = 0;
  std::string variable;  // occurrence key

  bool operator==(const DetectionViolation&) const = default;
};

struct ClauseVar {
  int clause = 0;
  std::string variable;

  auto operator<=>(const ClauseVar&) const = default;
};

enum class SubsetKind : std::uint8_t { mode, type, detection };

struct MinimalSubset {
  SubsetKind kind = SubsetKind::mode;
  std::vector<ModeConstraint> mode;
  std::vector<TypeConstraint> type;
  std::optional<DetectionViolation> violation;
  std::set<int> indicated_clauses;
  std::set<ClauseVar> indicated_variables;
};

struct SuspectedRow {
  int clause = 0;
  std::string variable;
  std::vector<int> subsets;  // 1-based subset ids
};

struct SuspectedGroup {
  std::vector<int> subset_ids;  // 1-based, into Diagnosis::subsets
  std::set<int> suspected_clauses;
  std::vector<SuspectedRow> table;
};

/// Finds one minimal inconsistent subset by growing a set S of necessary
/// members: each round adds constraints in order on top of S until the
/// first contradiction, and that constraint joins S. Graph must provide
/// add(), contradictory(), snapshot() and rollback(). Returns indices in
/// input order, or empty when the input is consistent.
template <class Graph, class C>
std::vector<std::size_t> find_mis(std::span<const C> cs) {
  Graph g;
  std::vector<std::size_t> s;
  for (;;) {
    auto base = g.snapshot();
    std::size_t i = 0;
    for (; i < cs.size(); ++i) {
      g.add(cs[i]);
      if (g.contradictory()) break;
    }
    if (i == cs.size()) return {};  // reached the sentinel
    g.rollback(base);
    s.push_back(i);
    g.add(cs[i]);
    if (g.contradictory()) break;
  }
  std::sort(s.begin(), s.end());
  return s;
}

/// Repeatedly extracts a subset and removes its members until the rest is
/// consistent. Indices refer to the input.
template <class Graph, class C>
std::vector<std::vector<std::size_t>> find_all_mis(std::span<const C> cs) {
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> alive(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) alive[i] = i;
  for (;;) {
    std::vector<C> rest;
    rest.reserve(alive.size());
    for (auto i : alive) rest.push_back(cs[i]);
    auto local = find_mis<Graph, C>(std::span<const C>(rest));
    if (local.empty()) break;
    std::vector<std::size_t> global;
    for (auto j : local) global.push_back(alive[j]);
    found.push_back(global);
    std::vector<std::size_t> next;
    std::size_t k = 0;
    for (std::size_t j = 0; j < alive.size(); ++j) {
      if (k < local.size() && local[k] == j) {
        ++k;
        continue;
      }
      next.push_back(alive[j]);
    }
    alive = std::move(next);
  }
  return found;
}

std::vector<std::vector<std::size_t>> find_all_mode_mis(std::span<const ModeConstraint> cs);
std::vector<std::vector<std::size_t>> find_all_type_mis(std::span<const TypeConstraint> cs);

std::vector<DetectionViolation> check_detection_rules(const Program& p, int level);
std::vector<DetectionViolation> check_clause_detection_rules(const Program& p, int clause, int level);

/// Rules whose variable is blamed by a constraint.
bool indicates_variable(Rule r);

MinimalSubset make_mode_subset(std::vector<ModeConstraint> cs);
MinimalSubset make_type_subset(std::vector<TypeConstraint> cs);
MinimalSubset make_detection_subset(const DetectionViolation& v);

/// Subsets are numbered 1.. in the order mode, type, detection; groups are
/// connected components under "shares an indicated clause", ordered by
/// their smallest clause.
std::vector<SuspectedGroup> build_groups(const std::vector<MinimalSubset>& subsets);

/// Order used for subset extraction: constraints imposed by symbols
/// (function symbols, unifications, builtins) precede those imposed by
/// variables, each group in textual order.
std::vector<ModeConstraint> diagnosis_order(std::vector<ModeConstraint> cs);
std::vector<TypeConstraint> diagnosis_order(std::vector<TypeConstraint> cs);

struct DiagnoseOptions {
  Analysis analysis = Analysis::mode_and_type;
  int level = 2;
};

struct Diagnosis {
  std::vector<ModeConstraint> mode_constraints;
  std::vector<TypeConstraint> type_constraints;
  std::vector<std::vector<std::size_t>> mode_mis;  // indices into mode_constraints
  std::vector<std::vector<std::size_t>> type_mis;
  std::vector<DetectionViolation> violations;
  std::vector<MinimalSubset> subsets;
  std::vector<SuspectedGroup> groups;

  bool clean() const { return subsets.empty(); }
};

Diagnosis diagnose(const Program& p, const DiagnoseOptions& opts = {});

/// Cheap yes/no version of diagnose(): any contradiction or violation.
bool detects_error(const Program& p, const DiagnoseOptions& opts);

}  // namespace ghcfix
