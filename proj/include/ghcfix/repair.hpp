#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghcfix/diagnosis.hpp"

namespace ghcfix {

/// occurrence id -> replacement
using RewritePlan = std::map<int, Replacement>;

struct RepairOptions {
  Analysis analysis = Analysis::mode_and_type;
  int level = 2;
  int max_depth = 1;
  std::optional<int> max_priority;  // unset: keep only the best band
  std::string fresh_prefix = "_F";
};

struct Penalty {
  int clause = 0;
  std::string variable;
  std::string rule;  // "HR1.1" .. "HR1.4", "HR2"

  bool operator==(const Penalty&) const = default;
};

struct PriorityScore {
  std::vector<Penalty> penalties;

  int priority() const { return 1 + static_cast<int>(penalties.size()); }
};

struct Alternative {
  RewritePlan plan;
  Program program;
  PriorityScore score;
  int depth = 0;
  std::vector<int> changed_clauses;
  bool full_check_passed = true;

  int priority() const { return score.priority(); }
};

enum class Rejection : std::uint8_t { none, priority_bound, detection_rule, mode_contradiction, type_contradiction };

const char* rejection_name(Rejection r);

struct Verdict {
  std::optional<Alternative> alternative;
  Rejection reason = Rejection::none;
};

/// Occurrence ids of the group's suspected clauses, in textual order.
std::vector<int> suspected_sites(const Program& p, const SuspectedGroup& g);

struct RewriteSpace {
  std::string fresh_prefix = "_F";
  bool underscore_targets = true;  // existing "_"-prefixed variables may be targets
};

/// Enumerates every way of rewriting `depth` distinct occurrences of the
/// given clauses: each takes another named variable of its clause or a
/// fresh one, fresh sites ranging over all sharing partitions within a
/// clause. The sink returns false to stop; the return value says whether
/// the enumeration ran to completion.
bool enumerate_rewritings(const Program& p, const std::set<int>& clauses, int depth, const RewriteSpace& space,
                          const std::function<bool(const RewritePlan&)>& sink);

/// Enumerates rewritings of `depth` distinct occurrences in the group's
/// clauses. The sink returns false to stop.
void candidate_plans(const Program& p, const SuspectedGroup& g, int depth, const std::string& fresh_prefix,
                     const std::function<bool(const RewritePlan&)>& sink);

/// True iff every subset of the group has an indicated variable whose
/// occurrence the plan replaces, or that the plan assigns to an occurrence
/// not currently holding it.
bool quick_check(const Program& p, const RewritePlan& plan, const std::vector<MinimalSubset>& subsets,
                 const SuspectedGroup& g);
bool quick_check(const std::vector<VarOccurrence>& occurrences, const RewritePlan& plan,
                 const std::vector<MinimalSubset>& subsets, const SuspectedGroup& g);

/// Heuristic penalties over the variables whose occurrences the plan
/// changed. `types` (solved for the candidate) decides the list-element
/// rule; without it the rule falls back to occurrence paths.
PriorityScore score_priority(const Program& original, const Program& candidate, const RewritePlan& plan,
                             const TypeGraph* types = nullptr, bool include_element_rule = true);

/// Checks plans of one group against the rest of the program. The
/// constraints outside the group are solved once and reused.
class GroupVerifier {
 public:
  GroupVerifier(const Program& p, const Diagnosis& d, std::size_t group, const RepairOptions& opts);

  Verdict verify(const RewritePlan& plan, std::optional<int> bound = std::nullopt);
  /// Same, with the rewritten program already at hand.
  Verdict verify(const RewritePlan& plan, Program candidate, std::optional<int> bound);

  const SuspectedGroup& group() const { return group_; }

 private:
  const Program& program_;
  SuspectedGroup group_;
  RepairOptions opts_;
  std::vector<int> clauses_;
  ModeGraph modes_;
  TypeGraph types_;
  GraphSnapshot mode_base_;
  GraphSnapshot type_base_;
};

/// Whole-program mode/type consistency and detection rules.
bool full_check(const Program& p, Analysis analysis, int level);

struct RepairStats {
  std::size_t enumerated = 0;
  std::size_t quick_checked = 0;  // passed quick-check
  std::size_t verified = 0;       // passed verification (before dedup)
};

struct GroupRepair {
  SuspectedGroup group;
  std::vector<Alternative> alternatives;  // sorted by priority, then discovery
  RepairStats stats;
};

std::vector<GroupRepair> search(const Program& p, const Diagnosis& d, const RepairOptions& opts);

/// diagnose() followed by search().
std::vector<GroupRepair> repair(const Program& p, const RepairOptions& opts, Diagnosis* diagnosis_out = nullptr);

}  // namespace ghcfix
