#include "ghcfix/diagnosis.hpp"

#include <map>
#include <numeric>

namespace ghcfix {

const char* analysis_name(Analysis a) {
  switch (a) {
    case Analysis::mode_only: return "mode";
    case Analysis::type_only: return "type";
    case Analysis::mode_and_type: return "mode&type";
  }
  return "?";
}

const char* detection_rule_name(DetectionRule r) {
  switch (r) {
    case DetectionRule::guard_var_not_in_head: return "var_not_in_the_head";
    case DetectionRule::occur_check: return "not_pass_occur_check";
    case DetectionRule::singleton_naming: return "singleton";
  }
  return "?";
}

std::vector<std::vector<std::size_t>> find_all_mode_mis(std::span<const ModeConstraint> cs) {
  return find_all_mis<ModeGraph, ModeConstraint>(cs);
}

std::vector<std::vector<std::size_t>> find_all_type_mis(std::span<const TypeConstraint> cs) {
  return find_all_mis<TypeGraph, TypeConstraint>(cs);
}

// ---------------------------------------------------------------------------
// detection rules

std::vector<DetectionViolation> check_clause_detection_rules(const Program& p, int clause, int level) {
  std::vector<DetectionViolation> out;
  if (level <= 0) return out;
  const Clause& c = p.clauses.at(clause);
  auto occs = enumerate_clause_occurrences(p, clause);

  std::set<std::string> head_vars;
  for (const auto& o : occs)
    if (o.region == Region::head) head_vars.insert(o.key());

  std::set<std::string> seen;
  for (const auto& o : occs) {
    if (o.region != Region::guard || head_vars.count(o.key())) continue;
    if (seen.insert(o.key()).second)
      out.push_back(DetectionViolation{DetectionRule::guard_var_not_in_head, clause, o.key()});
  }

  seen.clear();
  for (std::size_t g = 0; g < c.body.size(); ++g) {
    if (c.body[g].kind != GoalKind::unify) continue;
    std::set<std::string> left, right;
    for (const auto& o : occs) {
      if (o.region != Region::body || o.goal != static_cast<int>(g) || o.anonymous) continue;
      (o.path.front().arg == 1 ? left : right).insert(o.key());
    }
    for (const auto& o : occs) {
      if (o.region != Region::body || o.goal != static_cast<int>(g) || o.path.front().arg != 1) continue;
      if (right.count(o.key()) && seen.insert(o.key()).second)
        out.push_back(DetectionViolation{DetectionRule::occur_check, clause, o.key()});
    }
  }

  if (level >= 2) {
    std::map<std::string, int> counts;
    for (const auto& o : occs) ++counts[o.key()];
    for (const auto& o : occs) {
      if (o.anonymous || underscore_name(o.name) || counts[o.key()] != 1) continue;
      out.push_back(DetectionViolation{DetectionRule::singleton_naming, clause, o.key()});
    }
  }
  return out;
}

std::vector<DetectionViolation> check_detection_rules(const Program& p, int level) {
  std::vector<DetectionViolation> out;
  for (int i = 0; i < static_cast<int>(p.clauses.size()); ++i) {
    auto v = check_clause_detection_rules(p, i, level);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// subsets and groups

bool indicates_variable(Rule r) {
  switch (r) {
    case Rule::HV:
    case Rule::GV:
    case Rule::BV:
    case Rule::HBVt:
    case Rule::GVt:
      return true;
    default:
      return false;
  }
}

namespace {
void note(MinimalSubset& s, const Provenance& p) {
  s.indicated_clauses.insert(p.clause);
  if (indicates_variable(p.rule) && !p.variable.empty()) s.indicated_variables.insert(ClauseVar{p.clause, p.variable});
}
}  // namespace

MinimalSubset make_mode_subset(std::vector<ModeConstraint> cs) {
  MinimalSubset s;
  s.kind = SubsetKind::mode;
  for (const auto& c : cs) note(s, c.provenance);
  s.mode = std::move(cs);
  return s;
}

MinimalSubset make_type_subset(std::vector<TypeConstraint> cs) {
  MinimalSubset s;
  s.kind = SubsetKind::type;
  for (const auto& c : cs) note(s, c.provenance);
  s.type = std::move(cs);
  return s;
}

MinimalSubset make_detection_subset(const DetectionViolation& v) {
  MinimalSubset s;
  s.kind = SubsetKind::detection;
  s.violation = v;
  s.indicated_clauses.insert(v.clause);
  s.indicated_variables.insert(ClauseVar{v.clause, v.variable});
  return s;
}

std::vector<SuspectedGroup> build_groups(const std::vector<MinimalSubset>& subsets) {
  const std::size_t n = subsets.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, std::size_t> owner;  // clause -> first subset indicating it
  for (std::size_t i = 0; i < n; ++i) {
    for (int c : subsets[i].indicated_clauses) {
      auto [it, inserted] = owner.emplace(c, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, SuspectedGroup> by_root;
  for (std::size_t i = 0; i < n; ++i) {
    auto& g = by_root[find(i)];
    g.subset_ids.push_back(static_cast<int>(i) + 1);
    g.suspected_clauses.insert(subsets[i].indicated_clauses.begin(), subsets[i].indicated_clauses.end());
  }
  std::vector<SuspectedGroup> groups;
  for (auto& [root, g] : by_root) {
    std::map<ClauseVar, std::vector<int>> rows;
    for (int id : g.subset_ids)
      for (const auto& cv : subsets[static_cast<std::size_t>(id) - 1].indicated_variables) rows[cv].push_back(id);
    for (auto& [cv, ids] : rows) g.table.push_back(SuspectedRow{cv.clause, cv.variable, std::move(ids)});
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const SuspectedGroup& a, const SuspectedGroup& b) {
    int ca = a.suspected_clauses.empty() ? -1 : *a.suspected_clauses.begin();
    int cb = b.suspected_clauses.empty() ? -1 : *b.suspected_clauses.begin();
    if (ca != cb) return ca < cb;
    return a.subset_ids < b.subset_ids;
  });
  return groups;
}

namespace {
template <class C>
void symbol_rules_first(std::vector<C>& cs) {
  std::stable_partition(cs.begin(), cs.end(), [](const C& c) { return !indicates_variable(c.provenance.rule); });
}
}  // namespace

std::vector<ModeConstraint> diagnosis_order(std::vector<ModeConstraint> cs) {
  symbol_rules_first(cs);
  return cs;
}

std::vector<TypeConstraint> diagnosis_order(std::vector<TypeConstraint> cs) {
  symbol_rules_first(cs);
  return cs;
}

Diagnosis diagnose(const Program& p, const DiagnoseOptions& opts) {
  Diagnosis d;
  if (uses_modes(opts.analysis)) {
    d.mode_constraints = diagnosis_order(gen_mode_constraints(p));
    d.mode_mis = find_all_mode_mis(d.mode_constraints);
  }
  if (uses_types(opts.analysis)) {
    d.type_constraints = diagnosis_order(gen_type_constraints(p));
    d.type_mis = find_all_type_mis(d.type_constraints);
  }
  d.violations = check_detection_rules(p, opts.level);

  for (const auto& m : d.mode_mis) {
    std::vector<ModeConstraint> cs;
    for (auto i : m) cs.push_back(d.mode_constraints[i]);
    d.subsets.push_back(make_mode_subset(std::move(cs)));
  }
  for (const auto& m : d.type_mis) {
    std::vector<TypeConstraint> cs;
    for (auto i : m) cs.push_back(d.type_constraints[i]);
    d.subsets.push_back(make_type_subset(std::move(cs)));
  }
  for (const auto& v : d.violations) d.subsets.push_back(make_detection_subset(v));
  d.groups = build_groups(d.subsets);
  return d;
}

bool detects_error(const Program& p, const DiagnoseOptions& opts) {
  if (!check_detection_rules(p, opts.level).empty()) return true;
  if (uses_modes(opts.analysis) && !check_mode_consistency(gen_mode_constraints(p)).consistent()) return true;
  if (uses_types(opts.analysis) && !check_type_consistency(gen_type_constraints(p)).consistent()) return true;
  return false;
}

}  // namespace ghcfix
