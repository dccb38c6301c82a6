#include "ghcfix/repair.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <unordered_set>

namespace ghcfix {

const char* rejection_name(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::priority_bound: return "priority bound";
    case Rejection::detection_rule: return "detection rule";
    case Rejection::mode_contradiction: return "mode contradiction";
    case Rejection::type_contradiction: return "type contradiction";
  }
  return "?";
}

std::vector<int> suspected_sites(const Program& p, const SuspectedGroup& g) {
  auto offsets = occurrence_offsets(p);
  std::vector<int> out;
  for (int c : g.suspected_clauses)
    for (int id = offsets[c]; id < offsets[c + 1]; ++id) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------
// plan enumeration

namespace {

// Named variables of a clause in order of first occurrence.
std::vector<std::string> clause_variables(const std::vector<VarOccurrence>& occs, int lo, int hi) {
  std::vector<std::string> out;
  for (int id = lo; id < hi; ++id) {
    const auto& o = occs[id];
    if (o.anonymous) continue;
    if (std::find(out.begin(), out.end(), o.name) == out.end()) out.push_back(o.name);
  }
  return out;
}

std::vector<std::string> fresh_names(const std::vector<std::string>& taken, const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (int k = 1; out.size() < n; ++k) {
    std::string name = prefix + std::to_string(k);
    if (std::find(taken.begin(), taken.end(), name) == taken.end()) out.push_back(std::move(name));
  }
  return out;
}

}  // namespace

bool enumerate_rewritings(const Program& p, const std::set<int>& clauses, int depth, const RewriteSpace& space,
                          const std::function<bool(const RewritePlan&)>& sink) {
  if (depth < 1) return true;
  const auto occs = enumerate_occurrences(p);
  const auto offsets = occurrence_offsets(p);
  std::vector<int> sites;
  for (int c : clauses)
    for (int id = offsets[c]; id < offsets[c + 1]; ++id) sites.push_back(id);
  const auto n = static_cast<int>(sites.size());
  if (depth > n) return true;

  std::map<int, std::vector<std::string>> vars;
  std::map<int, std::vector<std::string>> fresh;
  for (int c : clauses) {
    vars[c] = clause_variables(occs, offsets[c], offsets[c + 1]);
    fresh[c] = fresh_names(vars[c], space.fresh_prefix, static_cast<std::size_t>(depth));
  }

  // options per site: other named variables, then -1 for fresh
  std::vector<std::vector<int>> options(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& o = occs[sites[i]];
    const auto& vs = vars[o.clause];
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (!o.anonymous && vs[v] == o.name) continue;
      if (!space.underscore_targets && underscore_name(vs[v])) continue;
      options[i].push_back(static_cast<int>(v));
    }
    options[i].push_back(-1);
  }

  std::vector<int> comb(static_cast<std::size_t>(depth));
  for (int i = 0; i < depth; ++i) comb[i] = i;
  bool stop = false;
  std::vector<std::size_t> pick(static_cast<std::size_t>(depth));

  while (!stop) {
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      // fresh sites, enumerated over sharing partitions within each clause
      std::vector<std::size_t> fresh_slots;
      for (std::size_t k = 0; k < pick.size(); ++k)
        if (options[comb[k]][pick[k]] < 0) fresh_slots.push_back(k);
      std::vector<int> block(fresh_slots.size(), 0);
      std::function<bool(std::size_t)> assign = [&](std::size_t f) -> bool {
        if (f == fresh_slots.size()) {
          RewritePlan plan;
          std::size_t fi = 0;
          for (std::size_t k = 0; k < pick.size(); ++k) {
            const auto& o = occs[sites[comb[k]]];
            int opt = options[comb[k]][pick[k]];
            if (opt >= 0) {
              plan.emplace(o.id, Replacement{vars[o.clause][opt], false});
            } else {
              plan.emplace(o.id, Replacement{fresh[o.clause][block[fi++]], true});
            }
          }
          return sink(plan);
        }
        const int clause = occs[sites[comb[fresh_slots[f]]]].clause;
        int max_block = -1;
        for (std::size_t e = 0; e < f; ++e)
          if (occs[sites[comb[fresh_slots[e]]]].clause == clause) max_block = std::max(max_block, block[e]);
        for (int b = 0; b <= max_block + 1; ++b) {
          block[f] = b;
          if (!assign(f + 1)) return false;
        }
        return true;
      };
      if (!assign(0)) return false;

      int k = depth - 1;
      while (k >= 0 && ++pick[k] == options[comb[k]].size()) pick[k--] = 0;
      if (k < 0) break;
    }
    int i = depth - 1;
    while (i >= 0 && comb[i] == n - depth + i) --i;
    if (i < 0) {
      stop = true;
    } else {
      ++comb[i];
      for (int j = i + 1; j < depth; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return true;
}

void candidate_plans(const Program& p, const SuspectedGroup& g, int depth, const std::string& fresh_prefix,
                     const std::function<bool(const RewritePlan&)>& sink) {
  enumerate_rewritings(p, g.suspected_clauses, depth, RewriteSpace{fresh_prefix, true}, sink);
}

// ---------------------------------------------------------------------------
// quick-check

bool quick_check(const std::vector<VarOccurrence>& occs, const RewritePlan& plan,
                 const std::vector<MinimalSubset>& subsets, const SuspectedGroup& g) {
  if (plan.empty()) return false;
  for (int id : g.subset_ids) {
    const auto& s = subsets.at(static_cast<std::size_t>(id) - 1);
    bool touched = false;
    for (const auto& cv : s.indicated_variables) {
      for (const auto& [occ, rep] : plan) {
        const auto& o = occs.at(occ);
        if (o.clause != cv.clause) continue;
        const std::string key = o.key();
        if ((key == cv.variable && rep.name != o.name) || (rep.name == cv.variable && key != cv.variable)) {
          touched = true;
          break;
        }
      }
      if (touched) break;
    }
    if (!touched) return false;
  }
  return true;
}

bool quick_check(const Program& p, const RewritePlan& plan, const std::vector<MinimalSubset>& subsets,
                 const SuspectedGroup& g) {
  return quick_check(enumerate_occurrences(p), plan, subsets, g);
}

// ---------------------------------------------------------------------------
// priority

PriorityScore score_priority(const Program& original, const Program& candidate, const RewritePlan& plan,
                             const TypeGraph* types, bool include_element_rule) {
  const auto occs = enumerate_occurrences(original);
  std::set<std::pair<int, std::string>> changed;
  for (const auto& [id, rep] : plan) {
    const auto& o = occs.at(id);
    if (!o.anonymous) changed.emplace(o.clause, o.name);
    changed.emplace(o.clause, rep.name);
  }

  PriorityScore score;
  int current_clause = -1;
  std::vector<VarOccurrence> cocc;
  for (const auto& [clause, name] : changed) {
    if (clause != current_clause) {
      cocc = enumerate_clause_occurrences(candidate, clause);
      current_clause = clause;
    }
    int total = 0, head = 0, body = 0;
    std::map<int, int> per_goal;
    std::vector<const VarOccurrence*> mine;
    for (const auto& o : cocc) {
      if (o.anonymous || o.name != name) continue;
      mine.push_back(&o);
      ++total;
      if (o.region == Region::head) ++head;
      if (o.region == Region::body) {
        ++body;
        ++per_goal[o.goal];
      }
    }
    if (total == 0) continue;
    auto add = [&](const char* rule) { score.penalties.push_back(Penalty{clause, name, rule}); };
    if (total == 1 && !underscore_name(name)) add("HR1.1");
    if (head >= 2)
      add("HR1.2");
    else if (head + body >= 3)
      add("HR1.3");
    if (std::any_of(per_goal.begin(), per_goal.end(), [](const auto& kv) { return kv.second >= 2; })) add("HR1.4");

    if (!include_element_rule) continue;
    bool element = false;
    for (const auto* a : mine) {
      Path q = extend(a->path, cons_feature(1));
      if (types) {
        element = types->same_class(a->path, q);
      } else {
        element = std::any_of(mine.begin(), mine.end(), [&](const VarOccurrence* b) { return b->path == q; });
      }
      if (element) break;
    }
    if (element) add("HR2");
  }
  return score;
}

// ---------------------------------------------------------------------------
// verification

bool full_check(const Program& p, Analysis analysis, int level) {
  return !detects_error(p, DiagnoseOptions{analysis, level});
}

GroupVerifier::GroupVerifier(const Program& p, const Diagnosis& d, std::size_t group, const RepairOptions& opts)
    : program_(p), group_(d.groups.at(group)), opts_(opts), clauses_(group_.suspected_clauses.begin(), group_.suspected_clauses.end()) {
  const std::size_t mode_count = d.mode_mis.size();
  const std::size_t type_count = d.type_mis.size();
  std::set<std::size_t> excluded_mode, excluded_type;
  for (std::size_t gi = 0; gi < d.groups.size(); ++gi) {
    if (gi == group) continue;
    for (int id : d.groups[gi].subset_ids) {
      auto k = static_cast<std::size_t>(id) - 1;
      if (k < mode_count)
        excluded_mode.insert(d.mode_mis[k].begin(), d.mode_mis[k].end());
      else if (k < mode_count + type_count)
        excluded_type.insert(d.type_mis[k - mode_count].begin(), d.type_mis[k - mode_count].end());
    }
  }
  if (uses_modes(opts_.analysis)) {
    for (std::size_t i = 0; i < d.mode_constraints.size(); ++i) {
      const auto& c = d.mode_constraints[i];
      if (excluded_mode.count(i) || group_.suspected_clauses.count(c.provenance.clause)) continue;
      modes_.add(c);
    }
  }
  if (uses_types(opts_.analysis)) {
    for (std::size_t i = 0; i < d.type_constraints.size(); ++i) {
      const auto& c = d.type_constraints[i];
      if (excluded_type.count(i) || group_.suspected_clauses.count(c.provenance.clause)) continue;
      types_.add(c);
    }
  }
  mode_base_ = modes_.snapshot();
  type_base_ = types_.snapshot();
}

Verdict GroupVerifier::verify(const RewritePlan& plan, std::optional<int> bound) {
  return verify(plan, rewrite_occurrences(program_, plan), bound);
}

Verdict GroupVerifier::verify(const RewritePlan& plan, Program candidate, std::optional<int> bound) {
  Verdict v;
  const auto occs = enumerate_occurrences(program_);
  std::set<int> changed;
  for (const auto& [id, rep] : plan) changed.insert(occs.at(id).clause);

  auto partial = score_priority(program_, candidate, plan, nullptr, false);
  if (bound && partial.priority() > *bound) {
    v.reason = Rejection::priority_bound;
    return v;
  }
  for (int c : changed) {
    if (!check_clause_detection_rules(candidate, c, opts_.level).empty()) {
      v.reason = Rejection::detection_rule;
      return v;
    }
  }
  const auto offsets = occurrence_offsets(candidate);
  if (uses_modes(opts_.analysis)) {
    modes_.rollback(mode_base_);
    std::vector<ModeConstraint> cs;
    for (int c : clauses_) gen_clause_mode_constraints(candidate, c, offsets[c], cs);
    if (!modes_.add_all(cs).consistent()) {
      v.reason = Rejection::mode_contradiction;
      return v;
    }
  }
  if (uses_types(opts_.analysis)) {
    types_.rollback(type_base_);
    std::vector<TypeConstraint> cs;
    for (int c : clauses_) gen_clause_type_constraints(candidate, c, offsets[c], cs);
    if (!types_.add_all(cs).consistent()) {
      v.reason = Rejection::type_contradiction;
      return v;
    }
  }
  auto score = score_priority(program_, candidate, plan, uses_types(opts_.analysis) ? &types_ : nullptr, true);
  if (bound && score.priority() > *bound) {
    v.reason = Rejection::priority_bound;
    return v;
  }
  Alternative a;
  a.plan = plan;
  a.score = std::move(score);
  a.depth = static_cast<int>(plan.size());
  a.changed_clauses.assign(changed.begin(), changed.end());
  a.full_check_passed = full_check(candidate, opts_.analysis, opts_.level);
  a.program = std::move(candidate);
  v.alternative = std::move(a);
  return v;
}

// ---------------------------------------------------------------------------
// search

std::vector<GroupRepair> search(const Program& p, const Diagnosis& d, const RepairOptions& opts) {
  const auto occs = enumerate_occurrences(p);
  std::vector<GroupRepair> out;
  for (std::size_t gi = 0; gi < d.groups.size(); ++gi) {
    GroupRepair r;
    r.group = d.groups[gi];
    GroupVerifier verifier(p, d, gi, opts);
    std::unordered_set<std::string> tried;
    std::unordered_map<std::string, std::size_t> kept;  // canonical key -> index
    int best = INT_MAX;

    // edit locality: goals touched (the head counts as one), then head sites
    auto locality = [&](const RewritePlan& plan) {
      std::set<std::pair<int, int>> goals;
      long head = 0;
      for (const auto& kv : plan) {
        const auto& o = occs.at(kv.first);
        goals.emplace(o.clause, o.region == Region::head ? -1 : o.goal + (o.region == Region::body ? 1000 : 0));
        head += o.region == Region::head;
      }
      return std::make_pair(goals.size(), head);
    };

    auto key_of = [&](const Program& q, bool canonical) {
      std::string k;
      for (int c : r.group.suspected_clauses) {
        k += std::to_string(c) + ':';
        k += canonical ? canonical_clause(q.clauses[c]) : render_clause(q.clauses[c]);
        k += '\n';
      }
      return k;
    };

    for (int depth = 1; depth <= opts.max_depth; ++depth) {
      candidate_plans(p, r.group, depth, opts.fresh_prefix, [&](const RewritePlan& plan) {
        ++r.stats.enumerated;
        if (!quick_check(occs, plan, d.subsets, r.group)) return true;
        ++r.stats.quick_checked;
        Program candidate = rewrite_occurrences(p, plan);
        if (!tried.insert(key_of(candidate, false)).second) return true;
        std::optional<int> bound = opts.max_priority;
        if (!bound && best != INT_MAX) bound = best;
        auto verdict = verifier.verify(plan, std::move(candidate), bound);
        if (!verdict.alternative) return true;
        ++r.stats.verified;
        auto [it, fresh] = kept.emplace(key_of(verdict.alternative->program, true), r.alternatives.size());
        if (!fresh) {
          // equivalent programs: keep the more local edit
          auto& old = r.alternatives[it->second];
          if (verdict.alternative->depth == old.depth && verdict.alternative->priority() <= old.priority() &&
              locality(verdict.alternative->plan) < locality(old.plan))
            old = std::move(*verdict.alternative);
          return true;
        }
        best = std::min(best, verdict.alternative->priority());
        r.alternatives.push_back(std::move(*verdict.alternative));
        return true;
      });
    }

    std::stable_sort(r.alternatives.begin(), r.alternatives.end(),
                     [](const Alternative& a, const Alternative& b) { return a.priority() < b.priority(); });
    const int limit = opts.max_priority ? *opts.max_priority : best;
    std::erase_if(r.alternatives, [&](const Alternative& a) { return a.priority() > limit; });
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GroupRepair> repair(const Program& p, const RepairOptions& opts, Diagnosis* diagnosis_out) {
  Diagnosis d = diagnose(p, DiagnoseOptions{opts.analysis, opts.level});
  auto result = search(p, d, opts);
  if (diagnosis_out) *diagnosis_out = std::move(d);
  return result;
}

}  // namespace ghcfix
