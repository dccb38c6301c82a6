#include "ghcfix/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <mutex>
#include <set>
#include <thread>

namespace ghcfix {

namespace {

std::string fresh_prefix(const MutationOptions& opts) { return opts.underscore_targets ? "_F" : "F"; }

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

std::vector<MutationSpec> collect_mutants(const Program& p, int n, const MutationOptions& opts) {
  std::vector<MutationSpec> out;
  gen_mutants(p, n, opts, [&](const MutationSpec& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void gen_mutants(const Program& p, int n, const MutationOptions& opts,
                 const std::function<bool(const MutationSpec&)>& sink) {
  const RewriteSpace space{fresh_prefix(opts), opts.underscore_targets};
  for (int c = 0; c < static_cast<int>(p.clauses.size()); ++c) {
    bool more = enumerate_rewritings(p, {c}, n, space, [&](const RewritePlan& plan) {
      return sink(MutationSpec{c, plan});
    });
    if (!more) return;
  }
}

Program apply_mutation(const Program& p, const MutationSpec& m) { return rewrite_occurrences(p, m.plan); }

std::uint64_t bell_number(int n) {
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::uint64_t count_mutants(const Program& p, int n, const MutationOptions& opts) {
  const auto occs = enumerate_occurrences(p);
  const auto offsets = occurrence_offsets(p);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < p.clauses.size(); ++c) {
    std::set<std::string> vars;
    for (int id = offsets[c]; id < offsets[c + 1]; ++id)
      if (!occs[id].anonymous && (opts.underscore_targets || !underscore_name(occs[id].name)))
        vars.insert(occs[id].name);
    // dp[k][j]: ways to pick k sites, j of them fresh
    std::vector<std::vector<std::uint64_t>> dp(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    dp[0][0] = 1;
    for (int id = offsets[c]; id < offsets[c + 1]; ++id) {
      const auto& o = occs[id];
      std::uint64_t named = vars.size() - (!o.anonymous && vars.count(o.name) ? 1 : 0);
      for (int k = n; k >= 1; --k)
        for (int j = k; j >= 0; --j) {
          dp[k][j] += dp[k - 1][j] * named;
          if (j > 0) dp[k][j] += dp[k - 1][j - 1];
        }
    }
    for (int j = 0; j <= n; ++j) total += dp[n][j] * bell_number(j);
  }
  return total;
}

std::vector<Table1Config> table1_configs() {
  return {
      {Analysis::mode_only, 0, false},     {Analysis::type_only, 0, false},
      {Analysis::mode_and_type, 0, false}, {Analysis::mode_and_type, 0, true},
      {Analysis::mode_and_type, 1, true},  {Analysis::mode_and_type, 2, true},
  };
}

TableRow run_table1(const Program& p, const std::string& name, const Table1Config& cfg, const ExperimentOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  TableRow row;
  row.program = name;
  row.analysis = cfg.analysis;
  row.level = cfg.level;
  row.prioritizing = cfg.prioritizing;
  row.n = 1;
  auto mutants = collect_mutants(p, 1, MutationOptions{});
  row.total = mutants.size();

  std::vector<int> found(mutants.size(), -1);  // -1 undetected, else alternative count
  parallel_for(mutants.size(), opts.threads, [&](std::size_t i) {
    Program m = apply_mutation(p, mutants[i]);
    if (!detects_error(m, DiagnoseOptions{cfg.analysis, cfg.level})) return;
    RepairOptions ro;
    ro.analysis = cfg.analysis;
    ro.level = cfg.level;
    ro.max_depth = 1;
    if (!cfg.prioritizing) ro.max_priority = INT_MAX;
    int count = 0;
    for (const auto& g : repair(m, ro)) count += static_cast<int>(g.alternatives.size());
    found[i] = count;
  });
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    if (found[i] < 0) {
      if (opts.keep_listing) row.listing.push_back(render_clause(apply_mutation(p, mutants[i]).clauses[mutants[i].clause]));
      continue;
    }
    ++row.detected;
    ++row.alternatives[static_cast<std::size_t>(std::min(found[i], 7))];
  }
  row.runtime_ms = elapsed_ms(t0);
  return row;
}

std::vector<TableRow> run_table2(const Program& p, const std::string& name, int n, const std::vector<int>& levels,
                                 const ExperimentOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  auto mutants = collect_mutants(p, n, MutationOptions{});
  // bit 0: contradiction, bit 1: rule 1 violation, bit 2: rule 2 violation
  std::vector<std::uint8_t> flags(mutants.size(), 0);
  parallel_for(mutants.size(), opts.threads, [&](std::size_t i) {
    Program m = apply_mutation(p, mutants[i]);
    std::uint8_t f = 0;
    if (!check_mode_consistency(gen_mode_constraints(m)).consistent() ||
        !check_type_consistency(gen_type_constraints(m)).consistent())
      f |= 1;
    for (const auto& v : check_clause_detection_rules(m, mutants[i].clause, 2))
      f |= v.rule == DetectionRule::singleton_naming ? 4 : 2;
    flags[i] = f;
  });
  std::vector<TableRow> rows;
  for (int level : levels) {
    TableRow row;
    row.program = name;
    row.level = level;
    row.prioritizing = false;
    row.n = n;
    row.total = mutants.size();
    std::uint8_t mask = 1 | (level >= 1 ? 2 : 0) | (level >= 2 ? 4 : 0);
    for (std::size_t i = 0; i < mutants.size(); ++i) {
      if (flags[i] & mask) {
        ++row.detected;
      } else if (opts.keep_listing) {
        row.listing.push_back(render_clause(apply_mutation(p, mutants[i]).clauses[mutants[i].clause]));
      }
    }
    rows.push_back(std::move(row));
  }
  double ms = elapsed_ms(t0);
  for (auto& r : rows) r.runtime_ms = ms;
  return rows;
}

bool plausible_mutant(const Program& original, const Program& mutant, const RewritePlan& plan,
                      const PlausibleOptions& popts) {
  std::set<int> clauses;
  const auto occs = enumerate_occurrences(original);
  for (const auto& [id, rep] : plan) clauses.insert(occs.at(id).clause);
  for (int c : clauses)
    if (!check_clause_detection_rules(mutant, c, popts.level).empty()) return false;
  if (!check_mode_consistency(gen_mode_constraints(mutant)).consistent()) return false;
  TypeGraph mt = solve_types(gen_type_constraints(mutant));
  if (mt.contradictory()) return false;
  TypeGraph ot = solve_types(gen_type_constraints(original));
  int mine = score_priority(original, mutant, plan, &mt).priority();
  int theirs = score_priority(original, original, plan, &ot).priority();
  return mine <= theirs;
}

TableRow run_table3(const Program& p, const std::string& name, int n, const PlausibleOptions& popts,
                    const ExperimentOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  TableRow row;
  row.program = name;
  row.level = popts.level;
  row.n = n;
  auto mutants = collect_mutants(p, n, MutationOptions{true});
  row.total = mutants.size();
  std::vector<std::string> keys(mutants.size());
  parallel_for(mutants.size(), opts.threads, [&](std::size_t i) {
    Program m = apply_mutation(p, mutants[i]);
    if (!plausible_mutant(p, m, mutants[i].plan, popts)) return;
    const int c = mutants[i].clause;
    keys[i] = std::to_string(c) + ':' + canonical_clause(m.clauses[c]);
  });
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    if (keys[i].empty()) continue;
    const int c = mutants[i].clause;
    if (popts.exclude_original && keys[i] == std::to_string(c) + ':' + canonical_clause(p.clauses[c])) continue;
    if (distinct.insert(keys[i]).second && opts.keep_listing)
      row.listing.push_back(render_clause(apply_mutation(p, mutants[i]).clauses[c]));
  }
  row.detected = 0;
  row.plausible = distinct.size();
  row.runtime_ms = elapsed_ms(t0);
  return row;
}

std::string csv_header() {
  return "program,analysis,level,prioritizing,N,total,detected,alt0,alt1,alt2,alt3,alt4,alt5,alt6,alt7plus,"
         "plausible,runtime_ms";
}

std::string csv_line(const TableRow& r) {
  std::string s = r.program + ',' + analysis_name(r.analysis) + ',' + std::to_string(r.level) + ',' +
                  (r.prioritizing ? "yes" : "no") + ',' + std::to_string(r.n) + ',' + std::to_string(r.total) + ',' +
                  std::to_string(r.detected);
  for (auto a : r.alternatives) s += ',' + std::to_string(a);
  s += ',' + std::to_string(r.plausible) + ',' + std::to_string(static_cast<long long>(r.runtime_ms));
  return s;
}

}  // namespace ghcfix
