#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghcfix/repair.hpp"

namespace ghcfix {

struct MutationSpec {
  int clause = 0;
  RewritePlan plan;
};

struct MutationOptions {
  /// Plausible-program setting: fresh variables (and existing targets) may start with "_".
  bool underscore_targets = false;
};

/// All same-clause mutations of `n` variable occurrences. The sink returns
/// false to stop.
void gen_mutants(const Program& p, int n, const MutationOptions& opts,
                 const std::function<bool(const MutationSpec&)>& sink);

/// Program for a mutation (fresh names never collide with clause variables).
Program apply_mutation(const Program& p, const MutationSpec& m);

/// Closed-form mutant count: per clause, sum over n-subsets of sites of
/// prod(named options) * Bell(fresh sites).
std::uint64_t count_mutants(const Program& p, int n, const MutationOptions& opts = {});

std::uint64_t bell_number(int n);

struct TableRow {
  std::string program;
  Analysis analysis = Analysis::mode_and_type;
  int level = 0;
  bool prioritizing = false;
  int n = 1;
  std::uint64_t total = 0;
  std::uint64_t detected = 0;
  std::array<std::uint64_t, 8> alternatives{};  // [0] none, [1..6], [7] 7 or more
  std::uint64_t plausible = 0;
  double runtime_ms = 0;
  std::vector<std::string> listing;  // undetected mutants (tables 1-2) or plausible programs (table 3)
};

struct Table1Config {
  Analysis analysis;
  int level;
  bool prioritizing;
};

/// The six configurations of the single-error table.
std::vector<Table1Config> table1_configs();

struct ExperimentOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_listing = false;
};

TableRow run_table1(const Program& p, const std::string& name, const Table1Config& cfg,
                    const ExperimentOptions& opts = {});

/// Detection over all n-mutants, one row per level in `levels`.
std::vector<TableRow> run_table2(const Program& p, const std::string& name, int n, const std::vector<int>& levels,
                                 const ExperimentOptions& opts = {});

struct PlausibleOptions {
  int level = 0;                  // detection rules a plausible program must pass
  bool exclude_original = true;   // the original's own equivalence class is not counted
};

/// Distinct (up to equivalence) well-moded, well-typed n-mutants whose
/// priority is no worse than the original's over the same variables.
TableRow run_table3(const Program& p, const std::string& name, int n, const PlausibleOptions& popts = {},
                    const ExperimentOptions& opts = {});

bool plausible_mutant(const Program& original, const Program& mutant, const RewritePlan& plan,
                      const PlausibleOptions& popts);

std::string csv_header();
std::string csv_line(const TableRow& r);

}  // namespace ghcfix
