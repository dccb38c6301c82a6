#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ghcfix/experiment.hpp"
#include "ghcfix/report.hpp"

using namespace ghcfix;

namespace {

enum Exit { ok = 0, found = 1, usage = 2 };

Analysis parse_analysis(const std::string& s) {
  if (s == "mode") return Analysis::mode_only;
  if (s == "type") return Analysis::type_only;
  return Analysis::mode_and_type;
}

const std::vector<std::string> analysis_names{"mode", "type", "both"};

std::string stem(const std::string& file) { return std::filesystem::path(file).stem().string(); }

int run_check(const Program& p, Analysis analysis, int level) {
  bool bad = false;
  if (uses_modes(analysis)) {
    auto r = check_mode_consistency(gen_mode_constraints(p));
    if (!r.consistent()) {
      std::cout << "mode constraints are inconsistent\n";
      bad = true;
    }
  }
  if (uses_types(analysis)) {
    auto r = check_type_consistency(gen_type_constraints(p));
    if (!r.consistent()) {
      std::cout << "type constraints are inconsistent\n";
      bad = true;
    }
  }
  for (const auto& v : check_detection_rules(p, level)) {
    std::cout << detection_rule_name(v.rule) << "(" << variable_display(v.variable) << ") in "
              << clause_location(p, v.clause) << "\n";
    bad = true;
  }
  return bad ? found : ok;
}

void write_rows(const std::vector<TableRow>& rows, const std::string& out, const std::string& listing) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    os = &file;
  }
  *os << csv_header() << "\n";
  for (const auto& r : rows) *os << csv_line(r) << "\n";
  if (listing.empty()) return;
  std::ofstream lf(listing);
  if (!lf) throw std::runtime_error("cannot write " + listing);
  for (const auto& r : rows) {
    lf << "# " << r.program << " " << analysis_name(r.analysis) << " level " << r.level << " N=" << r.n << "\n";
    for (const auto& l : r.listing) lf << l << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mode/type based error detection and correction for Flat GHC / KL1 programs"};
  app.require_subcommand(1);

  std::string file;
  std::string analysis = "both";
  int level = 2;

  auto* check = app.add_subcommand("check", "Solve mode/type constraints and report consistency");
  check->add_option("file", file, "Program source")->required()->check(CLI::ExistingFile);
  check->add_option("--analysis", analysis, "mode, type or both")->check(CLI::IsMember(analysis_names));
  check->add_option("--level", level, "Detection level")->check(CLI::Range(0, 2));

  auto* mis = app.add_subcommand("mis", "List minimal inconsistent subsets and rule violations");
  mis->add_option("file", file, "Program source")->required()->check(CLI::ExistingFile);
  mis->add_option("--analysis", analysis, "mode, type or both")->check(CLI::IsMember(analysis_names));
  mis->add_option("--level", level, "Detection level")->check(CLI::Range(0, 2));
  std::string format = "text";
  mis->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  RepairOptions ro;
  int max_priority = 0;
  bool show_mis = false, mode_graph = false, type_graph = false;
  auto* fix = app.add_subcommand("fix", "Search for corrected programs");
  fix->add_option("file", file, "Program source")->required()->check(CLI::ExistingFile);
  fix->add_option("--analysis", analysis, "mode, type or both")->check(CLI::IsMember(analysis_names));
  fix->add_option("--level", level, "Detection level")->check(CLI::Range(0, 2));
  fix->add_option("--max-depth", ro.max_depth, "Maximum number of rewritten occurrences")->check(CLI::Range(1, 8));
  auto* mp = fix->add_option("--max-priority", max_priority, "Keep alternatives up to this priority (default: best band)")
                 ->check(CLI::PositiveNumber);
  fix->add_flag("--show-mis", show_mis, "Also list MISs and violations");
  fix->add_flag("--mode-graph", mode_graph, "Print the principal mode of the input");
  fix->add_flag("--type-graph", type_graph, "Print the principal type of the input");
  fix->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string table;
  std::vector<std::string> programs;
  int n = 1;
  std::string out, listing;
  unsigned threads = 0;
  auto* exp = app.add_subcommand("experiment", "Reproduce the mutation experiments as CSV");
  exp->add_option("table", table, "table1, table2 or table3")->required()->check(CLI::IsMember({"table1", "table2", "table3"}));
  exp->add_option("--program", programs, "Program source (repeatable)")->required()->check(CLI::ExistingFile);
  exp->add_option("--n", n, "Mutations per mutant (table2/table3)")->check(CLI::Range(1, 4));
  exp->add_option("--out", out, "CSV output file (default stdout)");
  exp->add_option("--listing", listing, "Write undetected (table1/2) or plausible (table3) clauses here");
  exp->add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (*exp) {
      ExperimentOptions eo;
      eo.threads = threads;
      eo.keep_listing = !listing.empty();
      std::vector<TableRow> rows;
      for (const auto& f : programs) {
        Program p = parse_file(f);
        if (table == "table1") {
          for (const auto& cfg : table1_configs()) rows.push_back(run_table1(p, stem(f), cfg, eo));
        } else if (table == "table2") {
          for (auto& r : run_table2(p, stem(f), n, {0, 1, 2}, eo)) rows.push_back(std::move(r));
        } else {
          rows.push_back(run_table3(p, stem(f), n, {}, eo));
        }
      }
      write_rows(rows, out, listing);
      return ok;
    }

    Program p = parse_file(file);
    const Analysis an = parse_analysis(analysis);
    if (*check) return run_check(p, an, level);

    if (*mis) {
      Diagnosis d = diagnose(p, DiagnoseOptions{an, level});
      if (format == "json")
        std::cout << diagnosis_json(p, d).dump(2) << "\n";
      else
        std::cout << render_mis_report(p, d, level);
      return d.clean() ? ok : found;
    }

    ro.analysis = an;
    ro.level = level;
    if (*mp) ro.max_priority = max_priority;
    Diagnosis d;
    auto groups = repair(p, ro, &d);
    bool all_fixed = true;
    for (const auto& g : groups) all_fixed = all_fixed && !g.alternatives.empty();
    if (format == "json") {
      nlohmann::json j{{"groups", repair_json(groups)}};
      if (show_mis) j["diagnosis"] = diagnosis_json(p, d);
      if (mode_graph) j["mode_graph"] = render_mode_graph(p, solve_modes(gen_mode_constraints(p)));
      if (type_graph) j["type_graph"] = render_type_graph(p, solve_types(gen_type_constraints(p)));
      std::cout << j.dump(2) << "\n";
    } else {
      if (mode_graph) std::cout << "  < Principal mode >\n" << render_mode_graph(p, solve_modes(gen_mode_constraints(p))) << "\n";
      if (type_graph) std::cout << "  < Principal type >\n" << render_type_graph(p, solve_types(gen_type_constraints(p))) << "\n";
      if (show_mis) std::cout << render_mis_report(p, d, level) << "\n";
      std::cout << render_fix_report(groups);
    }
    return all_fixed ? ok : found;
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
}
