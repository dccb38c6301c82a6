#include "ghcfix/report.hpp"

#include <sstream>

namespace ghcfix {

namespace {

const std::string group_bar = "================= Suspected Group ";
const std::string band_bar = "------------- Priority ";

std::string apath(const Path& p, const std::string& module) { return format_path(p, PathStyle::ascii, module); }

std::string submode(const Path& p, bool inverted, const std::string& module) {
  return std::string(inverted ? "~" : "") + "m/" + apath(p, module);
}

std::string value_name(ModeValue v, bool constant) {
  if (constant) return v == ModeValue::in ? "IN" : "OUT";
  return v == ModeValue::in ? "in" : "out";
}

void list_subset_constraints(std::ostream& os, const Program& p, const std::string& text, const Provenance& prov) {
  os << "  " << text << "\n";
  os << "          " << imposed_by(prov) << "\n";
  os << "          in " << clause_location(p, prov.clause) << "\n";
}

std::string principal_text(ModeFact f) { return mode_fact_name(f); }

}  // namespace

std::string ascii_constraint(const ModeConstraint& c, const std::string& module) {
  return std::visit(
      [&](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PointValue>) {
          return "m(" + apath(b.path, module) + ") = " + value_name(b.value, false);
        } else if constexpr (std::is_same_v<T, ConstantSubmode>) {
          return "m/" + apath(b.path, module) + " = " + value_name(b.value, true);
        } else if constexpr (std::is_same_v<T, SubmodeLink>) {
          return submode(b.first, false, module) + " = " + submode(b.second, b.inverted, module);
        } else {
          std::string s = "R{";
          for (std::size_t i = 0; i < b.members.size(); ++i) {
            if (i) s += ", ";
            s += submode(b.members[i].path, b.members[i].inverted, module);
          }
          return s + "}";
        }
      },
      c.body);
}

std::string ascii_constraint(const TypeConstraint& c, const std::string& module) {
  return std::visit(
      [&](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PointClass>) {
          return "t(" + apath(b.path, module) + ") = " + type_class_name(b.cls);
        } else {
          return "t/" + apath(b.first, module) + " = t/" + apath(b.second, module);
        }
      },
      c.body);
}

std::string imposed_by(const Provenance& p) {
  if (p.rule == Rule::builtin) return "imposed by the builtin " + p.symbol;
  std::string s = std::string("imposed by the rule ") + rule_name(p.rule);
  if (!p.variable.empty()) return s + " applied to the variable " + variable_display(p.variable);
  return s + " applied to the symbol " + p.symbol;
}

std::string render_mis_report(const Program& p, const Diagnosis& d, int level) {
  std::ostringstream os;
  const std::string& mod = p.module_name;
  os << "  < Minimal Inconsistent Subsets of *Mode* constraints >\n";
  if (d.mode_mis.empty()) os << "   --Constraints are consistent, and there is no MIS--\n";
  for (const auto& mis : d.mode_mis) {
    for (auto i : mis) {
      const auto& c = d.mode_constraints[i];
      list_subset_constraints(os, p, ascii_constraint(c, mod), c.provenance);
    }
    os << "  -----\n";
  }
  os << "  < Minimal Inconsistent Subsets of *Type* constraints >\n";
  if (d.type_mis.empty()) os << "   --Constraints are consistent, and there is no MIS--\n";
  for (const auto& mis : d.type_mis) {
    for (auto i : mis) {
      const auto& c = d.type_constraints[i];
      list_subset_constraints(os, p, ascii_constraint(c, mod), c.provenance);
    }
    os << "  -----\n";
  }
  os << "\n  < Violations of syntactic rules of the detection level " << level << " >\n";
  if (d.violations.empty()) os << "   --No violation--\n";
  for (const auto& v : d.violations) {
    os << "  " << detection_rule_name(v.rule) << "(" << variable_display(v.variable) << ")\n";
    os << "          in " << clause_location(p, v.clause) << "\n";
    os << "  -----\n";
  }
  return os.str();
}

std::string render_fix_report(const std::vector<GroupRepair>& groups) {
  std::ostringstream os;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    os << "    " << group_bar << (k + 1) << " =================\n";
    const auto& alts = groups[k].alternatives;
    if (alts.empty()) {
      os << "               Sorry, no alternative is found\n";
      continue;
    }
    int band = 0;
    for (const auto& a : alts) {
      if (a.priority() != band) {
        band = a.priority();
        os << "           " << band_bar << band << " -------------\n";
      }
      for (int c : a.changed_clauses) {
        os << "  " << render_clause(a.program.clauses[c]) << "\n";
        os << "                          in " << clause_location(a.program, c) << "\n";
      }
      os << "           -----\n";
    }
  }
  return os.str();
}

std::string render_mode_graph(const Program& p, const ModeGraph& g) {
  std::ostringstream os;
  if (g.contradictory()) return "  --Mode constraints are inconsistent--\n";
  for (const auto& e : g.principal_mode()) os << "  m(" << apath(e.path, p.module_name) << ") = " << principal_text(e.fact) << "\n";
  return os.str();
}

std::string render_type_graph(const Program& p, const TypeGraph& g) {
  std::ostringstream os;
  if (g.contradictory()) return "  --Type constraints are inconsistent--\n";
  for (const auto& e : g.principal_type())
    os << "  t(" << apath(e.path, p.module_name) << ") = " << (e.cls ? type_class_name(*e.cls) : "?") << "\n";
  return os.str();
}

nlohmann::json diagnosis_json(const Program& p, const Diagnosis& d) {
  using nlohmann::json;
  const std::string& mod = p.module_name;
  auto prov_json = [&](const Provenance& pr) {
    json j{{"rule", pr.rule == Rule::builtin ? "builtin" : rule_name(pr.rule)},
           {"clause", clause_location(p, pr.clause)}};
    if (!pr.variable.empty()) j["variable"] = variable_display(pr.variable);
    if (!pr.symbol.empty()) j["symbol"] = pr.symbol;
    return j;
  };
  json mode = json::array();
  for (const auto& mis : d.mode_mis) {
    json s = json::array();
    for (auto i : mis)
      s.push_back({{"constraint", ascii_constraint(d.mode_constraints[i], mod)},
                   {"source", prov_json(d.mode_constraints[i].provenance)}});
    mode.push_back(s);
  }
  json type = json::array();
  for (const auto& mis : d.type_mis) {
    json s = json::array();
    for (auto i : mis)
      s.push_back({{"constraint", ascii_constraint(d.type_constraints[i], mod)},
                   {"source", prov_json(d.type_constraints[i].provenance)}});
    type.push_back(s);
  }
  json violations = json::array();
  for (const auto& v : d.violations)
    violations.push_back({{"rule", detection_rule_name(v.rule)},
                          {"variable", variable_display(v.variable)},
                          {"clause", clause_location(p, v.clause)}});
  json groups = json::array();
  for (const auto& g : d.groups) {
    json table = json::array();
    for (const auto& row : g.table)
      table.push_back({{"clause", clause_location(p, row.clause)},
                       {"variable", variable_display(row.variable)},
                       {"subsets", row.subsets}});
    json clauses = json::array();
    for (int c : g.suspected_clauses) clauses.push_back(clause_location(p, c));
    groups.push_back({{"subsets", g.subset_ids}, {"suspected_clauses", clauses}, {"suspected_variables", table}});
  }
  return {{"mode_mis", mode}, {"type_mis", type}, {"violations", violations}, {"groups", groups}};
}

nlohmann::json repair_json(const std::vector<GroupRepair>& groups) {
  using nlohmann::json;
  json out = json::array();
  for (std::size_t k = 0; k < groups.size(); ++k) {
    json alts = json::array();
    for (const auto& a : groups[k].alternatives) {
      json clauses = json::array();
      for (int c : a.changed_clauses)
        clauses.push_back({{"text", render_clause(a.program.clauses[c])}, {"location", clause_location(a.program, c)}});
      json penalties = json::array();
      for (const auto& pen : a.score.penalties)
        penalties.push_back({{"rule", pen.rule}, {"variable", variable_display(pen.variable)}});
      alts.push_back({{"priority", a.priority()},
                      {"depth", a.depth},
                      {"clauses", clauses},
                      {"penalties", penalties},
                      {"full_check_passed", a.full_check_passed}});
    }
    const auto& s = groups[k].stats;
    out.push_back({{"group", k + 1},
                   {"alternatives", alts},
                   {"stats", {{"enumerated", s.enumerated}, {"quick_checked", s.quick_checked}, {"verified", s.verified}}}});
  }
  return out;
}

}  // namespace ghcfix
