#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ghcfix/repair.hpp"

namespace ghcfix {

/// m/<(test:append)/3,1><cons,2> = IN
std::string ascii_constraint(const ModeConstraint& c, const std::string& module);
std::string ascii_constraint(const TypeConstraint& c, const std::string& module);

/// "imposed by the rule HV applied to the variable Y"
std::string imposed_by(const Provenance& p);

/// MIS listing followed by Detection Rule violations.
std::string render_mis_report(const Program& p, const Diagnosis& d, int level);

/// Suspected groups, their priority bands and the proposed clauses.
std::string render_fix_report(const std::vector<GroupRepair>& groups);

/// Principal mode (or type) listing, one path per line.
std::string render_mode_graph(const Program& p, const ModeGraph& g);
std::string render_type_graph(const Program& p, const TypeGraph& g);

nlohmann::json diagnosis_json(const Program& p, const Diagnosis& d);
nlohmann::json repair_json(const std::vector<GroupRepair>& groups);

}  // namespace ghcfix
