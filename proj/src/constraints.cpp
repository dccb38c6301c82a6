#include "ghcfix/constraints.hpp"

#include <map>
#include <stdexcept>

namespace ghcfix {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::HF: return "HF";
    case Rule::HV: return "HV";
    case Rule::GV: return "GV";
    case Rule::BU: return "BU";
    case Rule::BF: return "BF";
    case Rule::BV: return "BV";
    case Rule::HBFt: return "HBF";
    case Rule::HBVt: return "HBV";
    case Rule::GVt: return "GV";
    case Rule::BUt: return "BU";
    case Rule::builtin: return "builtin";
  }
  return "?";
}

const char* type_class_name(TypeClass c) {
  switch (c) {
    case TypeClass::integer: return "integer";
    case TypeClass::floating: return "float";
    case TypeClass::string: return "string";
    case TypeClass::vector: return "vector";
    case TypeClass::list: return "list";
    case TypeClass::functor: return "functor";
  }
  return "?";
}

TypeClass type_class_of(const Term& t) {
  switch (t.kind) {
    case Term::Kind::integer: return TypeClass::integer;
    case Term::Kind::floating: return TypeClass::floating;
    case Term::Kind::string: return TypeClass::string;
    case Term::Kind::nil:
    case Term::Kind::list: return TypeClass::list;
    case Term::Kind::vector: return TypeClass::vector;
    case Term::Kind::functor:
    case Term::Kind::variable: return TypeClass::functor;
  }
  return TypeClass::functor;
}

std::string variable_display(const std::string& key) {
  if (key.rfind("_#", 0) == 0) return "_";
  return key;
}

namespace {

std::string symbol_text(const Term& t) {
  switch (t.kind) {
    case Term::Kind::nil: return "[]";
    case Term::Kind::list: return ".";
    case Term::Kind::vector: return "{}";
    case Term::Kind::functor: return t.name;
    default: return render_term(t);
  }
}

struct VarInfo {
  std::string key;
  std::vector<Path> head, guard, body;     // paths per region, textual order
  std::vector<int> head_ids, guard_ids, body_ids;
  std::vector<Path> head_body;             // h ∪ B occurrences in textual order
  std::vector<int> head_body_ids;
};

struct ClauseScan {
  std::vector<VarInfo> vars;  // first-appearance order
  std::vector<SymbolVisit> head_symbols;
  std::vector<SymbolVisit> body_symbols;
};

ClauseScan scan_clause(const Clause& c, int first_occurrence) {
  ClauseScan scan;
  std::map<std::string, std::size_t> index;
  int id = first_occurrence;
  visit_clause_symbols(c, [&](const SymbolVisit& v) {
    if (!v.term->is_variable()) {
      if (v.region == Region::head) scan.head_symbols.push_back(v);
      if (v.region == Region::body) scan.body_symbols.push_back(v);
      return;
    }
    int occ = id++;
    std::string key = anonymous_name(v.term->name) ? "_#" + std::to_string(occ) : v.term->name;
    auto [it, inserted] = index.emplace(key, scan.vars.size());
    if (inserted) scan.vars.push_back(VarInfo{key, {}, {}, {}, {}, {}, {}, {}, {}});
    auto& info = scan.vars[it->second];
    switch (v.region) {
      case Region::head:
        info.head.push_back(v.path);
        info.head_ids.push_back(occ);
        break;
      case Region::guard:
        info.guard.push_back(v.path);
        info.guard_ids.push_back(occ);
        break;
      case Region::body:
        info.body.push_back(v.path);
        info.body_ids.push_back(occ);
        break;
    }
    if (v.region != Region::guard) {
      info.head_body.push_back(v.path);
      info.head_body_ids.push_back(occ);
    }
  });
  return scan;
}

Provenance var_provenance(Rule r, int clause, const VarInfo& v, std::vector<int> ids) {
  return Provenance{r, clause, {}, v.key, std::move(ids)};
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Path root_path(const Goal& g, int arg) { return Path{goal_feature(g, arg)}; }

// Integer leaves of an arithmetic operand: positions reached through + - * /.
void arithmetic_leaves(const Term& t, Path& path, std::vector<Path>& out) {
  if (is_arithmetic_operator(t)) {
    for (int i = 0; i < 2; ++i) {
      path.push_back(term_feature(t, i + 1));
      arithmetic_leaves(t.args[i], path, out);
      path.pop_back();
    }
    return;
  }
  out.push_back(path);
}

}  // namespace

std::pair<std::vector<ModeConstraint>, std::vector<TypeConstraint>> builtin_signature(const Goal& goal,
                                                                                       int clause) {
  if (goal.kind != GoalKind::compare && goal.kind != GoalKind::assign)
    throw std::invalid_argument("not a builtin goal: " + goal.name);
  std::pair<std::vector<ModeConstraint>, std::vector<TypeConstraint>> out;
  Provenance prov{Rule::builtin, clause, goal.name, {}, {}};
  const bool assign = goal.kind == GoalKind::assign;
  for (int i = 1; i <= 2; ++i) {
    ModeValue v = (assign && i == 1) ? ModeValue::out : ModeValue::in;
    out.first.push_back(ModeConstraint{ConstantSubmode{root_path(goal, i), v}, prov});
  }
  for (int i = 1; i <= 2; ++i) {
    std::vector<Path> leaves;
    Path path = root_path(goal, i);
    arithmetic_leaves(goal.args[i - 1], path, leaves);
    for (auto& leaf : leaves) out.second.push_back(TypeConstraint{PointClass{std::move(leaf), TypeClass::integer}, prov});
  }
  return out;
}

void gen_clause_mode_constraints(const Program& p, int clause, int first_occurrence,
                                 std::vector<ModeConstraint>& out) {
  const Clause& c = p.clauses.at(clause);
  ClauseScan scan = scan_clause(c, first_occurrence);

  // (HF)
  for (const auto& s : scan.head_symbols)
    out.push_back(ModeConstraint{PointValue{s.path, ModeValue::in}, Provenance{Rule::HF, clause, symbol_text(*s.term), {}, {}}});
  // (HV)
  for (const auto& v : scan.vars) {
    if (v.head.size() < 2) continue;
    for (const auto& path : v.head)
      out.push_back(ModeConstraint{ConstantSubmode{path, ModeValue::in}, var_provenance(Rule::HV, clause, v, v.head_ids)});
  }
  // (GV), lowered: guard arguments are constantly IN
  for (const auto& v : scan.vars) {
    if (v.guard.empty() || v.head.empty()) continue;
    for (const auto& path : v.head)
      out.push_back(ModeConstraint{ConstantSubmode{path, ModeValue::in},
                                   var_provenance(Rule::GV, clause, v, concat(v.head_ids, v.guard_ids))});
  }
  // (BU)
  for (const auto& g : c.body) {
    if (g.kind != GoalKind::unify) continue;
    out.push_back(ModeConstraint{SubmodeLink{root_path(g, 1), root_path(g, 2), true},
                                 Provenance{Rule::BU, clause, "=_" + std::to_string(g.site), {}, {}}});
  }
  // (BF)
  for (const auto& s : scan.body_symbols)
    out.push_back(ModeConstraint{PointValue{s.path, ModeValue::in}, Provenance{Rule::BF, clause, symbol_text(*s.term), {}, {}}});
  // (BV)
  for (const auto& v : scan.vars) {
    const std::size_t k = v.head.size();
    const std::size_t n = k + v.body.size();
    if (n == 0) continue;
    std::vector<RMember> members;
    if (k == 0) {
      for (const auto& path : v.body) members.push_back(RMember{path, false});
    } else {
      members.push_back(RMember{v.head.front(), true});
      for (const auto& path : v.body) members.push_back(RMember{path, false});
    }
    auto prov = var_provenance(Rule::BV, clause, v, v.head_body_ids);
    if (members.size() == 1) {
      // R({s}) means s = OUT
      const auto& m = members.front();
      out.push_back(ModeConstraint{ConstantSubmode{m.path, m.inverted ? ModeValue::in : ModeValue::out}, prov});
    } else if (members.size() == 2) {
      // R({s1,s2}) means s1 = ¬s2
      const auto& a = members[0];
      const auto& b = members[1];
      bool inverted = !(a.inverted ^ b.inverted);
      out.push_back(ModeConstraint{SubmodeLink{a.path, b.path, inverted}, prov});
    } else {
      out.push_back(ModeConstraint{RMultiset{std::move(members)}, prov});
    }
  }
  // builtin signatures
  for (const auto& g : c.guard)
    if (g.kind == GoalKind::compare) {
      auto sig = builtin_signature(g, clause);
      out.insert(out.end(), sig.first.begin(), sig.first.end());
    }
  for (const auto& g : c.body)
    if (g.kind == GoalKind::assign) {
      auto sig = builtin_signature(g, clause);
      out.insert(out.end(), sig.first.begin(), sig.first.end());
    }
}

void gen_clause_type_constraints(const Program& p, int clause, int first_occurrence,
                                 std::vector<TypeConstraint>& out) {
  const Clause& c = p.clauses.at(clause);
  ClauseScan scan = scan_clause(c, first_occurrence);

  // (HBF): arithmetic operators are evaluated, not data constructors
  auto emit_symbols = [&](const std::vector<SymbolVisit>& syms) {
    for (const auto& s : syms) {
      if (s.arithmetic && is_arithmetic_operator(*s.term)) continue;
      out.push_back(TypeConstraint{PointClass{s.path, type_class_of(*s.term)},
                                   Provenance{Rule::HBFt, clause, symbol_text(*s.term), {}, {}}});
    }
  };
  emit_symbols(scan.head_symbols);
  emit_symbols(scan.body_symbols);
  // (HBV), chained over h ∪ B occurrences
  for (const auto& v : scan.vars) {
    for (std::size_t i = 1; i < v.head_body.size(); ++i)
      out.push_back(TypeConstraint{PathEq{v.head_body[i - 1], v.head_body[i]},
                                   var_provenance(Rule::HBVt, clause, v, {v.head_body_ids[i - 1], v.head_body_ids[i]})});
  }
  // (GV), unconditional since guard arguments are IN everywhere
  for (const auto& v : scan.vars) {
    if (v.head.empty()) continue;
    for (std::size_t i = 0; i < v.guard.size(); ++i)
      out.push_back(TypeConstraint{PathEq{v.head.front(), v.guard[i]},
                                   var_provenance(Rule::GVt, clause, v, {v.head_ids.front(), v.guard_ids[i]})});
  }
  // (BU)
  for (const auto& g : c.body) {
    if (g.kind != GoalKind::unify) continue;
    out.push_back(TypeConstraint{PathEq{root_path(g, 1), root_path(g, 2)},
                                 Provenance{Rule::BUt, clause, "=_" + std::to_string(g.site), {}, {}}});
  }
  for (const auto& g : c.guard)
    if (g.kind == GoalKind::compare) {
      auto sig = builtin_signature(g, clause);
      out.insert(out.end(), sig.second.begin(), sig.second.end());
    }
  for (const auto& g : c.body)
    if (g.kind == GoalKind::assign) {
      auto sig = builtin_signature(g, clause);
      out.insert(out.end(), sig.second.begin(), sig.second.end());
    }
}

std::vector<ModeConstraint> gen_mode_constraints(const Program& p) {
  std::vector<ModeConstraint> out;
  auto offsets = occurrence_offsets(p);
  for (int i = 0; i < static_cast<int>(p.clauses.size()); ++i) gen_clause_mode_constraints(p, i, offsets[i], out);
  return out;
}

std::vector<TypeConstraint> gen_type_constraints(const Program& p) {
  std::vector<TypeConstraint> out;
  auto offsets = occurrence_offsets(p);
  for (int i = 0; i < static_cast<int>(p.clauses.size()); ++i) gen_clause_type_constraints(p, i, offsets[i], out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string source_text(const Provenance& prov, const Program& p) {
  std::string who = prov.variable.empty() ? "\"" + prov.symbol + "\"" : variable_display(prov.variable);
  const auto& c = p.clauses.at(prov.clause);
  return who + " in clause " + c.predicate_key() + " No." + std::to_string(c.number);
}

std::string submode(const Path& path, bool inverted) {
  std::string s = "m/" + format_path(path, PathStyle::unicode);
  return inverted ? "¬" + s : s;
}

}  // namespace

std::string format_constraint(const ModeConstraint& c, const Program& p) {
  std::string lhs = std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PointValue>) {
          return "m(" + format_path(b.path, PathStyle::unicode) + ")=" + (b.value == ModeValue::in ? "in" : "out");
        } else if constexpr (std::is_same_v<T, ConstantSubmode>) {
          return "m(" + format_path(b.path, PathStyle::unicode) + ")=" + (b.value == ModeValue::in ? "IN" : "OUT");
        } else if constexpr (std::is_same_v<T, SubmodeLink>) {
          return submode(b.first, false) + "=" + submode(b.second, b.inverted);
        } else {
          std::string s = "R{";
          for (std::size_t i = 0; i < b.members.size(); ++i) {
            if (i) s += ", ";
            s += submode(b.members[i].path, b.members[i].inverted);
          }
          return s + "}";
        }
      },
      c.body);
  return lhs + "  (" + rule_name(c.provenance.rule) + ")  " + source_text(c.provenance, p);
}

std::string format_constraint(const TypeConstraint& c, const Program& p) {
  std::string lhs = std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PointClass>) {
          return "τ(" + format_path(b.path, PathStyle::unicode) + ")=" + type_class_name(b.cls);
        } else {
          return "τ/" + format_path(b.first, PathStyle::unicode) + "=τ/" + format_path(b.second, PathStyle::unicode);
        }
      },
      c.body);
  const char* rule = c.provenance.rule == Rule::builtin ? "builtin" : rule_name(c.provenance.rule);
  return lhs + "  (" + rule + ")  " + source_text(c.provenance, p);
}

}  // namespace ghcfix
