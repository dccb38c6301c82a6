#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ghcfix/path.hpp"
#include "ghcfix/program.hpp"

namespace ghcfix {

enum class ModeValue : std::uint8_t { in, out };

inline ModeValue invert(ModeValue v) { return v == ModeValue::in ? ModeValue::out : ModeValue::in; }

/// Rule that imposed a constraint. The first six are the mode rules, the
/// next four the type rules.
enum class Rule : std::uint8_t { HF, HV, GV, BU, BF, BV, HBFt, HBVt, GVt, BUt, builtin };

const char* rule_name(Rule r);

/// Where a constraint came from: rule, clause, and the symbol occurrence(s).
struct Provenance {
  Rule rule = Rule::builtin;
  int clause = 0;
  std::string symbol;      // function symbol, "=_k", or builtin name; empty for variable rules
  std::string variable;    // clause-local variable key for variable rules
  std::vector<int> occurrences;  // variable occurrence ids

  bool operator==(const Provenance&) const = default;
};

// -- mode constraints -------------------------------------------------------

/// m(path) = value
struct PointValue {
  Path path;
  ModeValue value;
  bool operator==(const PointValue&) const = default;
};

/// m/path = IN or OUT
struct ConstantSubmode {
  Path path;
  ModeValue value;
  bool operator==(const ConstantSubmode&) const = default;
};

/// m/first = m/second, or its inversion
struct SubmodeLink {
  Path first;
  Path second;
  bool inverted = false;
  bool operator==(const SubmodeLink&) const = default;
};

struct RMember {
  Path path;
  bool inverted = false;
  bool operator==(const RMember&) const = default;
};

/// Cooperative communication among three or more submodes: at every path
/// exactly one member is out.
struct RMultiset {
  std::vector<RMember> members;
  bool operator==(const RMultiset&) const = default;
};

struct ModeConstraint {
  std::variant<PointValue, ConstantSubmode, SubmodeLink, RMultiset> body;
  Provenance provenance;
  bool operator==(const ModeConstraint&) const = default;
};

// -- type constraints -------------------------------------------------------

enum class TypeClass : std::uint8_t { integer, floating, string, vector, list, functor };

const char* type_class_name(TypeClass c);
TypeClass type_class_of(const Term& t);

struct PointClass {
  Path path;
  TypeClass cls;
  bool operator==(const PointClass&) const = default;
};

struct PathEq {
  Path first;
  Path second;
  bool operator==(const PathEq&) const = default;
};

struct TypeConstraint {
  std::variant<PointClass, PathEq> body;
  Provenance provenance;
  bool operator==(const TypeConstraint&) const = default;
};

// -- generation -------------------------------------------------------------

std::vector<ModeConstraint> gen_mode_constraints(const Program& p);
std::vector<TypeConstraint> gen_type_constraints(const Program& p);

/// Constraints imposed by a single clause. `first_occurrence` is the id of
/// the clause's first variable occurrence (see occurrence_offsets).
void gen_clause_mode_constraints(const Program& p, int clause, int first_occurrence,
                                 std::vector<ModeConstraint>& out);
void gen_clause_type_constraints(const Program& p, int clause, int first_occurrence,
                                 std::vector<TypeConstraint>& out);

/// Signature constraints of a builtin goal (guard test or :=).
/// Throws std::invalid_argument for a user goal or unification.
std::pair<std::vector<ModeConstraint>, std::vector<TypeConstraint>> builtin_signature(const Goal& goal,
                                                                                       int clause = 0);

/// One-line dump, e.g. "m(⟨fib,4⟩)=IN  (BV)  Ns0 in clause fib/4 No.2".
std::string format_constraint(const ModeConstraint& c, const Program& p);
std::string format_constraint(const TypeConstraint& c, const Program& p);

/// Display name of a provenance variable key ("_#12" shows as "_").
std::string variable_display(const std::string& key);

}  // namespace ghcfix
