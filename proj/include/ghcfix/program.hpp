#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghcfix/path.hpp"

namespace ghcfix {

struct Term {
  enum class Kind : std::uint8_t { variable, integer, floating, string, nil, list, vector, functor };

  Kind kind = Kind::variable;
  std::string name;  // variable name, functor/atom name, or string contents
  long long integer = 0;
  double floating = 0.0;
  std::vector<Term> args;  // list: {head, tail}; vector/functor: elements

  static Term variable(std::string name);
  static Term integer_lit(long long v);
  static Term float_lit(double v);
  static Term string_lit(std::string s);
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term vector_of(std::vector<Term> elems);
  static Term functor(std::string name, std::vector<Term> args);

  bool is_variable() const { return kind == Kind::variable; }
  bool operator==(const Term&) const = default;
};

/// "_" and "_"-prefixed names. Only the literal "_" is anonymous (each
/// occurrence a distinct variable); other "_" names are ordinary variables.
inline bool underscore_name(std::string_view n) { return !n.empty() && n.front() == '_'; }
inline bool anonymous_name(std::string_view n) { return n == "_"; }

enum class GoalKind : std::uint8_t {
  user,     // p(...)
  unify,    // X = Y, numbered =_k
  assign,   // X := Expr
  compare,  // guard tests > < >= =< =:= =\=
};

struct Goal {
  GoalKind kind = GoalKind::user;
  std::string name;
  std::vector<Term> args;
  int site = 0;  // k of =_k, or builtin call-site ordinal

  bool operator==(const Goal&) const = default;
};

struct SourceSpan {
  int line = 0;
  int column = 0;
};

struct Clause {
  Goal head;
  std::vector<Goal> guard;  // empty == "true"
  std::vector<Goal> body;   // empty == "true"
  int number = 0;           // 1-based ordinal within its predicate
  SourceSpan span;

  std::string predicate_key() const;  // "name/arity"
};

struct Program {
  std::string module_name;
  std::vector<Clause> clauses;                         // source order
  std::map<std::string, std::vector<int>> predicates;  // "name/arity" -> clause indices

  void reindex();  // rebuilds predicate table and clause numbers
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Program parse_program(std::string_view text);
Program parse_file(const std::string& filename);

enum class Region : std::uint8_t { head, guard, body };

struct VarOccurrence {
  int id = 0;
  int clause = 0;
  Region region = Region::head;
  int goal = -1;  // -1 for the head
  Path path;
  std::string name;
  bool anonymous = false;

  /// Clause-local identity: the name, or "_#<id>" for an anonymous occurrence.
  std::string key() const;
};

std::vector<VarOccurrence> enumerate_occurrences(const Program& p);
std::vector<VarOccurrence> enumerate_clause_occurrences(const Program& p, int clause);
/// Id of the first occurrence of each clause (size clauses+1; last entry is the total).
std::vector<int> occurrence_offsets(const Program& p);

/// Feature-level path roots for goals. Shared between occurrence
/// enumeration and constraint generation.
Feature head_feature(const Goal& head, int arg);
Feature goal_feature(const Goal& goal, int arg);
Feature term_feature(const Term& t, int arg);

/// Walks every symbol occurrence (variables and function symbols) of a
/// clause in textual order: head, guard goals, body goals.
struct SymbolVisit {
  const Term* term;
  Path path;
  Region region;
  int goal;
  bool arithmetic;  // inside an arithmetic expression
};
template <class F>
void visit_clause_symbols(const Clause& c, F&& f);

struct Replacement {
  std::string name;
  bool fresh = false;

  bool operator==(const Replacement&) const = default;
};

class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Renames the listed variable occurrences. Occurrence ids are those of
/// enumerate_occurrences(p).
Program rewrite_occurrences(const Program& p, const std::map<int, Replacement>& plan);

std::string render_term(const Term& t);
std::string render_goal(const Goal& g);
std::string render_clause(const Clause& c);
std::string render_program(const Program& p);

/// Location tag "module:pred/arity, clause No.i".
std::string clause_location(const Program& p, int clause);

/// Canonical form of a clause up to variable renaming and orientation of
/// unification goals.
std::string canonical_clause(const Clause& c);
bool equivalent_programs(const Program& a, const Program& b);

bool is_arithmetic_operator(const Term& t);

// ---------------------------------------------------------------------------

namespace detail {
template <class F>
void visit_term(const Term& t, Path& path, Region region, int goal, bool arithmetic, F& f) {
  f(SymbolVisit{&t, path, region, goal, arithmetic});
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    path.push_back(term_feature(t, static_cast<int>(i) + 1));
    visit_term(t.args[i], path, region, goal, arithmetic, f);
    path.pop_back();
  }
}

inline bool arithmetic_arg(const Goal& g, std::size_t i) {
  return g.kind == GoalKind::compare || (g.kind == GoalKind::assign && i == 1);
}
}  // namespace detail

template <class F>
void visit_clause_symbols(const Clause& c, F&& f) {
  Path path;
  for (std::size_t i = 0; i < c.head.args.size(); ++i) {
    path = {head_feature(c.head, static_cast<int>(i) + 1)};
    detail::visit_term(c.head.args[i], path, Region::head, -1, false, f);
  }
  for (std::size_t g = 0; g < c.guard.size(); ++g) {
    const auto& goal = c.guard[g];
    for (std::size_t i = 0; i < goal.args.size(); ++i) {
      path = {goal_feature(goal, static_cast<int>(i) + 1)};
      detail::visit_term(goal.args[i], path, Region::guard, static_cast<int>(g),
                         detail::arithmetic_arg(goal, i), f);
    }
  }
  for (std::size_t g = 0; g < c.body.size(); ++g) {
    const auto& goal = c.body[g];
    for (std::size_t i = 0; i < goal.args.size(); ++i) {
      path = {goal_feature(goal, static_cast<int>(i) + 1)};
      detail::visit_term(goal.args[i], path, Region::body, static_cast<int>(g),
                         detail::arithmetic_arg(goal, i), f);
    }
  }
}

}  // namespace ghcfix
