#include <doctest.h>

#include "oracles.hpp"

using namespace ghcfix;

TEST_SUITE("program") {

TEST_CASE("parses module, clauses and predicate table") {
  Program p = oracle::load("append");
  CHECK(p.module_name == "test");
  REQUIRE(p.clauses.size() == 2);
  CHECK(p.predicates.at("append/3") == std::vector<int>{0, 1});
  CHECK(p.clauses[1].number == 2);
  CHECK(render_clause(p.clauses[1]) == "append([A|X],Y,Z0):-true|Z0=[A|Z],append(X,Y,Z)");
  CHECK(clause_location(p, 1) == "test:append/3, clause No.2");
}

TEST_CASE("unification goals are numbered per clause order") {
  Program p = oracle::load("append");
  CHECK(p.clauses[0].body[0].kind == GoalKind::unify);
  CHECK(p.clauses[0].body[0].site != p.clauses[1].body[0].site);
}

TEST_CASE("guards, arithmetic and anonymous variables") {
  Program p = oracle::load("fibonacci");
  const Clause& c = p.clauses[1];
  REQUIRE(c.guard.size() == 1);
  CHECK(c.guard[0].kind == GoalKind::compare);
  CHECK(c.body[1].kind == GoalKind::assign);
  auto occs = enumerate_clause_occurrences(p, 0);
  CHECK(std::count_if(occs.begin(), occs.end(), [](const VarOccurrence& o) { return o.anonymous; }) == 1);
}

TEST_CASE("occurrence ids are global and offsets partition them") {
  Program p = oracle::load("quicksort");
  auto all = enumerate_occurrences(p);
  auto off = occurrence_offsets(p);
  REQUIRE(off.size() == p.clauses.size() + 1);
  CHECK(off.back() == static_cast<int>(all.size()));
  for (std::size_t c = 0; c < p.clauses.size(); ++c) {
    auto local = enumerate_clause_occurrences(p, static_cast<int>(c));
    REQUIRE(static_cast<int>(local.size()) == off[c + 1] - off[c]);
    for (const auto& o : local) CHECK(all[static_cast<std::size_t>(o.id)].name == o.name);
  }
}

TEST_CASE("rewrite renames exactly the listed occurrence") {
  Program p = oracle::load("append_err");
  auto occs = enumerate_occurrences(p);
  // the head occurrence of Y inside the list in clause 2
  auto it = std::find_if(occs.begin(), occs.end(), [](const VarOccurrence& o) {
    return o.clause == 1 && o.region == Region::head && o.name == "Y" && o.path.size() == 2;
  });
  REQUIRE(it != occs.end());
  Program q = rewrite_occurrences(p, {{it->id, Replacement{"X", false}}});
  CHECK(render_clause(q.clauses[1]) == "append([A|X],Y,Z0):-true|Z0=[A|Z],append(X,Y,Z)");
  CHECK(render_clause(p.clauses[1]) != render_clause(q.clauses[1]));
  CHECK_THROWS_AS(rewrite_occurrences(p, {{it->id, Replacement{"_", false}}}), RewriteError);
}

TEST_CASE("equivalence up to renaming and unification orientation") {
  Program a = parse_program("p(X,Y) :- true | X = Y.");
  Program b = parse_program("p(A,B) :- true | B = A.");
  Program c = parse_program("p(A,B) :- true | A = A.");
  CHECK(equivalent_programs(a, b));
  CHECK_FALSE(equivalent_programs(a, c));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_program("p(X :- true | q.");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

}
