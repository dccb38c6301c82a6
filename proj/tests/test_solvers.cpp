#include <doctest.h>

#include "oracles.hpp"

using namespace ghcfix;

namespace {

const std::vector<std::string> correct = {"append", "fibonacci", "comb", "quicksort"};
const std::vector<std::string> erroneous = {"append_err", "fibonacci_err", "comb_err", "quicksort_err"};

Path atom(const std::string& pred, int arity, int arg) {
  return {Feature{intern(Symbol{SymbolKind::predicate, pred, arity, 0}), arg}};
}

ModeFact root_fact(const ModeGraph& g, const std::string& pred, int arity, int arg) {
  return g.fact_at(atom(pred, arity, arg));
}

std::vector<Program> single_mutants(const std::string& name) {
  Program p = oracle::load(name);
  std::vector<Program> out;
  gen_mutants(p, 1, {}, [&](const MutationSpec& m) {
    out.push_back(apply_mutation(p, m));
    return true;
  });
  return out;
}

}  // namespace

TEST_SUITE("mode-solver") {

TEST_CASE("correct programs are well-moded, erroneous ones are not") {
  for (const auto& n : correct) CHECK_MESSAGE(check_mode_consistency(gen_mode_constraints(oracle::load(n))).consistent(), n);
  for (const auto& n : erroneous)
    CHECK_MESSAGE(!check_mode_consistency(gen_mode_constraints(oracle::load(n))).consistent(), n);
}

TEST_CASE("principal mode of append") {
  ModeGraph g = solve_modes(gen_mode_constraints(oracle::load("append")));
  CHECK(root_fact(g, "append", 3, 1) == ModeFact::in);
  CHECK(root_fact(g, "append", 3, 2) == ModeFact::in);
  CHECK(root_fact(g, "append", 3, 3) == ModeFact::out);
  CHECK(g.fact_at(extend(atom("append", 3, 1), cons_feature(2))) == ModeFact::in);
  CHECK(g.fact_at(extend(atom("append", 3, 3), cons_feature(2))) == ModeFact::out);
}

TEST_CASE("contradiction trace names the clashing sources") {
  auto out = check_mode_consistency(gen_mode_constraints(oracle::load("append_err")));
  REQUIRE_FALSE(out.consistent());
  CHECK(out.trace.size() >= 2);
}

TEST_CASE("snapshot and rollback restore the consistent state") {
  auto cs = gen_mode_constraints(oracle::load("append_err"));
  ModeGraph g;
  auto token = g.snapshot();
  g.add_all(cs);
  CHECK(g.contradictory());
  g.rollback(token);
  CHECK_FALSE(g.contradictory());
  CHECK(g.node_count() == 0);
  auto inner = g.snapshot();
  g.rollback(token);
  CHECK_THROWS_AS(g.rollback(inner), StaleSnapshot);
}

TEST_CASE("R multiset forces the one member left") {
  // R{~m/p1, m/q1, m/r1} with m/q1 = m/r1 = IN leaves ~m/p1 = OUT
  Program p = parse_program("p(X) :- true | q(X), r(X). q(_) :- true | true. r(_) :- true | true.");
  ModeGraph g = solve_modes(gen_mode_constraints(p));
  REQUIRE_FALSE(g.contradictory());
  CHECK(root_fact(g, "p", 1, 1) == ModeFact::IN);
}

TEST_CASE("agrees with the bounded DPLL oracle on every append and fibonacci mutant") {
  for (const auto& name : {"append", "fibonacci"}) {
    int checked = 0;
    for (const auto& m : single_mutants(name)) {
      auto cs = gen_mode_constraints(m);
      bool ours = check_mode_consistency(cs).consistent();
      bool theirs = oracle::bounded_modes_consistent(cs, 3);
      CHECK_MESSAGE(ours == theirs, render_program(m));
      ++checked;
    }
    CHECK(checked > 50);
  }
}

}

TEST_SUITE("type-solver") {

TEST_CASE("corpus consistency") {
  for (const auto& n : correct) CHECK_MESSAGE(check_type_consistency(gen_type_constraints(oracle::load(n))).consistent(), n);
  CHECK_FALSE(check_type_consistency(gen_type_constraints(oracle::load("fibonacci_err"))).consistent());
  CHECK(check_type_consistency(gen_type_constraints(oracle::load("append_err"))).consistent());
}

TEST_CASE("principal type of fibonacci") {
  TypeGraph g = solve_types(gen_type_constraints(oracle::load("fibonacci")));
  auto fib = [](int arg) { return atom("fib", 4, arg); };
  for (int a = 1; a <= 3; ++a) CHECK(g.class_at(fib(a)) == TypeClass::integer);
  CHECK(g.class_at(fib(4)) == TypeClass::list);
  CHECK(g.class_at(extend(fib(4), cons_feature(1))) == TypeClass::integer);
  CHECK(g.same_class(fib(4), extend(fib(4), cons_feature(2))));
}

TEST_CASE("snapshot and rollback") {
  auto cs = gen_type_constraints(oracle::load("fibonacci_err"));
  TypeGraph g;
  auto t = g.snapshot();
  g.add_all(cs);
  CHECK(g.contradictory());
  g.rollback(t);
  CHECK_FALSE(g.contradictory());
}

TEST_CASE("agrees with the explicit-path oracle on every mutant") {
  for (const auto& name : {"append", "fibonacci", "quicksort"})
    for (const auto& m : single_mutants(name)) {
      auto cs = gen_type_constraints(m);
      CHECK_MESSAGE(check_type_consistency(cs).consistent() == oracle::bounded_types_consistent(cs, 3), render_program(m));
    }
}

}
