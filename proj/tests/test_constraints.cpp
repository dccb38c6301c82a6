#include <doctest.h>

#include "oracles.hpp"

using namespace ghcfix;

namespace {

template <class C>
int count_rule(const std::vector<C>& cs, Rule r, int clause) {
  return static_cast<int>(std::count_if(cs.begin(), cs.end(), [&](const C& c) {
    return c.provenance.rule == r && c.provenance.clause == clause;
  }));
}

}  // namespace

TEST_SUITE("constraint-gen") {

TEST_CASE("append mode constraints by rule") {
  Program p = oracle::load("append");
  auto cs = gen_mode_constraints(p);
  // clause 1: "[]" in the head, one unification, Y and Z
  CHECK(count_rule(cs, Rule::HF, 0) == 1);
  CHECK(count_rule(cs, Rule::BU, 0) == 1);
  CHECK(count_rule(cs, Rule::BV, 0) == 2);
  CHECK(count_rule(cs, Rule::HV, 0) == 0);
  // clause 2: "." in head and body; A X Y Z Z0
  CHECK(count_rule(cs, Rule::HF, 1) == 1);
  CHECK(count_rule(cs, Rule::BF, 1) == 1);
  CHECK(count_rule(cs, Rule::BV, 1) == 5);
}

TEST_CASE("a variable twice in the head is constantly IN") {
  Program p = oracle::load("append_err");
  auto cs = gen_mode_constraints(p);
  int hv = 0;
  for (const auto& c : cs) {
    if (c.provenance.rule != Rule::HV) continue;
    ++hv;
    CHECK(c.provenance.variable == "Y");
    auto* k = std::get_if<ConstantSubmode>(&c.body);
    REQUIRE(k);
    CHECK(k->value == ModeValue::in);
  }
  CHECK(hv == 2);
}

TEST_CASE("singleton body variable is OUT, singleton head variable is IN") {
  Program p = parse_program("p(X) :- true | q(Y).");
  auto cs = gen_mode_constraints(p);
  int seen = 0;
  for (const auto& c : cs) {
    if (c.provenance.rule != Rule::BV) continue;
    auto* k = std::get_if<ConstantSubmode>(&c.body);
    REQUIRE(k);
    CHECK(k->value == (c.provenance.variable == "X" ? ModeValue::in : ModeValue::out));
    ++seen;
  }
  CHECK(seen == 2);
}

TEST_CASE("three occurrences give an R multiset, two give a link") {
  Program p = parse_program("p(X,Y) :- true | q(X,X), r(Y).");
  auto cs = gen_mode_constraints(p);
  for (const auto& c : cs) {
    if (c.provenance.rule != Rule::BV) continue;
    if (c.provenance.variable == "X") {
      auto* r = std::get_if<RMultiset>(&c.body);
      REQUIRE(r);
      CHECK(r->members.size() == 3);
      CHECK(r->members[0].inverted);
    } else {
      CHECK(std::holds_alternative<SubmodeLink>(c.body));
    }
  }
}

TEST_CASE("builtins impose IN arguments and integer types") {
  Program p = oracle::load("fibonacci");
  auto ms = gen_mode_constraints(p);
  auto ts = gen_type_constraints(p);
  CHECK(count_rule(ms, Rule::builtin, 1) == 4);  // =< and :=
  int ints = 0;
  for (const auto& t : ts)
    if (auto* pc = std::get_if<PointClass>(&t.body); pc && t.provenance.rule == Rule::builtin) {
      CHECK(pc->cls == TypeClass::integer);
      ++ints;
    }
  CHECK(ints > 0);
}

TEST_CASE("type constraints: symbols, shared variables, unification") {
  Program p = oracle::load("append");
  auto ts = gen_type_constraints(p);
  CHECK(count_rule(ts, Rule::HBFt, 0) == 1);
  CHECK(count_rule(ts, Rule::BUt, 0) == 1);
  CHECK(count_rule(ts, Rule::HBVt, 0) == 2);  // Y and Z, two occurrences each
  CHECK(count_rule(ts, Rule::HBFt, 1) == 2);
}

TEST_CASE("formatted constraints name rule and source") {
  Program p = oracle::load("append_err");
  auto cs = gen_mode_constraints(p);
  auto it = std::find_if(cs.begin(), cs.end(), [](const ModeConstraint& c) { return c.provenance.rule == Rule::HV; });
  REQUIRE(it != cs.end());
  auto s = format_constraint(*it, p);
  CHECK(s.find("(HV)") != std::string::npos);
  CHECK(s.find("Y in clause append/3 No.2") != std::string::npos);
}

}
