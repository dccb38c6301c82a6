#include <doctest.h>

#include <climits>

#include "oracles.hpp"

using namespace ghcfix;

namespace {

int occurrence(const Program& p, int clause, Region region, const std::string& name, int nth = 0) {
  for (const auto& o : enumerate_occurrences(p))
    if (o.clause == clause && o.region == region && o.name == name && nth-- == 0) return o.id;
  throw std::runtime_error("no such occurrence");
}

std::vector<std::string> clause_texts(const GroupRepair& g) {
  std::vector<std::string> out;
  for (const auto& a : g.alternatives)
    for (int c : a.changed_clauses) out.push_back(render_clause(a.program.clauses[c]));
  return out;
}

std::multiset<std::string> rules_of(const Alternative& a) {
  std::multiset<std::string> out;
  for (const auto& pen : a.score.penalties) out.insert(pen.variable + ":" + pen.rule);
  return out;
}

}  // namespace

TEST_SUITE("repair") {

TEST_CASE("quick-check on the fibonacci group") {
  Program p = oracle::load("fibonacci_err");
  Diagnosis d = diagnose(p);
  REQUIRE(d.groups.size() == 1);
  const auto& g = d.groups[0];
  const int ns0_r1 = occurrence(p, 0, Region::body, "Ns0");
  CHECK_FALSE(quick_check(p, {{ns0_r1, Replacement{"Max", false}}}, d.subsets, g));
  const int ns0_r2 = occurrence(p, 1, Region::head, "Ns0");
  CHECK(quick_check(p, {{ns0_r2, Replacement{"N1", false}}}, d.subsets, g));
  CHECK_FALSE(quick_check(p, {}, d.subsets, g));
}

TEST_CASE("candidate plans stay inside suspected clauses and change something") {
  Program p = oracle::load("append_err");
  Diagnosis d = diagnose(p);
  auto occs = enumerate_occurrences(p);
  int n = 0;
  candidate_plans(p, d.groups[0], 1, "_F", [&](const RewritePlan& plan) {
    REQUIRE(plan.size() == 1);
    const auto& [id, rep] = *plan.begin();
    CHECK(d.groups[0].suspected_clauses.count(occs[static_cast<std::size_t>(id)].clause));
    CHECK(rep.name != occs[static_cast<std::size_t>(id)].name);
    ++n;
    return true;
  });
  CHECK(n > 0);
}

TEST_CASE("append: six alternatives up to priority 3") {
  Program p = oracle::load("append_err");
  RepairOptions ro;
  ro.max_priority = 100;
  auto groups = repair(p, ro);
  REQUIRE(groups.size() == 1);
  const auto& alts = groups[0].alternatives;
  REQUIRE(alts.size() == 6);
  std::vector<int> prio;
  for (const auto& a : alts) prio.push_back(a.priority());
  CHECK(prio == std::vector<int>{1, 1, 2, 3, 3, 3});
  auto texts = clause_texts(groups[0]);
  CHECK(texts[0] == "append([A|X],Y,Z0):-true|Z0=[A|Z],append(X,Y,Z)");
  CHECK(texts[1] == "append([A|Y],X,Z0):-true|Z0=[A|Z],append(X,Y,Z)");
  // hand count over the rewritten clause
  CHECK(rules_of(alts[2]) == std::multiset<std::string>{"Z0:HR1.3"});
  CHECK(rules_of(alts[3]) == std::multiset<std::string>{"A:HR1.3", "A:HR2"});
  CHECK(rules_of(alts[4]) == std::multiset<std::string>{"Y:HR1.2", "Y:HR1.4"});
  CHECK(rules_of(alts[5]) == std::multiset<std::string>{"Z:HR1.3", "Z:HR1.4"});
  for (const auto& a : alts) CHECK(a.full_check_passed);
}

TEST_CASE("default bound keeps only the best band") {
  auto groups = repair(oracle::load("append_err"), RepairOptions{});
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].alternatives.size() == 2);
}

TEST_CASE("fibonacci: exactly the intended program") {
  Program bad = oracle::load("fibonacci_err");
  auto groups = repair(bad, RepairOptions{});
  REQUIRE(groups.size() == 1);
  REQUIRE(groups[0].alternatives.size() == 1);
  CHECK(equivalent_programs(groups[0].alternatives[0].program, oracle::load("fibonacci")));
  CHECK(groups[0].stats.quick_checked == 4);
}

TEST_CASE("comb: one priority-1 alternative per group") {
  auto groups = repair(oracle::load("comb_err"), RepairOptions{});
  REQUIRE(groups.size() == 2);
  CHECK(clause_texts(groups[0]) ==
        std::vector<std::string>{"comb(N,R,C):-N>R|N1:=N-1,R1:=R-1,comb(N1,R1,C0),cons_list(1,C0,CC0),comb(N1,R,C1),"
                                 "cons_list(0,C1,CC1),append(CC0,CC1,C)"});
  CHECK(clause_texts(groups[1]) == std::vector<std::string>{"cons_list(A,[X|Xs],L):-true|L=[[A|X]|L1],cons_list(A,Xs,L1)"});
  for (const auto& g : groups) CHECK(g.alternatives[0].priority() == 1);
}

TEST_CASE("quicksort: nothing at depth 1, the intended clause at depth 2") {
  Program p = oracle::load("quicksort_err");
  RepairOptions ro;
  auto d1 = repair(p, ro);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].alternatives.empty());
  ro.max_depth = 2;
  auto d2 = repair(p, ro);
  REQUIRE(d2.size() == 1);
  REQUIRE(d2[0].alternatives.size() == 1);
  CHECK(d2[0].alternatives[0].priority() == 1);
  CHECK(equivalent_programs(d2[0].alternatives[0].program, oracle::load("quicksort")));
}

TEST_CASE("every alternative passes whole-program re-analysis on single-group inputs") {
  for (const auto& name : {"append_err", "fibonacci_err"}) {
    Program p = oracle::load(name);
    RepairOptions ro;
    ro.max_priority = INT_MAX;
    for (const auto& g : repair(p, ro))
      for (const auto& a : g.alternatives) CHECK(full_check(a.program, ro.analysis, ro.level));
  }
}

TEST_CASE("the original is among the alternatives of its detected single mutants") {
  for (const auto& name : {"append", "fibonacci"}) {
    Program p = oracle::load(name);
    int detected = 0, recovered = 0;
    gen_mutants(p, 1, {}, [&](const MutationSpec& m) {
      Program q = apply_mutation(p, m);
      if (!detects_error(q, {Analysis::mode_and_type, 2})) return true;
      ++detected;
      RepairOptions ro;
      ro.max_priority = INT_MAX;
      for (const auto& g : repair(q, ro))
        for (const auto& a : g.alternatives)
          if (equivalent_programs(a.program, p)) {
            ++recovered;
            return true;
          }
      MESSAGE("original not proposed for " << render_clause(q.clauses[m.clause]));
      return true;
    });
    CHECK(recovered == detected);
  }
}

TEST_CASE("priority never drops below 1 and grows with penalties") {
  Program p = oracle::load("append");
  Program q = parse_program(":- module test.\nappend([],Y,Z):-true|Y=Z.\nappend([A|X],Y,Z0):-true|Z0=[A|Z],append(X,X,Z).");
  auto occs = enumerate_occurrences(p);
  RewritePlan plan{{occurrence(p, 1, Region::body, "Y"), Replacement{"X", false}}};
  auto s = score_priority(p, q, plan);
  CHECK(s.priority() >= 1);
  CHECK(s.priority() == 1 + static_cast<int>(s.penalties.size()));
  CHECK(score_priority(p, p, {}).priority() == 1);
}

TEST_CASE("search is deterministic") {
  Program p = oracle::load("comb_err");
  auto a = repair(p, RepairOptions{});
  auto b = repair(p, RepairOptions{});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(clause_texts(a[i]) == clause_texts(b[i]));
}

}
