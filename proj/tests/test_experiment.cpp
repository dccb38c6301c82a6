#include <doctest.h>

#include "ghcfix/report.hpp"
#include "oracles.hpp"

using namespace ghcfix;

namespace {

std::uint64_t streamed(const Program& p, int n, bool underscore = false) {
  std::uint64_t count = 0;
  gen_mutants(p, n, MutationOptions{underscore}, [&](const MutationSpec&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace

TEST_SUITE("cli-harness") {

TEST_CASE("Bell numbers") {
  std::vector<std::uint64_t> expect{1, 1, 2, 5, 15, 52, 203};
  for (int n = 0; n < 7; ++n) {
    CHECK(bell_number(n) == expect[static_cast<std::size_t>(n)]);
    CHECK(oracle::partitions(n) == expect[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("mutant totals") {
  Program a = oracle::load("append");
  Program f = oracle::load("fibonacci");
  CHECK(count_mutants(a, 1) == 58);
  CHECK(count_mutants(f, 1) == 118);
  CHECK(count_mutants(a, 2) == 1200);
  CHECK(count_mutants(f, 2) == 4668);
  CHECK(count_mutants(a, 3) == 16980);
  CHECK(count_mutants(f, 3) == 133045);
}

TEST_CASE("closed form, stream and explicit enumeration agree") {
  for (const auto& name : {"append", "fibonacci", "quicksort", "comb"}) {
    Program p = oracle::load(name);
    for (int n = 1; n <= 2; ++n)
      for (bool u : {false, true}) {
        auto closed = count_mutants(p, n, MutationOptions{u});
        CHECK_MESSAGE(closed == streamed(p, n, u), name);
        CHECK_MESSAGE(closed == oracle::enumerate_mutant_count(p, n, u), name);
      }
  }
  Program a = oracle::load("append");
  CHECK(oracle::enumerate_mutant_count(a, 3, false) == 16980);
  CHECK(oracle::enumerate_mutant_count(a, 4, true) == count_mutants(a, 4, MutationOptions{true}));
}

TEST_CASE("every mutant differs from the original") {
  Program p = oracle::load("fibonacci");
  gen_mutants(p, 2, {}, [&](const MutationSpec& m) {
    Program q = apply_mutation(p, m);
    CHECK(render_clause(q.clauses[m.clause]) != render_clause(p.clauses[m.clause]));
    return true;
  });
}

TEST_CASE("no \"_\" targets unless asked") {
  Program p = parse_program("p(X,_Y) :- true | q(X,_Y).");
  gen_mutants(p, 1, {}, [&](const MutationSpec& m) {
    for (const auto& [id, rep] : m.plan) CHECK_FALSE((!rep.fresh && rep.name == "_Y"));
    return true;
  });
  CHECK(count_mutants(p, 1, MutationOptions{true}) > count_mutants(p, 1));
}

TEST_CASE("a clause with fewer sites than N contributes nothing") {
  Program p = parse_program("p(X) :- true | true.");
  CHECK(count_mutants(p, 2) == 0);
  CHECK(streamed(p, 2) == 0);
}

TEST_CASE("table rows are consistent and reproducible") {
  Program p = oracle::load("append");
  ExperimentOptions eo;
  eo.threads = 2;
  for (const auto& cfg : table1_configs()) {
    auto r1 = run_table1(p, "append", cfg, eo);
    auto r2 = run_table1(p, "append", cfg, eo);
    CHECK(r1.total == 58);
    CHECK(r1.detected <= r1.total);
    std::size_t sum = 0;
    for (auto v : r1.alternatives) sum += v;
    CHECK(sum == r1.detected);
    r1.runtime_ms = r2.runtime_ms = 0;
    CHECK(csv_line(r1) == csv_line(r2));
  }
}

TEST_CASE("csv layout") {
  TableRow r;
  r.program = "x";
  r.total = 3;
  r.detected = 2;
  r.alternatives[1] = 2;
  auto header = csv_header();
  auto line = csv_line(r);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(line.begin(), line.end(), ','));
  CHECK(line.rfind("x,mode&type,0,no,1,3,2,0,2,", 0) == 0);
}

}

TEST_SUITE("report") {

TEST_CASE("fix transcript layout") {
  RepairOptions ro;
  ro.max_priority = 100;
  auto text = render_fix_report(repair(oracle::load("append_err"), ro));
  CHECK(text.find("================= Suspected Group 1 =================") != std::string::npos);
  CHECK(text.find("------------- Priority 3 -------------") != std::string::npos);
  CHECK(text.find("in test:append/3, clause No.2") != std::string::npos);
  auto empty = render_fix_report(repair(oracle::load("quicksort_err"), RepairOptions{}));
  CHECK(empty.find("Sorry, no alternative is found") != std::string::npos);
}

TEST_CASE("MIS listing uses ascii paths and names the rule") {
  Program p = oracle::load("append_err");
  auto text = render_mis_report(p, diagnose(p), 2);
  CHECK(text.find("m/<(test:append)/3,1> = OUT") != std::string::npos);
  CHECK(text.find("imposed by the rule BV applied to the variable X") != std::string::npos);
  CHECK(text.find("singleton(X)") != std::string::npos);
  CHECK(text.find("--Constraints are consistent, and there is no MIS--") != std::string::npos);
}

TEST_CASE("json output round-trips through the parser") {
  Program p = oracle::load("fibonacci_err");
  Diagnosis d;
  auto groups = repair(p, RepairOptions{}, &d);
  auto j = nlohmann::json::parse(repair_json(groups).dump());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["alternatives"][0]["priority"] == 1);
  auto dj = diagnosis_json(p, d);
  CHECK(dj["groups"].size() == 1);
  CHECK(dj["mode_mis"].size() == d.mode_mis.size());
}

}
