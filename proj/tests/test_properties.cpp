#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace ghcfix;

namespace {

const std::vector<std::string> corpus_names = {"append",    "append_err", "fibonacci",     "fibonacci_err",
                                               "comb",      "comb_err",   "quicksort",     "quicksort_err"};

template <class Graph, class C>
bool consistent(const std::vector<C>& cs) {
  Graph g;
  g.add_all(cs);
  return !g.contradictory();
}

template <class Graph, class C>
void check_mis_minimal(const std::vector<C>& cs, const std::vector<std::size_t>& mis, const std::string& what) {
  std::vector<C> s;
  for (auto i : mis) s.push_back(cs[i]);
  CHECK_MESSAGE(!consistent<Graph>(s), what);
  if (s.size() <= 10) {
    // every proper subset
    const std::uint32_t full = (1u << s.size()) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<C> sub;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (mask >> k & 1u) sub.push_back(s[k]);
      if (!consistent<Graph>(sub)) {
        FAIL_CHECK("inconsistent proper subset in " << what);
        return;
      }
    }
  } else {
    for (std::size_t k = 0; k < s.size(); ++k) {
      auto less = s;
      less.erase(less.begin() + static_cast<std::ptrdiff_t>(k));
      CHECK_MESSAGE(consistent<Graph>(less), what);
    }
  }
}

template <class C>
std::vector<C> sample(const std::vector<C>& cs, std::mt19937& rng, double keep) {
  std::bernoulli_distribution coin(keep);
  std::vector<C> out;
  for (const auto& c : cs)
    if (coin(rng)) out.push_back(c);
  return out;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("every MIS over the single-mutant corpora is minimal; consistent input gives none") {
  std::size_t mode_sets = 0, type_sets = 0, empty_checked = 0;
  for (const auto& name : {"append", "fibonacci", "quicksort", "comb"}) {
    Program p = oracle::load(name);
    gen_mutants(p, 1, {}, [&](const MutationSpec& m) {
      Program q = apply_mutation(p, m);
      const std::string what = render_clause(q.clauses[m.clause]);
      Diagnosis d = diagnose(q, {Analysis::mode_and_type, 0});
      for (const auto& mis : d.mode_mis) {
        check_mis_minimal<ModeGraph>(d.mode_constraints, mis, what);
        ++mode_sets;
      }
      for (const auto& mis : d.type_mis) {
        check_mis_minimal<TypeGraph>(d.type_constraints, mis, what);
        ++type_sets;
      }
      if (consistent<ModeGraph>(d.mode_constraints)) {
        CHECK(find_mis<ModeGraph, ModeConstraint>(d.mode_constraints).empty());
        ++empty_checked;
      }
      if (consistent<TypeGraph>(d.type_constraints)) CHECK(find_mis<TypeGraph, TypeConstraint>(d.type_constraints).empty());
      return true;
    });
  }
  CHECK(mode_sets > 100);
  CHECK(type_sets > 50);
  CHECK(empty_checked > 50);
}

TEST_CASE("consistency does not depend on constraint order") {
  std::mt19937 rng(20261015);
  for (const auto& name : corpus_names) {
    Program p = oracle::load(name);
    auto ms = gen_mode_constraints(p);
    auto ts = gen_type_constraints(p);
    const bool mode_ok = consistent<ModeGraph>(ms);
    const bool type_ok = consistent<TypeGraph>(ts);
    for (int i = 0; i < 100; ++i) {
      std::shuffle(ms.begin(), ms.end(), rng);
      std::shuffle(ts.begin(), ts.end(), rng);
      CHECK_MESSAGE(consistent<ModeGraph>(ms) == mode_ok, name);
      CHECK_MESSAGE(consistent<TypeGraph>(ts) == type_ok, name);
    }
  }
}

TEST_CASE("parse and render round-trip") {
  for (const auto& name : corpus_names) {
    Program p = oracle::load(name);
    const std::string text = render_program(p);
    Program q = parse_program(text);
    CHECK_MESSAGE(render_program(q) == text, name);
    CHECK(q.module_name == p.module_name);
    REQUIRE(q.clauses.size() == p.clauses.size());
    for (std::size_t i = 0; i < p.clauses.size(); ++i) {
      CHECK(q.clauses[i].head == p.clauses[i].head);
      CHECK(q.clauses[i].guard == p.clauses[i].guard);
      CHECK(q.clauses[i].body == p.clauses[i].body);
    }
  }
}

TEST_CASE("mode solver is monotone under subset inclusion") {
  std::mt19937 rng(7);
  std::vector<std::vector<ModeConstraint>> pools;
  for (const auto& name : corpus_names) pools.push_back(gen_mode_constraints(oracle::load(name)));
  int inconsistent_subsets = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& pool = pools[static_cast<std::size_t>(i) % pools.size()];
    auto big = sample(pool, rng, 0.8);
    auto small = sample(big, rng, 0.6);
    std::shuffle(big.begin(), big.end(), rng);
    const bool big_ok = consistent<ModeGraph>(big);
    const bool small_ok = consistent<ModeGraph>(small);
    if (big_ok) CHECK(small_ok);
    inconsistent_subsets += !small_ok;
  }
  CHECK(inconsistent_subsets > 0);
}

}
