#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pdfalign/error.hpp"
#include "pdfalign/verify.hpp"
#include "support.hpp"

using namespace pdfalign;
using pdfalign::testing::automaton_a;
using pdfalign::testing::chain;

namespace {

Path whole(const Automaton& a) {
  auto paths = enumerate_paths(a);
  REQUIRE(paths.size() == 1);
  return paths.front();
}

std::size_t count_for(const VerificationResult& r, const std::string& name) {
  for (const auto& c : r.cases) {
    if (c.test_case.name() == name) return c.total;
  }
  return 0;
}

}  // namespace

TEST_CASE("test case names and parsing") {
  CHECK(TestCase::parse("remove1").name() == "REMOVE-1");
  CHECK(TestCase::parse("MODIFY-2", 9).rng_seed == 9);
  CHECK(TestCase::parse("swap1").kind == PerturbationKind::Swap);
  CHECK_THROWS_AS(TestCase::parse("swap2"), InputError);
  CHECK_THROWS_AS(TestCase::parse("shuffle1"), InputError);
  CHECK_THROWS_AS((TestCase{PerturbationKind::Add, 3, 0}.validate()), InputError);
  CHECK(TestCase::all().size() == 7);
}

TEST_CASE("permutation counts") {
  const Automaton a = chain({"a", "b", "c", "d"});
  const std::set<Symbol> abcd{"a", "b", "c", "d"};
  const Path p = whole(a);

  // A 5-node path has 3 REMOVE-1 and C(3,2) REMOVE-2 perturbations.
  CHECK(generate_perturbations(a, p, {PerturbationKind::Remove, 1, 0}, abcd).size() == 3);
  CHECK(generate_perturbations(a, p, {PerturbationKind::Remove, 2, 0}, abcd).size() == 3);
  CHECK(generate_perturbations(a, p, {PerturbationKind::Modify, 1, 0}, abcd).size() == 3);
  CHECK(generate_perturbations(a, p, {PerturbationKind::Swap, 1, 0}, abcd).size() == 3);
  CHECK(generate_perturbations(a, p, {PerturbationKind::Add, 2, 0}, abcd).size() == 5 * 16);

  const Automaton three = chain({"a", "b", "c"});
  CHECK(generate_perturbations(three, whole(three), {PerturbationKind::Add, 1, 0}, abcd).size() == 16);

  const Automaton aab = chain({"a", "a", "b"});
  const auto swaps = generate_perturbations(aab, whole(aab), {PerturbationKind::Swap, 1, 0}, abcd);
  REQUIRE(swaps.size() == 1);
  CHECK(swaps[0].sequence == Sequence{"a", "b", "a"});

  const Automaton one = chain({"a"});
  CHECK(generate_perturbations(one, whole(one), {PerturbationKind::Remove, 1, 0}, abcd).empty());
}

TEST_CASE("perturbations never touch the last symbol and MODIFY always changes") {
  const Automaton a = chain({"a", "b", "c", "d", "e"});
  const std::set<Symbol> alphabet{"a", "b", "c", "d", "e"};
  const Path p = whole(a);
  for (int arity : {1, 2}) {
    for (auto kind : {PerturbationKind::Remove, PerturbationKind::Modify}) {
      for (const auto& pert : generate_perturbations(a, p, {kind, arity, 3}, alphabet)) {
        CHECK(pert.sequence.back() == "e");
        if (kind == PerturbationKind::Modify) {
          int changed = 0;
          for (std::size_t i = 0; i < pert.sequence.size(); ++i) changed += pert.sequence[i] != path_labels(a, p)[i];
          CHECK(changed == arity);
        }
      }
    }
  }
}

TEST_CASE("seeded draws over a large alphabet are reproducible") {
  const Automaton a = chain({"a", "b", "c"});
  std::set<Symbol> big;
  for (const auto& s : pdfalign::testing::make_alphabet(12)) big.insert(s);
  const TestCase tc{PerturbationKind::Add, 2, 77};
  const auto x = generate_perturbations(a, whole(a), tc, big);
  const auto y = generate_perturbations(a, whole(a), tc, big);
  REQUIRE(x.size() == 4);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].sequence == y[i].sequence);
}

TEST_CASE("recovering a removed symbol") {
  const Automaton a = automaton_a();
  const Path p = enumerate_paths(a).front();
  const MatchedSequence expected = expected_walk(a, p);
  CHECK(expected.nodes == std::vector<StateId>{0, 1, 3, 4, 6});
  CHECK(check_recovery(a, {"a", "e", "f"}, expected));
  CHECK(check_recovery(a, {"a", "c", "e", "f"}, expected));
  CHECK_FALSE(check_recovery(a, {"a", "c", "d"}, expected));
  CHECK_FALSE(check_recovery(a, {}, expected));
}

TEST_CASE("verification of a chain") {
  const Automaton a = chain({"a", "b", "c", "d"});
  const VerificationResult r = run_verification(a, TestCase::all(1));
  REQUIRE(r.cases.size() == 7);
  CHECK(r.cases[0].test_case.name() == "REMOVE-1");
  CHECK(r.cases[0].total == 3);
  CHECK(r.cases[0].accuracy == 1.0);
  for (const auto& c : r.cases) {
    CHECK(c.accuracy >= 0.0);
    CHECK(c.accuracy <= 1.0);
    CHECK(c.correct <= c.total);
  }
  CHECK(count_for(r, "SWAP-1") == 3);

  CHECK(run_verification(a, {}).cases.empty());
}

TEST_CASE("label-identical branches can make recovery ambiguous") {
  // 0-a->1-x->3 and 0-b->2-x->4: removing the first symbol leaves [x].
  std::vector<State> states;
  for (StateId s = 0; s <= 4; ++s) states.push_back({s, 1, s >= 3 ? 1u : 0u, false});
  const Automaton a = Automaton::build(
      0, states, {{0, 0, 1, "a", 1, 0}, {1, 0, 2, "b", 1, 0}, {2, 1, 3, "x", 1, 0}, {3, 2, 4, "x", 1, 0}});
  const VerificationResult r = run_verification(a, {TestCase::parse("remove1")});
  REQUIRE(r.cases.size() == 1);
  CHECK(r.cases[0].total == 2);
  CHECK(r.cases[0].correct == 1);
  CHECK(r.cases[0].accuracy == 0.5);
}

TEST_CASE("verification is deterministic for a seed and independent of threads") {
  std::mt19937_64 rng(2);
  const Automaton a = pdfalign::testing::random_tree(rng, 14, 5);
  const auto cases = TestCase::all(123);
  const VerificationResult x = run_verification(a, cases, {.threads = 1});
  const VerificationResult y = run_verification(a, cases, {.threads = 4});
  REQUIRE(x.cases.size() == y.cases.size());
  for (std::size_t i = 0; i < x.cases.size(); ++i) {
    CHECK(x.cases[i].total == y.cases[i].total);
    CHECK(x.cases[i].correct == y.cases[i].correct);
  }
}
