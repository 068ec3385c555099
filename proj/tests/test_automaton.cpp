#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "pdfalign/automaton.hpp"
#include "pdfalign/error.hpp"
#include "support.hpp"

using namespace pdfalign;
using pdfalign::testing::automaton_a;

namespace {

// Shortest distance from the root by repeated relaxation, independent of the
// BFS in compute_levels.
std::map<StateId, std::size_t> relaxed_distances(const Automaton& a) {
  std::map<StateId, std::size_t> dist{{a.root(), 0}};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions()) {
      auto src = dist.find(t.source);
      if (src == dist.end()) continue;
      auto [it, inserted] = dist.emplace(t.target, src->second + 1);
      if (!inserted && it->second > src->second + 1) {
        it->second = src->second + 1;
        changed = true;
      }
      changed |= inserted;
    }
  }
  return dist;
}

bool has_kind(const std::vector<Violation>& v, Violation::Kind kind) {
  for (const auto& x : v) {
    if (x.kind == kind) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("levels of automaton A follow its shape") {
  const Automaton a = automaton_a();
  std::map<std::string, std::size_t> level;
  for (const auto& t : a.transitions()) level[t.label] = t.level;
  CHECK(level == std::map<std::string, std::size_t>{{"a", 0}, {"c", 1}, {"e", 2}, {"d", 2}, {"f", 3}});

  std::vector<std::string> order;
  for (const auto& t : a.transitions()) order.push_back(t.label);
  CHECK(order == std::vector<std::string>{"a", "c", "e", "d", "f"});
}

TEST_CASE("single state automaton has no levels to assign") {
  const Automaton lone;
  const Automaton out = compute_levels(lone);
  CHECK(out == lone);
  CHECK(out.transition_count() == 0);
  CHECK(validate(out).empty());
}

TEST_CASE("two routes into one state: the shorter one sets the level") {
  // 0-a->1-b->5 and 0-c->2-d->3-e->4-f->5, then 5-g->6.
  std::vector<State> states;
  for (StateId s = 0; s <= 6; ++s) states.push_back({s, 1, 0, false});
  std::vector<Transition> tr{{0, 0, 1, "a", 1, 0}, {1, 1, 5, "b", 1, 0}, {2, 0, 2, "c", 1, 0},
                             {3, 2, 3, "d", 1, 0}, {4, 3, 4, "e", 1, 0}, {5, 4, 5, "f", 1, 0},
                             {6, 5, 6, "g", 1, 0}};
  const Automaton a = Automaton::build(0, states, tr);
  const auto dist = relaxed_distances(a);
  CHECK(dist.at(5) == 2);
  for (const auto& t : a.transitions()) {
    CHECK(t.level == dist.at(t.source));
    if (t.label == "g") CHECK(t.level == 2);
  }
}

TEST_CASE("unreachable states are structural errors") {
  std::vector<State> states{{0, 1, 0, false}, {1, 1, 0, false}, {7, 1, 0, false}};
  std::vector<Transition> tr{{0, 0, 1, "a", 1, 0}};
  CHECK_THROWS_AS(compute_levels(Automaton(0, states, tr)), StructuralError);
  CHECK_THROWS_AS(Automaton::build(0, states, tr), StructuralError);
}

TEST_CASE("validate reports constructed violations") {
  CHECK(validate(automaton_a()).empty());

  SUBCASE("nondeterminism") {
    std::vector<State> states{{0, 2, 0, false}, {1, 1, 1, false}, {2, 1, 1, false}};
    std::vector<Transition> tr{{0, 0, 1, "a", 1, 0}, {1, 0, 2, "a", 1, 0}};
    CHECK(has_kind(validate(Automaton(0, states, tr)), Violation::Kind::NondeterministicTransition));
  }
  SUBCASE("unsorted transitions") {
    std::vector<State> states{{0, 1, 0, false}, {1, 1, 0, false}, {2, 1, 1, false}};
    std::vector<Transition> tr{{1, 1, 2, "b", 1, 1}, {0, 0, 1, "a", 1, 0}};
    const auto v = validate(Automaton(0, states, tr));
    CHECK(has_kind(v, Violation::Kind::UnsortedTransitions));
    CHECK_FALSE(has_kind(v, Violation::Kind::IncorrectLevel));
  }
  SUBCASE("wrong level, dangling target, bad symbol, missing root") {
    std::vector<State> states{{0, 1, 0, false}, {1, 1, 0, false}};
    std::vector<Transition> tr{{0, 0, 1, "a", 1, 3}, {1, 1, 9, "b c", 1, 1}};
    const auto v = validate(Automaton(0, states, tr));
    CHECK(has_kind(v, Violation::Kind::IncorrectLevel));
    CHECK(has_kind(v, Violation::Kind::DanglingTransition));
    CHECK(has_kind(v, Violation::Kind::InvalidSymbol));
    CHECK(has_kind(validate(Automaton(4, states, {})), Violation::Kind::MissingRoot));
  }
  SUBCASE("violations name offending ids") {
    std::vector<State> states{{0, 1, 0, false}, {1, 1, 0, false}, {2, 1, 0, false}};
    std::vector<Transition> tr{{0, 0, 1, "a", 1, 0}};
    const auto v = validate(Automaton(0, states, tr));
    REQUIRE(has_kind(v, Violation::Kind::UnreachableState));
    for (const auto& x : v) {
      if (x.kind == Violation::Kind::UnreachableState) CHECK(x.ids == std::vector<std::size_t>{2});
    }
  }
}

TEST_CASE("paths of automaton A") {
  const Automaton a = automaton_a();
  const auto paths = enumerate_paths(a);
  REQUIRE(paths.size() == 2);
  CHECK(path_labels(a, paths[0]) == Sequence{"a", "c", "e", "f"});
  CHECK(path_labels(a, paths[1]) == Sequence{"a", "c", "d"});
  CHECK(path_nodes(a, paths[0]) == std::vector<StateId>{0, 1, 3, 4, 6});
  CHECK_FALSE(paths[0].truncated);

  CHECK(enumerate_paths(Automaton{}).empty());
}

TEST_CASE("sink terminals are dropped when sinks are excluded") {
  const Automaton base = automaton_a();
  std::vector<State> states(base.states().begin(), base.states().end());
  for (auto& s : states) s.sink = s.id == 5;
  const Automaton a(0, states, {base.transitions().begin(), base.transitions().end()});
  const auto paths = enumerate_paths(a, {.include_sinks = false});
  REQUIRE(paths.size() == 1);
  CHECK(path_labels(a, paths[0]) == Sequence{"a", "c", "e", "f"});
  CHECK(enumerate_paths(a, {.include_sinks = true}).size() == 2);
}

TEST_CASE("cycles truncate paths and flag them") {
  std::vector<State> states{{0, 1, 0, false}, {1, 1, 0, false}};
  std::vector<Transition> tr{{0, 0, 1, "a", 1, 0}, {1, 1, 0, "b", 1, 0}};
  const Automaton a = Automaton::build(0, states, tr);
  const auto paths = enumerate_paths(a);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].truncated);
  // The edge back to the root is not taken; the path stops before it.
  CHECK(path_labels(a, paths[0]) == Sequence{"a"});

  const auto capped = enumerate_paths(pdfalign::testing::chain({"a", "b", "c", "d"}), {.max_length = 2});
  REQUIRE(capped.size() == 1);
  CHECK(capped[0].truncated);
  CHECK(capped[0].transitions.size() == 2);
}

TEST_CASE("property: random automata are deterministic, levelled and chain their paths") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const Automaton a = pdfalign::testing::random_automaton(rng, 10, 4);
    CHECK(validate(a).empty());

    for (const auto& s : a.states()) {
      std::set<Symbol> seen;
      for (std::size_t t : a.outgoing(s.id)) CHECK(seen.insert(a.transitions()[t].label).second);
    }

    const Automaton twice = compute_levels(compute_levels(a));
    CHECK(twice == a);
    const auto dist = relaxed_distances(a);
    for (const auto& t : a.transitions()) CHECK(t.level == dist.at(t.source));

    for (const auto& p : enumerate_paths(a)) {
      REQUIRE_FALSE(p.transitions.empty());
      CHECK(a.transitions()[p.transitions.front()].source == a.root());
      for (std::size_t i = 1; i < p.transitions.size(); ++i) {
        CHECK(a.transitions()[p.transitions[i - 1]].target == a.transitions()[p.transitions[i]].source);
      }
    }
  }
}
