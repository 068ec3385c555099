#include "support.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace pdfalign::testing {

Automaton automaton_a() {
  std::vector<State> states{{0, 2, 0, false}, {1, 2, 0, false}, {3, 2, 0, false},
                            {4, 1, 0, false}, {5, 1, 1, false}, {6, 1, 1, false}};
  std::vector<Transition> transitions{
      {0, 0, 1, "a", 2, 0}, {1, 1, 3, "c", 2, 0}, {2, 3, 4, "e", 1, 0}, {3, 3, 5, "d", 1, 0}, {4, 4, 6, "f", 1, 0},
  };
  return Automaton::build(0, std::move(states), std::move(transitions));
}

Automaton chain(const Sequence& labels, std::uint64_t count) {
  std::vector<State> states;
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i <= labels.size(); ++i) {
    states.push_back({static_cast<StateId>(i), count, i == labels.size() ? count : 0, false});
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    transitions.push_back(
        {i, static_cast<StateId>(i), static_cast<StateId>(i + 1), labels[i], count, 0});
  }
  return Automaton::build(0, std::move(states), std::move(transitions));
}

std::vector<Symbol> make_alphabet(std::size_t size) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace

Automaton random_automaton(std::mt19937_64& rng, std::size_t max_transitions, std::size_t alphabet_size) {
  const auto alphabet = make_alphabet(alphabet_size);
  const std::size_t wanted = 1 + pick(rng, max_transitions);
  std::vector<StateId> states{0};
  std::map<std::pair<StateId, Symbol>, StateId> edges;
  // A spanning tree first so every state is reachable, then extra edges.
  std::size_t attempts = 0;
  while (edges.size() < wanted && attempts++ < 200) {
    const StateId source = states[pick(rng, states.size())];
    const Symbol& label = alphabet[pick(rng, alphabet.size())];
    if (edges.contains({source, label})) continue;
    StateId target;
    if (states.size() < 2 || pick(rng, 3) != 0) {
      target = static_cast<StateId>(states.size());
      states.push_back(target);
    } else {
      target = states[pick(rng, states.size())];
    }
    edges.emplace(std::pair{source, label}, target);
  }
  std::vector<State> st;
  for (StateId s : states) st.push_back({s, 1, 0, false});
  std::vector<Transition> tr;
  for (const auto& [key, target] : edges) tr.push_back({tr.size(), key.first, target, key.second, 1, 0});
  return Automaton::build(0, std::move(st), std::move(tr));
}

Automaton random_tree(std::mt19937_64& rng, std::size_t states, std::size_t alphabet_size) {
  const auto alphabet = make_alphabet(alphabet_size);
  std::vector<std::set<Symbol>> used(states);
  std::vector<State> st{{0, 1, 0, false}};
  std::vector<Transition> tr;
  for (std::size_t s = 1; s < states; ++s) {
    StateId parent;
    do {
      parent = static_cast<StateId>(pick(rng, s));
    } while (used[parent].size() == alphabet.size());
    Symbol label;
    do {
      label = alphabet[pick(rng, alphabet.size())];
    } while (used[parent].contains(label));
    used[parent].insert(label);
    st.push_back({static_cast<StateId>(s), 1, 0, false});
    tr.push_back({tr.size(), parent, static_cast<StateId>(s), label, 1, 0});
  }
  return Automaton::build(0, std::move(st), std::move(tr));
}

Sequence random_sequence(std::mt19937_64& rng, std::size_t length, const std::vector<Symbol>& alphabet) {
  Sequence out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(alphabet[pick(rng, alphabet.size())]);
  return out;
}

TraceCorpus random_corpus(std::mt19937_64& rng, std::size_t traces, std::size_t max_length,
                          std::size_t alphabet_size) {
  const auto alphabet = make_alphabet(alphabet_size);
  TraceCorpus corpus;
  for (std::size_t i = 0; i < traces; ++i) {
    corpus.sequences.push_back(random_sequence(rng, 1 + pick(rng, max_length), alphabet));
  }
  return corpus;
}

double brute_force_best_score(const Automaton& automaton, const Sequence& sequence, const ScoringParams& scoring,
                              bool include_sinks) {
  const std::size_t n = sequence.size();
  double best = static_cast<double>(n) * scoring.gap;  // everything added at the root
  std::function<void(StateId, std::size_t, double)> walk = [&](StateId state, std::size_t j, double score) {
    if (score + static_cast<double>(n - j) * scoring.match < best) return;
    if (j == n) {
      best = std::max(best, score);
      return;  // further moves are skips, which only lose points
    }
    walk(state, j + 1, score + scoring.gap);
    for (std::size_t t : automaton.outgoing(state)) {
      const Transition& tr = automaton.transitions()[t];
      if (!include_sinks && (automaton.is_sink(tr.source) || automaton.is_sink(tr.target))) continue;
      walk(tr.target, j + 1, score + (tr.label == sequence[j] ? scoring.match : scoring.mismatch));
      walk(tr.target, j, score + scoring.gap);
    }
  };
  walk(automaton.root(), 0, 0.0);
  return best;
}

double needleman_wunsch(const Sequence& path, const Sequence& sequence, const ScoringParams& scoring) {
  const std::size_t p = path.size();
  const std::size_t n = sequence.size();
  std::vector<std::vector<double>> d(p + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 1; i <= p; ++i) d[i][0] = static_cast<double>(i) * scoring.gap;
  for (std::size_t j = 1; j <= n; ++j) d[0][j] = static_cast<double>(j) * scoring.gap;
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double diag = d[i - 1][j - 1] + (path[i - 1] == sequence[j - 1] ? scoring.match : scoring.mismatch);
      d[i][j] = std::max({diag, d[i - 1][j] + scoring.gap, d[i][j - 1] + scoring.gap});
    }
  }
  return d[p][n];
}

TreeOptimum tree_optimum(const Automaton& tree, const Sequence& sequence, const ScoringParams& scoring) {
  std::map<StateId, Sequence> path_to{{tree.root(), {}}};
  std::vector<StateId> order{tree.root()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t t : tree.outgoing(order[i])) {
      const Transition& tr = tree.transitions()[t];
      Sequence p = path_to[order[i]];
      p.push_back(tr.label);
      path_to[tr.target] = std::move(p);
      order.push_back(tr.target);
    }
  }
  TreeOptimum out;
  out.score = -std::numeric_limits<double>::infinity();
  for (const auto& [state, labels] : path_to) {
    const double s = needleman_wunsch(labels, sequence, scoring);
    if (s > out.score) {
      out.score = s;
      out.end_states = {state};
    } else if (s == out.score) {
      out.end_states.insert(state);
    }
  }
  return out;
}

}  // namespace pdfalign::testing
