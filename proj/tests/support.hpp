#pragma once

// Test-only fixtures, random generators and brute-force oracles. Nothing
// here calls into the alignment DP.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "pdfalign/alignment.hpp"
#include "pdfalign/automaton.hpp"
#include "pdfalign/corpus.hpp"

namespace pdfalign::testing {

/// The five-transition example automaton: 0-a->1-c->3, 3-e->4-f->6, 3-d->5.
Automaton automaton_a();

/// Linear automaton spelling `labels`, states 0..n.
Automaton chain(const Sequence& labels, std::uint64_t count = 1);

/// Alphabet {s0, s1, ...}.
std::vector<Symbol> make_alphabet(std::size_t size);

/// Random deterministic automaton with at most `max_transitions`
/// transitions. Loops, back edges and shared targets are allowed.
Automaton random_automaton(std::mt19937_64& rng, std::size_t max_transitions, std::size_t alphabet_size);

/// Random tree-shaped automaton with `states` states.
Automaton random_tree(std::mt19937_64& rng, std::size_t states, std::size_t alphabet_size);

Sequence random_sequence(std::mt19937_64& rng, std::size_t length, const std::vector<Symbol>& alphabet);
TraceCorpus random_corpus(std::mt19937_64& rng, std::size_t traces, std::size_t max_length,
                          std::size_t alphabet_size);

/// Best global alignment score by exhaustive search over walks from the root
/// (matched, mismatched, skipped and added moves), pruned only by the bound
/// "every remaining symbol matches".
double brute_force_best_score(const Automaton& automaton, const Sequence& sequence,
                              const ScoringParams& scoring, bool include_sinks = false);

/// Plain Needleman-Wunsch between two label strings, both ends anchored.
double needleman_wunsch(const Sequence& path, const Sequence& sequence, const ScoringParams& scoring);

struct TreeOptimum {
  double score = 0.0;
  std::set<StateId> end_states;  // every state where an optimal walk can end
};

/// For tree automata: the optimal walk ending in state q traverses exactly the
/// root path of q, so scoring every root path with Needleman-Wunsch and
/// keeping the argmax enumerates all optimal recoveries.
TreeOptimum tree_optimum(const Automaton& tree, const Sequence& sequence, const ScoringParams& scoring);

}  // namespace pdfalign::testing
