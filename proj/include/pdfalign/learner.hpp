#pragma once

#include <cstdint>

#include "pdfalign/automaton.hpp"
#include "pdfalign/corpus.hpp"

namespace pdfalign {

struct LearnerParams {
  double alpha = 0.05;              // significance of the Hoeffding test
  std::uint64_t sink_count = 5;     // states seen fewer times become sinks
  bool use_sinks = true;
  bool reverse = false;             // learn on reversed traces

  /// Throws InputError unless 0 < alpha < 1.
  void validate() const;
};

/// Prefix tree acceptor: one state per distinct prefix, counts per prefix.
/// State ids follow creation order (root is 0).
Automaton build_prefix_tree(const TraceCorpus& corpus);

/// Hoeffding-bound test on two observed frequencies f1/n1 and f2/n2.
bool alergia_compatible(std::uint64_t n1, std::uint64_t f1, std::uint64_t n2, std::uint64_t f2,
                        double alpha);

/// Folds `blue` (root of a tree-shaped, not yet merged part) into `red`,
/// summing counts and merging children recursively. State ids are kept.
Automaton merge(const Automaton& automaton, StateId red, StateId blue);

/// Red-blue Alergia state merging over the prefix tree of `corpus`.
Automaton learn(const TraceCorpus& corpus, const LearnerParams& params = {});

}  // namespace pdfalign
