#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdfalign/alignment.hpp"
#include "pdfalign/corpus.hpp"
#include "pdfalign/learner.hpp"

namespace pdfalign {

/// Where a trace's first symbol must appear for it to count as present.
enum class ObjectiveCheck { Root, AnyState };

struct IterateParams {
  std::size_t max_iterations = 16;
  std::size_t convergence_window = 3;
  double convergence_tolerance = 1e-9;
  ObjectiveCheck objective_check = ObjectiveCheck::Root;
  LearnerParams learner;
  AlignOptions align;
  std::size_t threads = 0;

  /// Throws InputError on max_iterations < 1 or convergence_window < 2.
  void validate() const;
};

struct IterationRecord {
  std::size_t iteration = 0;
  double average_score = 0.0;
  std::size_t state_count = 0;
  std::size_t corpus_size = 0;  // traces the model was learned from
};

struct IterationReport {
  std::vector<IterationRecord> records;
  std::size_t best_iteration = 0;
  bool converged = false;
  std::optional<std::string> aborted;  // learner failure that stopped the loop
};

struct IterateResult {
  Automaton model;  // model of best_iteration
  IterationReport report;
  std::vector<Automaton> models;  // one per record
};

/// Symbols of the matched steps, in order.
Sequence matched_training_sequence(const Alignment& alignment, const Sequence& sequence);

/// Collapses runs of equal adjacent symbols.
Sequence remove_sequential_duplicates(const Sequence& sequence);

/// Whether `symbol` labels an alignable transition per `check`.
bool objective_present(const Automaton& model, const Symbol& symbol, ObjectiveCheck check,
                       bool include_sinks = false);

/// Appends every original trace whose first symbol is missing from `model`.
TraceCorpus restore_missing_sequences(const TraceCorpus& original, const TraceCorpus& rebuilt,
                                      const Automaton& model, ObjectiveCheck check = ObjectiveCheck::Root,
                                      bool include_sinks = false);

/// Index of the best record: highest score, then fewest states, then earliest.
std::size_t best_iteration(const std::vector<IterationRecord>& records, double tolerance = 1e-9);

/// Learn, align the original corpus, rebuild training data from matched
/// symbols, relearn; repeat until the score is flat or the budget runs out.
IterateResult iterate(const TraceCorpus& corpus, const IterateParams& params = {});

}  // namespace pdfalign
