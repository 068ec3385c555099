#include "pdfalign/iterate.hpp"

#include <algorithm>
#include <cmath>

#include "pdfalign/error.hpp"

namespace pdfalign {

void IterateParams::validate() const {
  if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
  if (convergence_window < 2) throw InputError("convergence_window must be at least 2");
  if (!(convergence_tolerance >= 0.0)) throw InputError("convergence_tolerance must be non-negative");
  learner.validate();
  align.scoring.validate();
}

Sequence matched_training_sequence(const Alignment& alignment, const Sequence& sequence) {
  Sequence out;
  for (const auto& step : alignment.steps) {
    if (step.kind == AlignmentStep::Kind::Matched && step.symbol_index && *step.symbol_index < sequence.size()) {
      out.push_back(sequence[*step.symbol_index]);
    }
  }
  return out;
}

Sequence remove_sequential_duplicates(const Sequence& sequence) {
  Sequence out;
  std::unique_copy(sequence.begin(), sequence.end(), std::back_inserter(out));
  return out;
}

bool objective_present(const Automaton& model, const Symbol& symbol, ObjectiveCheck check, bool include_sinks) {
  auto usable = [&](const Transition& t) {
    return t.label == symbol && (include_sinks || (!model.is_sink(t.source) && !model.is_sink(t.target)));
  };
  if (check == ObjectiveCheck::Root) {
    for (std::size_t t : model.outgoing(model.root())) {
      if (usable(model.transitions()[t])) return true;
    }
    return false;
  }
  return std::any_of(model.transitions().begin(), model.transitions().end(), usable);
}

TraceCorpus restore_missing_sequences(const TraceCorpus& original, const TraceCorpus& rebuilt,
                                      const Automaton& model, ObjectiveCheck check, bool include_sinks) {
  TraceCorpus out = rebuilt;
  for (const auto& seq : original.sequences) {
    if (!seq.empty() && !objective_present(model, seq.front(), check, include_sinks)) {
      out.sequences.push_back(seq);
    }
  }
  return out;
}

std::size_t best_iteration(const std::vector<IterationRecord>& records, double tolerance) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& b = records[best];
    if (r.average_score > b.average_score + tolerance ||
        (std::abs(r.average_score - b.average_score) <= tolerance && r.state_count < b.state_count)) {
      best = i;
    }
  }
  return best;
}

namespace {

bool flat_tail(const std::vector<IterationRecord>& records, std::size_t window, double tolerance) {
  if (records.size() < window) return false;
  auto tail = std::span(records).last(window);
  auto [lo, hi] = std::minmax_element(tail.begin(), tail.end(), [](const auto& a, const auto& b) {
    return a.average_score < b.average_score;
  });
  return hi->average_score - lo->average_score <= tolerance;
}

}  // namespace

IterateResult iterate(const TraceCorpus& corpus, const IterateParams& params) {
  params.validate();
  if (corpus.empty()) throw InputError("cannot iterate on an empty corpus");

  // Reversal is applied once; every later step sees the same orientation.
  const TraceCorpus original = params.learner.reverse ? corpus.reversed() : corpus;
  LearnerParams learner = params.learner;
  learner.reverse = false;

  IterateResult result;
  TraceCorpus training = original;
  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    std::optional<Automaton> model;
    if (it == 0) {
      model = learn(training, learner);
    } else {
      try {
        model = learn(training, learner);
      } catch (const std::exception& e) {
        result.report.aborted = e.what();
        break;
      }
    }

    const auto aligned = align_all(*model, original.sequences, params.align, params.threads);
    result.report.records.push_back(
        {it, average_normalized_score(aligned), model->state_count(), training.size()});
    result.models.push_back(*model);

    if (flat_tail(result.report.records, params.convergence_window, params.convergence_tolerance)) {
      result.report.converged = true;
      break;
    }
    if (it + 1 == params.max_iterations) break;

    // Alignment always targets the original traces; only learning sees the rebuilt set.
    TraceCorpus rebuilt;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
      if (!aligned[i].ok()) continue;
      Sequence seq = matched_training_sequence(aligned[i].alignment, original.sequences[i]);
      if (!seq.empty()) rebuilt.sequences.push_back(std::move(seq));
    }
    training = restore_missing_sequences(original, rebuilt, *model, params.objective_check,
                                         params.align.include_sinks);
    for (auto& seq : training.sequences) seq = remove_sequential_duplicates(seq);
  }

  result.report.best_iteration = best_iteration(result.report.records, params.convergence_tolerance);
  result.model = result.models.at(result.report.best_iteration);
  return result;
}

}  // namespace pdfalign
