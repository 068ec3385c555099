#include "pdfalign/alignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"
#include "pdfalign/error.hpp"

namespace pdfalign {

void ScoringParams::validate() const {
  if (!(match > 0.0)) throw InputError("MATCH must be positive");
  if (!(mismatch < 0.0)) throw InputError("MISMATCH must be negative");
  if (!(gap < 0.0)) throw InputError("GAP must be negative");
  if (!(mismatch <= gap)) throw InputError("MISMATCH must not exceed GAP");
}

AlignmentMatrix::AlignmentMatrix(std::vector<std::size_t> row_transitions, std::size_t columns)
    : row_transitions_(std::move(row_transitions)),
      columns_(columns),
      cells_(rows() * columns, -std::numeric_limits<double>::infinity()),
      moves_(rows() * columns) {}

namespace {

bool alignable(const Automaton& automaton, const Transition& t, bool include_sinks) {
  return include_sinks || (!automaton.is_sink(t.source) && !automaton.is_sink(t.target));
}

// Row-level adjacency: which rows end in the source (or target) state of each row.
struct RowGraph {
  std::vector<std::vector<std::size_t>> into_source;
  std::vector<std::vector<std::size_t>> into_target;
};

RowGraph row_graph(const Automaton& automaton, std::span<const std::size_t> row_transitions) {
  const std::size_t m = row_transitions.size();
  std::unordered_map<StateId, std::vector<std::size_t>> rows_into;
  rows_into[automaton.root()].push_back(0);
  for (std::size_t i = 1; i <= m; ++i) {
    rows_into[automaton.transitions()[row_transitions[i - 1]].target].push_back(i);
  }
  auto lookup = [&](StateId s) {
    auto it = rows_into.find(s);
    return it == rows_into.end() ? std::vector<std::size_t>{} : it->second;
  };
  RowGraph g;
  g.into_source.resize(m + 1);
  g.into_target.resize(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    const Transition& t = automaton.transitions()[row_transitions[i - 1]];
    g.into_source[i] = lookup(t.source);
    g.into_target[i] = lookup(t.target);
  }
  return g;
}

}  // namespace

AlignmentMatrix build_alignment_matrix(const Automaton& automaton, const Sequence& sequence,
                                       const AlignOptions& options) {
  const ScoringParams& sc = options.scoring;
  sc.validate();
  if (sequence.empty()) throw InputError("cannot align an empty sequence");

  const auto transitions = automaton.transitions();
  std::vector<std::size_t> row_transitions;
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    if (t > 0 && transitions[t].level < transitions[t - 1].level) {
      throw StructuralError("transitions are not sorted by level");
    }
    if (alignable(automaton, transitions[t], options.include_sinks)) row_transitions.push_back(t);
  }

  const std::size_t m = row_transitions.size();
  const std::size_t n = sequence.size();
  AlignmentMatrix matrix(row_transitions, n + 1);
  const RowGraph g = row_graph(automaton, row_transitions);

  matrix.set(0, 0, 0.0, {Move::Boundary, 0});
  for (std::size_t j = 1; j <= n; ++j) matrix.set(0, j, static_cast<double>(j) * sc.gap, {Move::Stay, 0});
  for (std::size_t i = 1; i <= m; ++i) {
    const Transition& t = transitions[row_transitions[i - 1]];
    CellMove mv{Move::Boundary, 0};
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k : g.into_source[i]) {
      if (matrix.value(k, 0) > best) {
        best = matrix.value(k, 0);
        mv = {Move::Traverse, k};
      }
    }
    matrix.set(i, 0, static_cast<double>(t.level + 1) * sc.gap, mv);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const Symbol& symbol = sequence[j - 1];
    // Cases reading column j-1; ties keep the earlier case.
    for (std::size_t i = 1; i <= m; ++i) {
      const Transition& t = transitions[row_transitions[i - 1]];
      const bool same = t.label == symbol;
      double best = -std::numeric_limits<double>::infinity();
      CellMove mv{Move::Boundary, 0};
      for (std::size_t k : g.into_source[i]) {
        const double cand = matrix.value(k, j - 1) + (same ? sc.match : sc.mismatch);
        if (cand > best) {
          best = cand;
          mv = {same ? Move::Match : Move::Mismatch, k};
        }
      }
      for (std::size_t k : g.into_target[i]) {
        const double cand = matrix.value(k, j - 1) + sc.gap;
        if (cand > best) {
          best = cand;
          mv = {Move::Stay, k};
        }
      }
      matrix.set(i, j, best, mv);
    }
    // Skips within column j, swept in level order until stable.
    for (std::size_t sweep = 1;; ++sweep) {
      bool changed = false;
      for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t k : g.into_source[i]) {
          const double cand = matrix.value(k, j) + sc.gap;
          if (cand > matrix.value(i, j)) {
            matrix.set(i, j, cand, {Move::Traverse, k});
            changed = true;
          }
        }
      }
      if (!changed || (options.unroll_depth != 0 && sweep >= options.unroll_depth)) break;
    }
  }
  return matrix;
}

std::string_view to_string(AlignmentStep::Kind kind) noexcept {
  switch (kind) {
    case AlignmentStep::Kind::Matched: return "matched";
    case AlignmentStep::Kind::Skipped: return "skipped";
    case AlignmentStep::Kind::Added: return "added";
  }
  return "unknown";
}

Alignment backtrace(const AlignmentMatrix& matrix, const Automaton& automaton, const Sequence& sequence) {
  const std::size_t n = matrix.columns() - 1;
  if (n != sequence.size()) throw InputError("matrix was built for a different sequence");

  std::size_t row = 0;
  for (std::size_t r = 1; r < matrix.rows(); ++r) {
    if (matrix.value(r, n) > matrix.value(row, n)) row = r;
  }
  Alignment out;
  out.raw_score = matrix.value(row, n);

  std::size_t col = n;
  std::size_t guard = matrix.rows() * matrix.columns() + 1;
  while (row != 0 || col != 0) {
    if (guard-- == 0) throw InternalError("backtrace does not terminate");
    if (row == 0) {
      out.steps.push_back(AlignmentStep::added(col - 1, automaton.root()));
      --col;
      continue;
    }
    const std::size_t t = matrix.row_transition(row);
    const StateId target = automaton.transitions()[t].target;
    const CellMove& mv = matrix.move(row, col);
    switch (mv.move) {
      case Move::Match:
        out.steps.push_back(AlignmentStep::matched(t, col - 1));
        --col;
        break;
      case Move::Mismatch:
        // Reversed below: skipped comes first.
        out.steps.push_back(AlignmentStep::added(col - 1, target));
        out.steps.push_back(AlignmentStep::skipped(t));
        --col;
        break;
      case Move::Stay:
        out.steps.push_back(AlignmentStep::added(col - 1, target));
        --col;
        break;
      case Move::Traverse:
        out.steps.push_back(AlignmentStep::skipped(t));
        break;
      case Move::Boundary:
        throw InternalError("backtrace reached an interior boundary cell");
    }
    row = mv.from;
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

double normalized_score(double raw_score, std::size_t length, const ScoringParams& scoring) {
  if (length == 0) throw InputError("normalized score of an empty sequence");
  const double n = static_cast<double>(length);
  const double lo = n * scoring.mismatch;
  const double hi = n * scoring.match;
  return std::clamp((raw_score - lo) / (hi - lo), 0.0, 1.0);
}

AlignResult align(const Automaton& automaton, const Sequence& sequence, const AlignOptions& options) {
  AlignResult result;
  try {
    const AlignmentMatrix matrix = build_alignment_matrix(automaton, sequence, options);
    result.alignment = backtrace(matrix, automaton, sequence);
    result.matched = fix_matched_sequence(result.alignment, automaton, sequence);
    result.normalized = normalized_score(result.alignment.raw_score, sequence.size(), options.scoring);
  } catch (const std::exception& e) {
    result = AlignResult{};
    result.error = e.what();
  }
  return result;
}

std::vector<AlignResult> align_all(const Automaton& automaton, std::span<const Sequence> sequences,
                                   const AlignOptions& options, std::size_t threads) {
  std::vector<AlignResult> results(sequences.size());
  detail::parallel_for(sequences.size(), threads,
                       [&](std::size_t i) { results[i] = align(automaton, sequences[i], options); });
  return results;
}

double average_normalized_score(std::span<const AlignResult> results) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) sum += r.ok() ? r.normalized : 0.0;
  return sum / static_cast<double>(results.size());
}

}  // namespace pdfalign
