#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdfalign/automaton.hpp"

namespace pdfalign {

/// Linear scoring. Penalties are stored negative and always added.
struct ScoringParams {
  double match = 4.0;
  double mismatch = -4.0;
  double gap = -2.0;

  /// Throws InputError unless match > 0, mismatch < 0, gap < 0 and mismatch <= gap.
  void validate() const;

  friend bool operator==(const ScoringParams&, const ScoringParams&) = default;
};

struct AlignOptions {
  ScoringParams scoring;
  /// Relaxation sweeps of the same-column skip moves per column; 0 sweeps
  /// until nothing changes, which is exact on cyclic automata.
  std::size_t unroll_depth = 0;
  /// Align against transitions into sink states too.
  bool include_sinks = false;
};

/// How a cell got its value. `from` is the predecessor row; the predecessor
/// column is j-1 for Match/Mismatch/Stay and j for Traverse.
enum class Move : std::uint8_t { Boundary, Match, Mismatch, Stay, Traverse };

struct CellMove {
  Move move = Move::Boundary;
  std::size_t from = 0;
};

/// (m+1) x (n+1) score grid. Row 0 is "still at the root"; row i >= 1 stands
/// for transition row_transition(i), rows ordered by level.
class AlignmentMatrix {
 public:
  AlignmentMatrix(std::vector<std::size_t> row_transitions, std::size_t columns);

  std::size_t rows() const noexcept { return row_transitions_.size() + 1; }
  std::size_t columns() const noexcept { return columns_; }
  /// Index into Automaton::transitions() for row i >= 1.
  std::size_t row_transition(std::size_t row) const { return row_transitions_.at(row - 1); }
  std::span<const std::size_t> row_transitions() const noexcept { return row_transitions_; }

  double value(std::size_t row, std::size_t col) const { return cells_[row * columns_ + col]; }
  const CellMove& move(std::size_t row, std::size_t col) const { return moves_[row * columns_ + col]; }

  void set(std::size_t row, std::size_t col, double value, CellMove move) {
    cells_[row * columns_ + col] = value;
    moves_[row * columns_ + col] = move;
  }

 private:
  std::vector<std::size_t> row_transitions_;
  std::size_t columns_;
  std::vector<double> cells_;
  std::vector<CellMove> moves_;
};

AlignmentMatrix build_alignment_matrix(const Automaton& automaton, const Sequence& sequence,
                                       const AlignOptions& options = {});

struct AlignmentStep {
  enum class Kind : std::uint8_t { Matched, Skipped, Added };

  Kind kind;
  std::optional<std::size_t> transition;    // Matched, Skipped
  std::optional<std::size_t> symbol_index;  // Matched, Added
  StateId state = 0;                        // Added: where the symbol was inserted

  static AlignmentStep matched(std::size_t transition, std::size_t symbol) {
    return {Kind::Matched, transition, symbol, 0};
  }
  static AlignmentStep skipped(std::size_t transition) { return {Kind::Skipped, transition, std::nullopt, 0}; }
  static AlignmentStep added(std::size_t symbol, StateId at) { return {Kind::Added, std::nullopt, symbol, at}; }

  friend bool operator==(const AlignmentStep&, const AlignmentStep&) = default;
};

std::string_view to_string(AlignmentStep::Kind kind) noexcept;

struct Alignment {
  std::vector<AlignmentStep> steps;
  double raw_score = 0.0;
};

/// Follows stored moves back from the best cell of the last column (ties go
/// to the smallest row). A mismatching traversal becomes skipped + added.
Alignment backtrace(const AlignmentMatrix& matrix, const Automaton& automaton, const Sequence& sequence);

struct MatchedEdge {
  enum class Origin : std::uint8_t {
    Matched,   // transition consumed its own label
    Fused,     // run of skipped transitions replaced by an added symbol
    Inserted,  // added symbol with no transition, self-loop at its state
    Restored,  // skipped transition kept with its model label
  };

  StateId source = 0;
  StateId target = 0;
  Symbol label;
  Origin origin = Origin::Matched;
  std::vector<std::size_t> route;  // model transitions this edge stands for

  friend bool operator==(const MatchedEdge&, const MatchedEdge&) = default;
};

struct MatchedSequence {
  std::vector<StateId> nodes;
  std::vector<MatchedEdge> edges;

  /// Node ids and (source, target, label) of every edge agree.
  bool same_walk(const MatchedSequence& other) const;
};

/// Repairs an alignment into a concrete walk: a run of skipped transitions
/// directly followed by an added symbol fuses into one edge carrying that
/// symbol; other added symbols become self-loops; leftover skipped
/// transitions stay as model edges.
/// Throws StructuralError if the steps do not chain from the root.
MatchedSequence fix_matched_sequence(const Alignment& alignment, const Automaton& automaton,
                                     const Sequence& sequence);

/// The model walk a matched sequence stands for: every transition it
/// traverses with its model label, inserted self-loops dropped.
MatchedSequence recovered_path(const MatchedSequence& matched, const Automaton& automaton);

/// (s - n*mismatch) / (n*match - n*mismatch), clamped to [0, 1].
double normalized_score(double raw_score, std::size_t length, const ScoringParams& scoring);

struct AlignResult {
  Alignment alignment;
  MatchedSequence matched;
  double normalized = 0.0;
  std::optional<std::string> error;  // set when alignment failed; score is then 0

  bool ok() const noexcept { return !error.has_value(); }
};

/// Never throws on bad input; failures are reported in the result.
AlignResult align(const Automaton& automaton, const Sequence& sequence, const AlignOptions& options = {});

/// Aligns every sequence, in parallel when threads != 1. Results keep input order.
/// threads == 0 uses the hardware concurrency.
std::vector<AlignResult> align_all(const Automaton& automaton, std::span<const Sequence> sequences,
                                   const AlignOptions& options = {}, std::size_t threads = 0);

double average_normalized_score(std::span<const AlignResult> results);

}  // namespace pdfalign
