#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pdfalign {

using StateId = std::uint32_t;
using Symbol = std::string;
using Sequence = std::vector<Symbol>;

/// True when `token` can be used as a symbol: non-empty and free of whitespace.
bool is_valid_symbol(std::string_view token) noexcept;

struct State {
  StateId id = 0;
  std::uint64_t total = 0;        // visits during training
  std::uint64_t final_count = 0;  // visits that ended here
  bool sink = false;

  friend bool operator==(const State&, const State&) = default;
};

struct Transition {
  std::size_t id = 0;
  StateId source = 0;
  StateId target = 0;
  Symbol label;
  std::uint64_t count = 0;
  std::size_t level = 0;  // shortest-path depth of `source`

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A probabilistic deterministic automaton with frequency counts.
///
/// The constructor only indexes what it is given; it does not check any
/// invariant so that malformed inputs can be inspected with `validate`.
/// Use `Automaton::build` to get a levelled, validated instance.
class Automaton {
 public:
  Automaton();
  Automaton(StateId root, std::vector<State> states, std::vector<Transition> transitions);

  /// Computes levels, sorts transitions and throws StructuralError if any
  /// invariant is violated.
  static Automaton build(StateId root, std::vector<State> states,
                         std::vector<Transition> transitions);

  StateId root() const noexcept { return root_; }
  std::span<const State> states() const noexcept { return states_; }
  std::span<const Transition> transitions() const noexcept { return transitions_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }

  const State* find_state(StateId id) const;
  bool is_sink(StateId id) const;

  /// Indices into transitions(), in list order.
  std::span<const std::size_t> outgoing(StateId id) const;
  std::span<const std::size_t> incoming(StateId id) const;

  /// Index of the transition leaving `source` with `label`, if any.
  std::optional<std::size_t> find_transition(StateId source, std::string_view label) const;

  std::set<Symbol> alphabet() const;

  friend bool operator==(const Automaton& a, const Automaton& b) {
    return a.root_ == b.root_ && a.states_ == b.states_ && a.transitions_ == b.transitions_;
  }

 private:
  StateId root_ = 0;
  std::vector<State> states_;  // sorted by id
  std::vector<Transition> transitions_;
  std::unordered_map<StateId, std::size_t> state_index_;
  std::unordered_map<StateId, std::vector<std::size_t>> outgoing_;
  std::unordered_map<StateId, std::vector<std::size_t>> incoming_;
};

struct Violation {
  enum class Kind {
    MissingRoot,
    DuplicateState,
    DanglingTransition,
    DuplicateTransitionId,
    InvalidSymbol,
    NondeterministicTransition,
    UnreachableState,
    IncorrectLevel,
    UnsortedTransitions,
  };

  Kind kind;
  std::vector<std::size_t> ids;  // offending state or transition ids
  std::string detail;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Empty iff every automaton invariant holds.
std::vector<Violation> validate(const Automaton& automaton);

/// Assigns each transition the breadth-first depth of its source state and
/// re-sorts the transition list by (level, id).
/// Throws StructuralError when a state is unreachable from the root.
Automaton compute_levels(const Automaton& automaton);

struct Path {
  std::vector<std::size_t> transitions;  // indices into Automaton::transitions()
  bool truncated = false;                // cut at a cycle or at the length cap

  friend bool operator==(const Path&, const Path&) = default;
};

struct PathOptions {
  bool include_sinks = true;
  std::size_t max_length = 64;
};

/// Every root-to-terminal path, in lexicographic order of transition ids.
/// A state is terminal if it has final mass or no usable outgoing transition.
/// Paths never revisit a state: a transition closing a cycle ends the path
/// there with `truncated` set, as does reaching `max_length`.
std::vector<Path> enumerate_paths(const Automaton& automaton, const PathOptions& options = {});

/// Node sequence (root first) visited by `path`.
std::vector<StateId> path_nodes(const Automaton& automaton, const Path& path);
Sequence path_labels(const Automaton& automaton, const Path& path);

}  // namespace pdfalign
