#include "pdfalign/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

#include "pdfalign/error.hpp"

namespace pdfalign {

namespace {

// Breadth-first depth of every state reachable from `root` (dangling
// transitions are ignored).
std::unordered_map<StateId, std::size_t> bfs_depths(const Automaton& automaton) {
  std::unordered_map<StateId, std::size_t> depth;
  if (automaton.find_state(automaton.root()) == nullptr) return depth;
  std::deque<StateId> queue{automaton.root()};
  depth[automaton.root()] = 0;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t t : automaton.outgoing(s)) {
      const Transition& tr = automaton.transitions()[t];
      if (automaton.find_state(tr.target) == nullptr) continue;
      if (depth.emplace(tr.target, depth[s] + 1).second) queue.push_back(tr.target);
    }
  }
  return depth;
}

}  // namespace

bool is_valid_symbol(std::string_view token) noexcept {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

Automaton::Automaton() : Automaton(0, {State{0, 0, 0, false}}, {}) {}

Automaton::Automaton(StateId root, std::vector<State> states, std::vector<Transition> transitions)
    : root_(root), states_(std::move(states)), transitions_(std::move(transitions)) {
  std::stable_sort(states_.begin(), states_.end(),
                   [](const State& a, const State& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < states_.size(); ++i) state_index_.emplace(states_[i].id, i);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    outgoing_[transitions_[i].source].push_back(i);
    incoming_[transitions_[i].target].push_back(i);
  }
}

Automaton Automaton::build(StateId root, std::vector<State> states,
                           std::vector<Transition> transitions) {
  Automaton automaton = compute_levels(Automaton(root, std::move(states), std::move(transitions)));
  auto violations = validate(automaton);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid automaton:";
    for (const auto& v : violations) msg << ' ' << to_string(v.kind) << " (" << v.detail << ')';
    throw StructuralError(msg.str());
  }
  return automaton;
}

const State* Automaton::find_state(StateId id) const {
  auto it = state_index_.find(id);
  return it == state_index_.end() ? nullptr : &states_[it->second];
}

bool Automaton::is_sink(StateId id) const {
  const State* s = find_state(id);
  return s != nullptr && s->sink;
}

std::span<const std::size_t> Automaton::outgoing(StateId id) const {
  auto it = outgoing_.find(id);
  if (it == outgoing_.end()) return {};
  return it->second;
}

std::span<const std::size_t> Automaton::incoming(StateId id) const {
  auto it = incoming_.find(id);
  if (it == incoming_.end()) return {};
  return it->second;
}

std::optional<std::size_t> Automaton::find_transition(StateId source, std::string_view label) const {
  for (std::size_t t : outgoing(source)) {
    if (transitions_[t].label == label) return t;
  }
  return std::nullopt;
}

std::set<Symbol> Automaton::alphabet() const {
  std::set<Symbol> out;
  for (const auto& t : transitions_) out.insert(t.label);
  return out;
}

std::string_view to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::MissingRoot: return "MissingRoot";
    case Violation::Kind::DuplicateState: return "DuplicateState";
    case Violation::Kind::DanglingTransition: return "DanglingTransition";
    case Violation::Kind::DuplicateTransitionId: return "DuplicateTransitionId";
    case Violation::Kind::InvalidSymbol: return "InvalidSymbol";
    case Violation::Kind::NondeterministicTransition: return "NondeterministicTransition";
    case Violation::Kind::UnreachableState: return "UnreachableState";
    case Violation::Kind::IncorrectLevel: return "IncorrectLevel";
    case Violation::Kind::UnsortedTransitions: return "UnsortedTransitions";
  }
  return "Unknown";
}

std::vector<Violation> validate(const Automaton& automaton) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const auto states = automaton.states();
  const auto transitions = automaton.transitions();

  if (automaton.find_state(automaton.root()) == nullptr) {
    out.push_back({Kind::MissingRoot, {automaton.root()},
                   "root " + std::to_string(automaton.root()) + " is not a state"});
  }
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].id == states[i - 1].id) {
      out.push_back({Kind::DuplicateState, {states[i].id},
                     "state " + std::to_string(states[i].id) + " listed twice"});
    }
  }

  std::unordered_set<std::size_t> seen_ids;
  std::map<std::pair<StateId, std::string_view>, std::size_t> by_source_label;
  for (const auto& t : transitions) {
    const std::string tag = "transition " + std::to_string(t.id);
    if (automaton.find_state(t.source) == nullptr || automaton.find_state(t.target) == nullptr) {
      out.push_back({Kind::DanglingTransition, {t.id}, tag + " references an unknown state"});
    }
    if (!seen_ids.insert(t.id).second) {
      out.push_back({Kind::DuplicateTransitionId, {t.id}, tag + " id reused"});
    }
    if (!is_valid_symbol(t.label)) {
      out.push_back({Kind::InvalidSymbol, {t.id}, tag + " has label '" + t.label + "'"});
    }
    auto [it, inserted] = by_source_label.emplace(std::pair{t.source, std::string_view(t.label)}, t.id);
    if (!inserted) {
      out.push_back({Kind::NondeterministicTransition, {it->second, t.id},
                     "transitions " + std::to_string(it->second) + " and " + std::to_string(t.id) +
                         " share source " + std::to_string(t.source) + " and label '" + t.label +
                         "'"});
    }
  }

  const auto depth = bfs_depths(automaton);
  for (const auto& s : states) {
    if (!depth.contains(s.id)) {
      out.push_back({Kind::UnreachableState, {s.id},
                     "state " + std::to_string(s.id) + " is unreachable from the root"});
    }
  }
  for (const auto& t : transitions) {
    auto it = depth.find(t.source);
    if (it != depth.end() && it->second != t.level) {
      out.push_back({Kind::IncorrectLevel, {t.id},
                     "transition " + std::to_string(t.id) + " has level " +
                         std::to_string(t.level) + ", expected " + std::to_string(it->second)});
    }
  }
  for (std::size_t i = 1; i < transitions.size(); ++i) {
    if (transitions[i].level < transitions[i - 1].level) {
      out.push_back({Kind::UnsortedTransitions, {transitions[i - 1].id, transitions[i].id},
                     "transition list is not sorted by level"});
      break;
    }
  }
  return out;
}

Automaton compute_levels(const Automaton& automaton) {
  const auto depth = bfs_depths(automaton);
  for (const auto& s : automaton.states()) {
    if (!depth.contains(s.id)) {
      throw StructuralError("state " + std::to_string(s.id) + " is unreachable from the root");
    }
  }
  std::vector<Transition> transitions(automaton.transitions().begin(), automaton.transitions().end());
  for (auto& t : transitions) {
    auto it = depth.find(t.source);
    if (it == depth.end()) {
      throw StructuralError("transition " + std::to_string(t.id) + " leaves unknown state " +
                            std::to_string(t.source));
    }
    t.level = it->second;
  }
  std::stable_sort(transitions.begin(), transitions.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.level, a.id) < std::tie(b.level, b.id);
  });
  return Automaton(automaton.root(), std::vector<State>(automaton.states().begin(), automaton.states().end()),
                   std::move(transitions));
}

namespace {

class PathWalker {
 public:
  PathWalker(const Automaton& automaton, const PathOptions& options)
      : automaton_(automaton), options_(options) {}

  std::vector<Path> run() {
    if (automaton_.find_state(automaton_.root()) == nullptr) return {};
    on_path_.insert(automaton_.root());
    visit(automaton_.root());
    return std::move(paths_);
  }

 private:
  std::vector<std::size_t> usable_out(StateId s) const {
    std::vector<std::size_t> out;
    for (std::size_t t : automaton_.outgoing(s)) {
      const auto& tr = automaton_.transitions()[t];
      if (!options_.include_sinks && (automaton_.is_sink(tr.target) || automaton_.is_sink(tr.source))) continue;
      out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [this](std::size_t a, std::size_t b) {
      return automaton_.transitions()[a].id < automaton_.transitions()[b].id;
    });
    return out;
  }

  void emit(bool truncated) {
    if (!current_.empty()) paths_.push_back(Path{current_, truncated});
  }

  void visit(StateId s) {
    const auto out = usable_out(s);
    const State* state = automaton_.find_state(s);
    const bool terminal = out.empty() || (state != nullptr && state->final_count > 0);
    if (terminal) emit(false);
    if (out.empty()) return;
    if (current_.size() >= options_.max_length) {
      if (!terminal) emit(true);
      return;
    }
    bool cut = false;
    for (std::size_t t : out) {
      StateId next = automaton_.transitions()[t].target;
      if (on_path_.contains(next)) {
        if (!cut && !terminal) emit(true);
        cut = true;
        continue;
      }
      current_.push_back(t);
      on_path_.insert(next);
      visit(next);
      on_path_.erase(next);
      current_.pop_back();
    }
  }

  const Automaton& automaton_;
  const PathOptions& options_;
  std::vector<std::size_t> current_;
  std::unordered_set<StateId> on_path_;
  std::vector<Path> paths_;
};

}  // namespace

std::vector<Path> enumerate_paths(const Automaton& automaton, const PathOptions& options) {
  return PathWalker(automaton, options).run();
}

std::vector<StateId> path_nodes(const Automaton& automaton, const Path& path) {
  std::vector<StateId> nodes{automaton.root()};
  for (std::size_t t : path.transitions) nodes.push_back(automaton.transitions()[t].target);
  return nodes;
}

Sequence path_labels(const Automaton& automaton, const Path& path) {
  Sequence out;
  out.reserve(path.transitions.size());
  for (std::size_t t : path.transitions) out.push_back(automaton.transitions()[t].label);
  return out;
}

}  // namespace pdfalign
