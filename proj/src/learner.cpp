#include "pdfalign/learner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "pdfalign/error.hpp"

namespace pdfalign {

void LearnerParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

bool alergia_compatible(std::uint64_t n1, std::uint64_t f1, std::uint64_t n2, std::uint64_t f2,
                        double alpha) {
  if (n1 == 0 || n2 == 0) throw InputError("alergia test needs non-zero totals");
  if (f1 > n1 || f2 > n2) throw InputError("alergia test frequency exceeds its total");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alergia alpha must lie in (0, 1)");
  const double diff = std::abs(static_cast<double>(f1) / static_cast<double>(n1) -
                               static_cast<double>(f2) / static_cast<double>(n2));
  const double bound = std::sqrt(0.5 * std::log(2.0 / alpha)) *
                       (1.0 / std::sqrt(static_cast<double>(n1)) + 1.0 / std::sqrt(static_cast<double>(n2)));
  return diff <= bound;
}

namespace {

struct Edge {
  StateId target;
  std::uint64_t count;
};

struct Node {
  std::uint64_t total = 0;
  std::uint64_t final_count = 0;
  std::map<Symbol, Edge> out;
  bool sink = false;
};

// Mutable working copy used while merging. Dead states are erased.
class MergeGraph {
 public:
  static MergeGraph from_corpus(const TraceCorpus& corpus) {
    MergeGraph g;
    g.root_ = 0;
    g.nodes_[0] = Node{};
    StateId next = 1;
    for (const auto& seq : corpus.sequences) {
      StateId cur = g.root_;
      g.nodes_[cur].total += 1;
      for (const auto& sym : seq) {
        if (!is_valid_symbol(sym)) throw InputError("invalid symbol '" + sym + "'");
        auto& out = g.nodes_[cur].out;
        auto it = out.find(sym);
        if (it == out.end()) {
          it = out.emplace(sym, Edge{next, 0}).first;
          g.nodes_[next] = Node{};
          ++next;
        }
        it->second.count += 1;
        cur = it->second.target;
        g.nodes_[cur].total += 1;
      }
      g.nodes_[cur].final_count += 1;
    }
    return g;
  }

  static MergeGraph from_automaton(const Automaton& a) {
    MergeGraph g;
    g.root_ = a.root();
    for (const auto& s : a.states()) g.nodes_[s.id] = Node{s.total, s.final_count, {}, s.sink};
    for (const auto& t : a.transitions()) {
      g.nodes_.at(t.source).out.emplace(t.label, Edge{t.target, t.count});
    }
    return g;
  }

  Node& node(StateId id) { return nodes_.at(id); }
  const Node& node(StateId id) const { return nodes_.at(id); }
  bool contains(StateId id) const { return nodes_.contains(id); }
  StateId root() const { return root_; }

  // States with an edge into `id`, one entry per edge.
  std::vector<std::pair<StateId, Symbol>> parents(StateId id) const {
    std::vector<std::pair<StateId, Symbol>> out;
    for (const auto& [sid, n] : nodes_) {
      for (const auto& [sym, e] : n.out) {
        if (e.target == id) out.emplace_back(sid, sym);
      }
    }
    return out;
  }

  // Ids in the tree hanging from `id`; nullopt if it is not a tree.
  std::optional<std::vector<StateId>> subtree(StateId id) const {
    std::vector<StateId> out{id};
    std::unordered_set<StateId> seen{id};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const auto& [sym, e] : node(out[i]).out) {
        if (!seen.insert(e.target).second) return std::nullopt;
        out.push_back(e.target);
      }
    }
    return out;
  }

  bool compatible(StateId red, StateId blue, double alpha) const {
    const Node& r = node(red);
    const Node& b = node(blue);
    if (!alergia_compatible(r.total, r.final_count, b.total, b.final_count, alpha)) return false;
    std::set<Symbol> symbols;
    for (const auto& [sym, e] : r.out) symbols.insert(sym);
    for (const auto& [sym, e] : b.out) symbols.insert(sym);
    for (const auto& sym : symbols) {
      auto ri = r.out.find(sym);
      auto bi = b.out.find(sym);
      const std::uint64_t rc = ri == r.out.end() ? 0 : ri->second.count;
      const std::uint64_t bc = bi == b.out.end() ? 0 : bi->second.count;
      if (!alergia_compatible(r.total, rc, b.total, bc, alpha)) return false;
    }
    for (const auto& [sym, be] : b.out) {
      auto ri = r.out.find(sym);
      if (ri != r.out.end() && !compatible(ri->second.target, be.target, alpha)) return false;
    }
    return true;
  }

  // Redirects the single edge into `blue` to `red`, then folds.
  void merge(StateId red, StateId blue) {
    const auto incoming = parents(blue);
    if (incoming.size() != 1) throw InternalError("merge target is not a subtree root");
    auto [parent, via] = incoming.front();
    node(parent).out.at(via).target = red;
    fold(red, blue);
  }

  void mark_sink_subtree(StateId id) {
    auto ids = subtree(id);
    if (!ids) throw InternalError("sink candidate is not a subtree root");
    for (StateId s : *ids) node(s).sink = true;
  }

  Automaton to_automaton() const {
    // Breadth-first numbering keeps transition ids level-ordered.
    std::vector<State> states;
    std::vector<Transition> transitions;
    std::deque<StateId> queue{root_};
    std::unordered_set<StateId> seen{root_};
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (const auto& [sym, e] : node(s).out) {
        transitions.push_back(Transition{transitions.size(), s, e.target, sym, e.count, 0});
        if (seen.insert(e.target).second) queue.push_back(e.target);
      }
    }
    for (const auto& [id, n] : nodes_) states.push_back(State{id, n.total, n.final_count, n.sink});
    return Automaton::build(root_, std::move(states), std::move(transitions));
  }

 private:
  void fold(StateId red, StateId blue) {
    if (red == blue) throw InternalError("fold of a state into itself");
    Node b = std::move(node(blue));
    nodes_.erase(blue);
    Node& r = node(red);
    r.total += b.total;
    r.final_count += b.final_count;
    r.sink = r.sink && b.sink;
    for (auto& [sym, be] : b.out) {
      auto ri = node(red).out.find(sym);
      if (ri == node(red).out.end()) {
        node(red).out.emplace(sym, be);
      } else {
        ri->second.count += be.count;
        fold(ri->second.target, be.target);
      }
    }
  }

  StateId root_ = 0;
  std::map<StateId, Node> nodes_;
};

}  // namespace

Automaton build_prefix_tree(const TraceCorpus& corpus) {
  if (corpus.empty()) throw InputError("cannot build a prefix tree from an empty corpus");
  return MergeGraph::from_corpus(corpus).to_automaton();
}

Automaton merge(const Automaton& automaton, StateId red, StateId blue) {
  if (red == blue) throw InputError("cannot merge state " + std::to_string(red) + " into itself");
  MergeGraph g = MergeGraph::from_automaton(automaton);
  if (!g.contains(red) || !g.contains(blue)) throw InputError("merge references an unknown state");
  if (blue == g.root()) throw InputError("the root cannot be merged away");
  if (g.parents(blue).size() != 1) {
    throw InputError("state " + std::to_string(blue) + " does not have exactly one parent");
  }
  auto subtree = g.subtree(blue);
  if (!subtree) throw InputError("state " + std::to_string(blue) + " does not root a tree");
  for (StateId s : *subtree) {
    if (s == red) throw InputError("red state lies inside the blue subtree");
    if (s != blue && g.parents(s).size() != 1) {
      throw InputError("subtree of state " + std::to_string(blue) + " is not a tree");
    }
  }
  g.merge(red, blue);
  return g.to_automaton();
}

Automaton learn(const TraceCorpus& input, const LearnerParams& params) {
  params.validate();
  if (input.empty()) throw InputError("cannot learn from an empty corpus");
  MergeGraph g = MergeGraph::from_corpus(params.reverse ? input.reversed() : input);

  std::vector<StateId> reds{g.root()};
  std::unordered_set<StateId> red_set{g.root()};

  for (;;) {
    // Highest-frequency blue state, ties by smallest id.
    std::optional<StateId> blue;
    for (StateId r : reds) {
      for (const auto& [sym, e] : g.node(r).out) {
        if (red_set.contains(e.target) || g.node(e.target).sink) continue;
        if (!blue || g.node(e.target).total > g.node(*blue).total ||
            (g.node(e.target).total == g.node(*blue).total && e.target < *blue)) {
          blue = e.target;
        }
      }
    }
    if (!blue) break;

    if (params.use_sinks && g.node(*blue).total < params.sink_count) {
      g.mark_sink_subtree(*blue);
      continue;
    }
    bool merged = false;
    for (StateId r : reds) {
      if (g.compatible(r, *blue, params.alpha)) {
        g.merge(r, *blue);
        merged = true;
        break;
      }
    }
    if (!merged) {
      reds.push_back(*blue);
      red_set.insert(*blue);
    }
  }
  return g.to_automaton();
}

}  // namespace pdfalign
