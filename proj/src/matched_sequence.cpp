#include "pdfalign/alignment.hpp"
#include "pdfalign/error.hpp"

namespace pdfalign {

namespace {

const Transition& step_transition(const AlignmentStep& step, const Automaton& automaton) {
  if (!step.transition || *step.transition >= automaton.transition_count()) {
    throw StructuralError("alignment step references an unknown transition");
  }
  return automaton.transitions()[*step.transition];
}

const Symbol& step_symbol(const AlignmentStep& step, const Sequence& sequence) {
  if (!step.symbol_index || *step.symbol_index >= sequence.size()) {
    throw StructuralError("alignment step references a symbol outside the sequence");
  }
  return sequence[*step.symbol_index];
}

}  // namespace

bool MatchedSequence::same_walk(const MatchedSequence& other) const {
  if (nodes != other.nodes || edges.size() != other.edges.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& a = edges[i];
    const auto& b = other.edges[i];
    if (a.source != b.source || a.target != b.target || a.label != b.label) return false;
  }
  return true;
}

MatchedSequence fix_matched_sequence(const Alignment& alignment, const Automaton& automaton,
                                     const Sequence& sequence) {
  using Kind = AlignmentStep::Kind;
  const auto& steps = alignment.steps;
  StateId current = automaton.root();
  MatchedSequence out;
  out.nodes.push_back(current);

  auto push = [&](MatchedEdge edge) {
    current = edge.target;
    out.nodes.push_back(edge.target);
    out.edges.push_back(std::move(edge));
  };
  auto chained = [&](const Transition& t) {
    if (t.source != current) {
      throw StructuralError("alignment breaks at transition " + std::to_string(t.id) + ": walk is at state " +
                            std::to_string(current));
    }
  };

  for (std::size_t i = 0; i < steps.size();) {
    const AlignmentStep& step = steps[i];
    switch (step.kind) {
      case Kind::Matched: {
        const Transition& t = step_transition(step, automaton);
        chained(t);
        if (t.label != step_symbol(step, sequence)) {
          throw StructuralError("matched step pairs label '" + t.label + "' with a different symbol");
        }
        push({t.source, t.target, t.label, MatchedEdge::Origin::Matched, {*step.transition}});
        ++i;
        break;
      }
      case Kind::Added: {
        if (step.state != current) {
          throw StructuralError("symbol added at state " + std::to_string(step.state) +
                                " while the walk is at state " + std::to_string(current));
        }
        push({current, current, step_symbol(step, sequence), MatchedEdge::Origin::Inserted, {}});
        ++i;
        break;
      }
      case Kind::Skipped: {
        const StateId start = current;
        std::vector<std::size_t> run;
        std::size_t k = i;
        StateId at = current;
        for (; k < steps.size() && steps[k].kind == Kind::Skipped; ++k) {
          const Transition& t = step_transition(steps[k], automaton);
          if (t.source != at) {
            throw StructuralError("alignment breaks at transition " + std::to_string(t.id));
          }
          run.push_back(*steps[k].transition);
          at = t.target;
        }
        if (k < steps.size() && steps[k].kind == Kind::Added && steps[k].state == at) {
          push({start, at, step_symbol(steps[k], sequence), MatchedEdge::Origin::Fused, std::move(run)});
          i = k + 1;
        } else {
          for (std::size_t t_index : run) {
            const Transition& t = automaton.transitions()[t_index];
            push({t.source, t.target, t.label, MatchedEdge::Origin::Restored, {t_index}});
          }
          i = k;
        }
        break;
      }
    }
  }
  return out;
}

MatchedSequence recovered_path(const MatchedSequence& matched, const Automaton& automaton) {
  MatchedSequence out;
  out.nodes.push_back(matched.nodes.empty() ? automaton.root() : matched.nodes.front());
  for (const auto& edge : matched.edges) {
    for (std::size_t t_index : edge.route) {
      const Transition& t = automaton.transitions()[t_index];
      out.nodes.push_back(t.target);
      out.edges.push_back({t.source, t.target, t.label, MatchedEdge::Origin::Matched, {t_index}});
    }
  }
  return out;
}

}  // namespace pdfalign
