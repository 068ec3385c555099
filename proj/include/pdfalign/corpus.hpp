#pragma once

#include <set>
#include <vector>

#include "pdfalign/automaton.hpp"

namespace pdfalign {

/// A multiset of traces. Position in `sequences` is the trace's id.
struct TraceCorpus {
  std::vector<Sequence> sequences;

  std::set<Symbol> alphabet() const;
  std::size_t size() const noexcept { return sequences.size(); }
  bool empty() const noexcept { return sequences.empty(); }

  TraceCorpus reversed() const;

  friend bool operator==(const TraceCorpus&, const TraceCorpus&) = default;
};

}  // namespace pdfalign
