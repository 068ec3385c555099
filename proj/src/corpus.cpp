#include "pdfalign/corpus.hpp"

#include <algorithm>

namespace pdfalign {

std::set<Symbol> TraceCorpus::alphabet() const {
  std::set<Symbol> out;
  for (const auto& seq : sequences) out.insert(seq.begin(), seq.end());
  return out;
}

TraceCorpus TraceCorpus::reversed() const {
  TraceCorpus out{sequences};
  for (auto& seq : out.sequences) std::reverse(seq.begin(), seq.end());
  return out;
}

}  // namespace pdfalign
