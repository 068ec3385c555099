#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "pdfalign/io.hpp"

namespace pdfalign {

namespace {

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_dot(const Automaton& automaton, const DotOptions& options) {
  std::unordered_map<StateId, std::size_t> level{{automaton.root(), 0}};
  for (const auto& t : automaton.transitions()) {
    auto [it, inserted] = level.emplace(t.target, t.level + 1);
    if (!inserted) it->second = std::min(it->second, t.level + 1);
  }
  level[automaton.root()] = 0;

  auto hidden = [&](StateId s) { return options.hide_sinks && automaton.is_sink(s); };

  std::ostringstream out;
  out << "digraph pdfa {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (const auto& s : automaton.states()) {
    if (hidden(s.id)) continue;
    auto it = level.find(s.id);
    const std::string lvl = it == level.end() ? "?" : std::to_string(it->second);
    out << "  " << s.id << " [label=" << dot_quote(std::to_string(s.id) + " (" + lvl + ")");
    if (s.final_count > 0) out << ", shape=doublecircle";
    if (s.sink) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& t : automaton.transitions()) {
    if (hidden(t.source) || hidden(t.target)) continue;
    out << "  " << t.source << " -> " << t.target << " [label="
        << dot_quote(t.label + " (" + std::to_string(t.count) + ")");
    if (options.highlight && options.highlight(t)) out << ", color=red, fontcolor=red";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pdfalign
