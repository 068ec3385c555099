#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "pdfalign/automaton.hpp"
#include "pdfalign/corpus.hpp"

namespace pdfalign {

// Abbadingo-style training files: a "count alphabet-size" header followed by
// one "label length s1 ... sN" line per trace. Labels are read but unused.

TraceCorpus read_training_file(std::istream& in);
TraceCorpus read_training_file(const std::filesystem::path& path);

struct TrainingWriteSummary {
  std::size_t written = 0;
  std::size_t dropped = 0;  // empty traces are not written
};

TrainingWriteSummary write_training_file(const TraceCorpus& corpus, std::ostream& out);
TrainingWriteSummary write_training_file(const TraceCorpus& corpus, const std::filesystem::path& path);

// Native model files. First line is "pdfa-model 1".

inline constexpr int kModelFormatVersion = 1;

void write_model(const Automaton& automaton, std::ostream& out);
void write_model(const Automaton& automaton, const std::filesystem::path& path);
std::string format_model(const Automaton& automaton);

/// Parses and validates a model; any violation is a ParseError/InputError.
Automaton read_model(std::istream& in);
Automaton read_model(const std::filesystem::path& path);

struct DotOptions {
  bool hide_sinks = false;
  std::function<bool(const Transition&)> highlight;  // matching edges drawn red
};

/// Graphviz text. Nodes show "id (level)", edges "label (count)".
std::string export_dot(const Automaton& automaton, const DotOptions& options = {});

}  // namespace pdfalign
