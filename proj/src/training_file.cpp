#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pdfalign/error.hpp"
#include "pdfalign/io.hpp"

namespace pdfalign {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

std::size_t parse_count(const std::string& token, std::string_view what, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + token + "'", line);
  }
  return value;
}

}  // namespace

TraceCorpus read_training_file(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = split(line);
  }
  if (header.empty()) throw ParseError("missing header", line_no + 1);
  if (header.size() != 2) throw ParseError("header must be 'count alphabet-size'", line_no);
  const std::size_t count = parse_count(header[0], "sequence count", line_no);
  const std::size_t alphabet_size = parse_count(header[1], "alphabet size", line_no);

  TraceCorpus corpus;
  corpus.sequences.reserve(count);
  std::set<Symbol> alphabet;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split(line);
    if (corpus.size() == count) {
      if (!tokens.empty()) throw ParseError("more sequences than the header count " + std::to_string(count), line_no);
      continue;
    }
    if (tokens.size() < 2) throw ParseError("expected 'label length symbols...'", line_no);
    const std::size_t length = parse_count(tokens[1], "length", line_no);
    if (tokens.size() - 2 != length) {
      throw ParseError("length field says " + std::to_string(length) + " but the line has " +
                           std::to_string(tokens.size() - 2) + " symbols",
                       line_no);
    }
    Sequence seq(std::make_move_iterator(tokens.begin() + 2), std::make_move_iterator(tokens.end()));
    alphabet.insert(seq.begin(), seq.end());
    if (alphabet.size() > alphabet_size) {
      throw ParseError("more distinct symbols than the header alphabet size " + std::to_string(alphabet_size),
                       line_no);
    }
    corpus.sequences.push_back(std::move(seq));
  }
  if (corpus.size() != count) {
    throw ParseError("header announces " + std::to_string(count) + " sequences, found " +
                         std::to_string(corpus.size()),
                     line_no + 1);
  }
  return corpus;
}

TraceCorpus read_training_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open training file " + path.string());
  try {
    return read_training_file(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

TrainingWriteSummary write_training_file(const TraceCorpus& corpus, std::ostream& out) {
  TrainingWriteSummary summary;
  std::set<Symbol> alphabet;
  for (const auto& seq : corpus.sequences) {
    if (seq.empty()) {
      ++summary.dropped;
      continue;
    }
    for (const auto& s : seq) {
      if (!is_valid_symbol(s)) throw InputError("cannot write invalid symbol '" + s + "'");
      alphabet.insert(s);
    }
    ++summary.written;
  }
  out << summary.written << ' ' << alphabet.size() << '\n';
  for (const auto& seq : corpus.sequences) {
    if (seq.empty()) continue;
    out << "1 " << seq.size();
    for (const auto& s : seq) out << ' ' << s;
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed to write training file");
  return summary;
}

TrainingWriteSummary write_training_file(const TraceCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return write_training_file(corpus, out);
}

}  // namespace pdfalign
