#include <charconv>
#include <fstream>
#include <sstream>

#include "pdfalign/error.hpp"
#include "pdfalign/io.hpp"

namespace pdfalign {

void write_model(const Automaton& automaton, std::ostream& out) {
  out << "pdfa-model " << kModelFormatVersion << '\n';
  out << "root " << automaton.root() << '\n';
  out << "states " << automaton.state_count() << '\n';
  for (const auto& s : automaton.states()) {
    out << "state " << s.id << ' ' << s.total << ' ' << s.final_count << ' ' << (s.sink ? 1 : 0) << '\n';
  }
  out << "transitions " << automaton.transition_count() << '\n';
  for (const auto& t : automaton.transitions()) {
    out << "transition " << t.id << ' ' << t.source << ' ' << t.target << ' ' << t.label << ' ' << t.count
        << ' ' << t.level << '\n';
  }
  if (!out) throw std::runtime_error("failed to write model");
}

void write_model(const Automaton& automaton, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_model(automaton, out);
}

std::string format_model(const Automaton& automaton) {
  std::ostringstream out;
  write_model(automaton, out);
  return out.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line split on whitespace; the first token must equal `keyword`.
  std::vector<std::string> expect(std::string_view keyword, std::size_t fields) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError("unexpected end of model, wanted '" + std::string(keyword) + "'", line_ + 1);
    ++line_;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(std::move(tok));
    if (tokens.empty() || tokens[0] != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "'", line_);
    }
    if (tokens.size() != fields + 1) {
      throw ParseError("'" + std::string(keyword) + "' takes " + std::to_string(fields) + " fields", line_);
    }
    tokens.erase(tokens.begin());
    return tokens;
  }

  template <class T>
  T number(const std::string& token) const {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("invalid number '" + token + "'", line_);
    }
    return value;
  }

  void expect_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing content", line_);
    }
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

Automaton read_model(std::istream& in) {
  LineReader r(in);
  const auto version = r.expect("pdfa-model", 1);
  if (r.number<int>(version[0]) != kModelFormatVersion) {
    throw ParseError("unsupported model format version " + version[0], r.line());
  }
  const auto root = r.number<StateId>(r.expect("root", 1)[0]);

  const auto state_count = r.number<std::size_t>(r.expect("states", 1)[0]);
  std::vector<State> states;
  for (std::size_t i = 0; i < state_count; ++i) {
    auto f = r.expect("state", 4);
    const auto sink = r.number<int>(f[3]);
    if (sink != 0 && sink != 1) throw ParseError("sink flag must be 0 or 1", r.line());
    states.push_back({r.number<StateId>(f[0]), r.number<std::uint64_t>(f[1]), r.number<std::uint64_t>(f[2]),
                      sink == 1});
  }

  const auto transition_count = r.number<std::size_t>(r.expect("transitions", 1)[0]);
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < transition_count; ++i) {
    auto f = r.expect("transition", 6);
    transitions.push_back({r.number<std::size_t>(f[0]), r.number<StateId>(f[1]), r.number<StateId>(f[2]),
                           f[3], r.number<std::uint64_t>(f[4]), r.number<std::size_t>(f[5])});
  }
  r.expect_end();

  Automaton automaton(root, std::move(states), std::move(transitions));
  if (auto violations = validate(automaton); !violations.empty()) {
    std::string msg = "invalid model:";
    for (const auto& v : violations) msg += " " + std::string(to_string(v.kind)) + " (" + v.detail + ")";
    throw InputError(msg);
  }
  return automaton;
}

Automaton read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path.string());
  try {
    return read_model(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

}  // namespace pdfalign
