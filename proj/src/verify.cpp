#include "pdfalign/verify.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "parallel.hpp"
#include "pdfalign/error.hpp"

namespace pdfalign {

namespace {

constexpr std::size_t kExhaustiveAlphabet = 8;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Plain modulo keeps draws identical across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// All k-tuples over `symbols`, first position varying slowest.
std::vector<Sequence> tuples(const std::vector<Symbol>& symbols, std::size_t k) {
  std::vector<Sequence> out{Sequence{}};
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<Sequence> next;
    for (const auto& prefix : out) {
      for (const auto& s : symbols) {
        next.push_back(prefix);
        next.back().push_back(s);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

void TestCase::validate() const {
  if (arity != 1 && arity != 2) throw InputError("test case arity must be 1 or 2");
  if (kind == PerturbationKind::Swap && arity != 1) throw InputError("SWAP only exists with arity 1");
}

std::string TestCase::name() const {
  std::string base;
  switch (kind) {
    case PerturbationKind::Remove: base = "REMOVE"; break;
    case PerturbationKind::Add: base = "ADD"; break;
    case PerturbationKind::Modify: base = "MODIFY"; break;
    case PerturbationKind::Swap: base = "SWAP"; break;
  }
  return base + "-" + std::to_string(arity);
}

TestCase TestCase::parse(std::string_view text, std::uint64_t seed) {
  std::string key;
  for (char c : text) {
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key.empty() || (key.back() != '1' && key.back() != '2')) {
    throw InputError("unknown test case '" + std::string(text) + "'");
  }
  TestCase tc;
  tc.arity = key.back() - '0';
  tc.rng_seed = seed;
  key.pop_back();
  if (key == "remove") tc.kind = PerturbationKind::Remove;
  else if (key == "add") tc.kind = PerturbationKind::Add;
  else if (key == "modify") tc.kind = PerturbationKind::Modify;
  else if (key == "swap") tc.kind = PerturbationKind::Swap;
  else throw InputError("unknown test case '" + std::string(text) + "'");
  tc.validate();
  return tc;
}

std::vector<TestCase> TestCase::all(std::uint64_t seed) {
  return {{PerturbationKind::Remove, 1, seed}, {PerturbationKind::Remove, 2, seed},
          {PerturbationKind::Add, 1, seed},    {PerturbationKind::Add, 2, seed},
          {PerturbationKind::Modify, 1, seed}, {PerturbationKind::Modify, 2, seed},
          {PerturbationKind::Swap, 1, seed}};
}

MatchedSequence expected_walk(const Automaton& automaton, const Path& path) {
  MatchedSequence out;
  out.nodes = path_nodes(automaton, path);
  for (std::size_t t : path.transitions) {
    const Transition& tr = automaton.transitions()[t];
    out.edges.push_back({tr.source, tr.target, tr.label, MatchedEdge::Origin::Matched, {t}});
  }
  return out;
}

std::vector<Perturbation> generate_perturbations(const Automaton& automaton, const Path& path,
                                                 const TestCase& test_case,
                                                 const std::set<Symbol>& alphabet) {
  test_case.validate();
  const Sequence labels = path_labels(automaton, path);
  const MatchedSequence expected = expected_walk(automaton, path);
  const std::size_t len = labels.size();
  const auto k = static_cast<std::size_t>(test_case.arity);
  const std::vector<Symbol> symbols(alphabet.begin(), alphabet.end());
  std::mt19937_64 rng(test_case.rng_seed);

  std::vector<Perturbation> out;
  auto emit = [&](Sequence seq) { out.push_back({std::move(seq), expected}); };
  const std::size_t editable = len == 0 ? 0 : len - 1;  // last symbol stays

  switch (test_case.kind) {
    case PerturbationKind::Remove:
      for (const auto& pick : combinations(editable, k)) {
        Sequence seq;
        for (std::size_t i = 0; i < len; ++i) {
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) seq.push_back(labels[i]);
        }
        emit(std::move(seq));
      }
      break;
    case PerturbationKind::Add: {
      if (len == 0 || symbols.empty()) break;
      const bool exhaustive = symbols.size() <= kExhaustiveAlphabet;
      const auto all_tuples = exhaustive ? tuples(symbols, k) : std::vector<Sequence>{};
      for (std::size_t slot = 0; slot <= len; ++slot) {
        std::vector<Sequence> inserts = all_tuples;
        if (!exhaustive) {
          Sequence one;
          for (std::size_t d = 0; d < k; ++d) one.push_back(symbols[draw(rng, symbols.size())]);
          inserts.push_back(std::move(one));
        }
        for (const auto& ins : inserts) {
          Sequence seq(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(slot));
          seq.insert(seq.end(), ins.begin(), ins.end());
          seq.insert(seq.end(), labels.begin() + static_cast<std::ptrdiff_t>(slot), labels.end());
          emit(std::move(seq));
        }
      }
      break;
    }
    case PerturbationKind::Modify:
      for (const auto& pick : combinations(editable, k)) {
        Sequence seq = labels;
        bool possible = true;
        for (std::size_t pos : pick) {
          std::vector<Symbol> options;
          std::copy_if(symbols.begin(), symbols.end(), std::back_inserter(options),
                       [&](const Symbol& s) { return s != labels[pos]; });
          if (options.empty()) {
            possible = false;
            break;
          }
          seq[pos] = options[draw(rng, options.size())];
        }
        if (possible) emit(std::move(seq));
      }
      break;
    case PerturbationKind::Swap:
      for (std::size_t i = 0; i + 1 < len; ++i) {
        if (labels[i] == labels[i + 1]) continue;
        Sequence seq = labels;
        std::swap(seq[i], seq[i + 1]);
        emit(std::move(seq));
      }
      break;
  }
  return out;
}

bool check_recovery(const Automaton& automaton, const Sequence& perturbed, const MatchedSequence& expected,
                    const AlignOptions& options) {
  const AlignResult r = align(automaton, perturbed, options);
  if (!r.ok()) return false;
  return recovered_path(r.matched, automaton).same_walk(expected);
}

VerificationResult run_verification(const Automaton& automaton, const std::vector<TestCase>& cases,
                                    const VerifyOptions& options) {
  VerificationResult result;
  if (cases.empty()) return result;

  PathOptions path_options;
  path_options.include_sinks = options.align.include_sinks;
  std::vector<Path> paths = enumerate_paths(automaton, path_options);
  std::erase_if(paths, [](const Path& p) { return p.truncated; });
  const auto alphabet = automaton.alphabet();

  for (const auto& tc : cases) {
    tc.validate();
    std::vector<Perturbation> work;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      TestCase per_path = tc;
      per_path.rng_seed = mix_seed(tc.rng_seed, p);
      auto batch = generate_perturbations(automaton, paths[p], per_path, alphabet);
      std::move(batch.begin(), batch.end(), std::back_inserter(work));
    }
    std::vector<char> ok(work.size(), 0);
    detail::parallel_for(work.size(), options.threads, [&](std::size_t i) {
      ok[i] = check_recovery(automaton, work[i].sequence, work[i].expected, options.align) ? 1 : 0;
    });
    CaseResult cr;
    cr.test_case = tc;
    cr.total = work.size();
    cr.correct = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    cr.accuracy = cr.total == 0 ? 0.0 : static_cast<double>(cr.correct) / static_cast<double>(cr.total);
    result.cases.push_back(cr);
  }
  return result;
}

}  // namespace pdfalign
