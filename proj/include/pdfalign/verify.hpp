#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdfalign/alignment.hpp"
#include "pdfalign/automaton.hpp"

namespace pdfalign {

enum class PerturbationKind { Remove, Add, Modify, Swap };

struct TestCase {
  PerturbationKind kind = PerturbationKind::Remove;
  int arity = 1;
  std::uint64_t rng_seed = 0;

  /// Throws InputError for arity outside {1, 2} and for SWAP-2.
  void validate() const;
  /// "REMOVE-1", "SWAP-1", ...
  std::string name() const;
  /// Accepts "remove1", "REMOVE-1", "swap1", ...
  static TestCase parse(std::string_view text, std::uint64_t seed = 0);
  static std::vector<TestCase> all(std::uint64_t seed = 0);

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

struct Perturbation {
  Sequence sequence;
  MatchedSequence expected;  // the unperturbed path with its state ids
};

/// The path as a matched sequence of its own transitions.
MatchedSequence expected_walk(const Automaton& automaton, const Path& path);

/// Every perturbation of `path` for `test_case`. The last symbol of a path is
/// never removed or modified. ADD draws from `alphabet`: all k-tuples per
/// insertion slot when the alphabet has at most 8 symbols, otherwise one
/// seeded k-tuple per slot. MODIFY draws one seeded replacement per choice of
/// positions, never the original symbol.
std::vector<Perturbation> generate_perturbations(const Automaton& automaton, const Path& path,
                                                 const TestCase& test_case,
                                                 const std::set<Symbol>& alphabet);

/// Aligns `perturbed` and checks that the repaired walk retraces `expected`,
/// state ids and labels included.
bool check_recovery(const Automaton& automaton, const Sequence& perturbed, const MatchedSequence& expected,
                    const AlignOptions& options = {});

struct CaseResult {
  TestCase test_case;
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;  // correct / total, 0 when there were no tests
};

struct VerificationResult {
  std::vector<CaseResult> cases;
};

struct VerifyOptions {
  AlignOptions align;
  std::size_t threads = 0;
};

VerificationResult run_verification(const Automaton& automaton, const std::vector<TestCase>& cases,
                                    const VerifyOptions& options = {});

}  // namespace pdfalign
