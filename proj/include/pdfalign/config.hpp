#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pdfalign/iterate.hpp"
#include "pdfalign/verify.hpp"

namespace pdfalign {

/// Run configuration. `iterate` carries the learner, scoring and alignment
/// settings shared by every command.
struct Config {
  IterateParams iterate;
  std::uint64_t verify_seed = 0;
  std::vector<TestCase> verify_cases = TestCase::all();
  std::filesystem::path output_dir = ".";

  const ScoringParams& scoring() const { return iterate.align.scoring; }
  const LearnerParams& learner() const { return iterate.learner; }
  const AlignOptions& align() const { return iterate.align; }

  /// Throws InputError when any component invariant fails.
  void validate() const;
};

/// Parses a JSON config. Missing keys keep defaults; unknown keys and
/// mistyped values are InputErrors.
///
///   { "scoring":   {"match": 4, "mismatch": -4, "gap": -2},
///     "alignment": {"unroll_depth": 0, "include_sinks": false},
///     "learner":   {"alpha": 0.05, "sink_count": 5, "use_sinks": true, "reverse": false},
///     "iterate":   {"max_iterations": 16, "convergence_window": 3,
///                   "convergence_tolerance": 1e-9, "objective_check": "root"},
///     "verify":    {"seed": 0, "cases": ["remove1", "swap1"]},
///     "output_dir": ".", "threads": 0 }
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

}  // namespace pdfalign
