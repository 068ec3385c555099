#pragma once

#include <iosfwd>
#include <span>

#include "pdfalign/alignment.hpp"
#include "pdfalign/iterate.hpp"
#include "pdfalign/verify.hpp"

namespace pdfalign {

// Every report starts with a format/version line. Record streams are JSON
// lines; tables are whitespace-aligned text.

inline constexpr int kReportFormatVersion = 1;

/// One JSON record per sequence: id, raw and normalized score, error, steps.
void write_alignment_report(std::ostream& out, const Automaton& automaton, std::span<const Sequence> sequences,
                            std::span<const AlignResult> results);

void write_iteration_table(std::ostream& out, const IterationReport& report);
void write_iteration_records(std::ostream& out, const IterationReport& report);

void write_verification_table(std::ostream& out, const VerificationResult& result);
void write_verification_records(std::ostream& out, const VerificationResult& result);

}  // namespace pdfalign
