#include "pdfalign/reports.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace pdfalign {

namespace {

using nlohmann::json;

std::string fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

json step_record(const AlignmentStep& step, const Automaton& automaton, const Sequence& sequence) {
  json rec;
  rec["kind"] = std::string(to_string(step.kind));
  if (step.transition) {
    const Transition& t = automaton.transitions()[*step.transition];
    rec["transition"] = t.id;
    rec["source"] = t.source;
    rec["target"] = t.target;
    rec["label"] = t.label;
  } else {
    rec["state"] = step.state;
  }
  if (step.symbol_index) {
    rec["symbol_index"] = *step.symbol_index;
    rec["symbol"] = sequence.at(*step.symbol_index);
  }
  return rec;
}

}  // namespace

void write_alignment_report(std::ostream& out, const Automaton& automaton, std::span<const Sequence> sequences,
                            std::span<const AlignResult> results) {
  out << json{{"format", "pdfalign-alignment-report"}, {"version", kReportFormatVersion}}.dump() << '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    const AlignResult& r = results[i];
    json rec;
    rec["id"] = i;
    rec["raw_score"] = r.ok() ? json(r.alignment.raw_score) : json(nullptr);
    rec["normalized_score"] = r.ok() ? r.normalized : 0.0;
    rec["error"] = r.error ? json(*r.error) : json(nullptr);
    json steps = json::array();
    if (r.ok()) {
      for (const auto& step : r.alignment.steps) steps.push_back(step_record(step, automaton, sequences[i]));
    }
    rec["steps"] = std::move(steps);
    out << rec.dump() << '\n';
  }
}

void write_iteration_table(std::ostream& out, const IterationReport& report) {
  out << "# pdfalign-iteration-table " << kReportFormatVersion << '\n';
  out << "iteration  avg_norm_score  states  corpus_size\n";
  for (const auto& r : report.records) {
    out << pad_left(std::to_string(r.iteration), 9) << "  " << pad_left(fixed(r.average_score), 14) << "  "
        << pad_left(std::to_string(r.state_count), 6) << "  " << pad_left(std::to_string(r.corpus_size), 11)
        << '\n';
  }
  out << "best iteration: " << report.best_iteration << '\n';
  out << "converged: " << (report.converged ? "yes" : "no") << '\n';
  if (report.aborted) out << "aborted: " << *report.aborted << '\n';
}

void write_iteration_records(std::ostream& out, const IterationReport& report) {
  out << json{{"format", "pdfalign-iteration-report"}, {"version", kReportFormatVersion}}.dump() << '\n';
  for (const auto& r : report.records) {
    out << json{{"iteration", r.iteration},
                {"average_score", r.average_score},
                {"state_count", r.state_count},
                {"corpus_size", r.corpus_size}}
               .dump()
        << '\n';
  }
  out << json{{"best_iteration", report.best_iteration},
              {"converged", report.converged},
              {"aborted", report.aborted ? json(*report.aborted) : json(nullptr)}}
             .dump()
      << '\n';
}

void write_verification_table(std::ostream& out, const VerificationResult& result) {
  out << "# pdfalign-verification-table " << kReportFormatVersion << '\n';
  out << "test case  number of tests  correct  accuracy\n";
  for (const auto& c : result.cases) {
    out << pad_right(c.test_case.name(), 9) << "  " << pad_left(std::to_string(c.total), 15) << "  "
        << pad_left(std::to_string(c.correct), 7) << "  " << pad_left(fixed(c.accuracy), 8) << '\n';
  }
}

void write_verification_records(std::ostream& out, const VerificationResult& result) {
  out << json{{"format", "pdfalign-verification-report"}, {"version", kReportFormatVersion}}.dump() << '\n';
  for (const auto& c : result.cases) {
    out << json{{"test_case", c.test_case.name()},
                {"seed", c.test_case.rng_seed},
                {"total", c.total},
                {"correct", c.correct},
                {"accuracy", c.accuracy}}
               .dump()
        << '\n';
  }
}

}  // namespace pdfalign
