#include "pdfalign/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdfalign/config.hpp"
#include "pdfalign/error.hpp"
#include "pdfalign/io.hpp"
#include "pdfalign/iterate.hpp"
#include "pdfalign/learner.hpp"
#include "pdfalign/reports.hpp"
#include "pdfalign/verify.hpp"

namespace pdfalign {

namespace {

struct GlobalFlags {
  double match = 4.0;
  double mismatch = -4.0;
  double gap = -2.0;
  double alpha = 0.05;
  std::uint64_t sink_count = 5;
  std::size_t threads = 0;
  std::size_t unroll_depth = 0;
  std::string config;
};

struct GlobalOptions {
  CLI::Option* match;
  CLI::Option* mismatch;
  CLI::Option* gap;
  CLI::Option* alpha;
  CLI::Option* sink_count;
  CLI::Option* reverse;
  CLI::Option* no_sinks;
  CLI::Option* include_sinks;
  CLI::Option* threads;
  CLI::Option* unroll_depth;
  CLI::Option* config;
};

Config resolve_config(const GlobalFlags& flags, const GlobalOptions& opts) {
  Config cfg = opts.config->count() > 0 ? load_config(flags.config) : Config{};
  auto& sc = cfg.iterate.align.scoring;
  if (opts.match->count()) sc.match = flags.match;
  if (opts.mismatch->count()) sc.mismatch = flags.mismatch;
  if (opts.gap->count()) sc.gap = flags.gap;
  if (opts.alpha->count()) cfg.iterate.learner.alpha = flags.alpha;
  if (opts.sink_count->count()) cfg.iterate.learner.sink_count = flags.sink_count;
  if (opts.reverse->count()) cfg.iterate.learner.reverse = true;
  if (opts.no_sinks->count()) cfg.iterate.learner.use_sinks = false;
  if (opts.include_sinks->count()) cfg.iterate.align.include_sinks = true;
  if (opts.threads->count()) cfg.iterate.threads = flags.threads;
  if (opts.unroll_depth->count()) cfg.iterate.align.unroll_depth = flags.unroll_depth;
  cfg.validate();
  return cfg;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot open " + path + " for writing");
  write(file);
  if (!file) throw std::runtime_error("failed to write " + path);
}

TraceCorpus load_traces(const std::string& path, const Config& cfg) {
  TraceCorpus corpus = read_training_file(std::filesystem::path(path));
  return cfg.learner().reverse ? corpus.reversed() : corpus;
}

std::vector<TestCase> parse_cases(const std::string& list, std::uint64_t seed) {
  std::vector<TestCase> cases;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) cases.push_back(TestCase::parse(item, seed));
  }
  if (cases.empty()) throw InputError("--cases names no test case");
  return cases;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn PDFA models from traces, align traces to them and refine models iteratively.",
               "pdfalign"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags flags;
  GlobalOptions opts{};
  opts.match = app.add_option("--match", flags.match, "MATCH score (default 4)");
  opts.mismatch = app.add_option("--mismatch", flags.mismatch, "MISMATCH penalty, negative (default -4)");
  opts.gap = app.add_option("--gap", flags.gap, "GAP penalty, negative (default -2)");
  opts.alpha = app.add_option("--alpha", flags.alpha, "Alergia significance (default 0.05)");
  opts.sink_count = app.add_option("--sink-count", flags.sink_count, "sink frequency threshold (default 5)");
  opts.reverse = app.add_flag("--reverse", "learn and align on reversed traces");
  opts.no_sinks = app.add_flag("--no-sinks", "disable sink states while learning");
  opts.include_sinks = app.add_flag("--include-sinks", "align against sink transitions too");
  opts.threads = app.add_option("--threads", flags.threads, "worker threads, 0 = all cores");
  opts.unroll_depth = app.add_option("--unroll-depth", flags.unroll_depth, "skip sweeps per column, 0 = until stable");
  opts.config = app.add_option("--config", flags.config, "JSON configuration file")->check(CLI::ExistingFile);

  std::string train, model, traces, out_path, report_path, records_path, cases_list, highlight;
  std::size_t max_iter = 16, window = 3;
  std::uint64_t seed = 0;
  bool hide_sinks = false, export_models = false;

  auto* learn_cmd = app.add_subcommand("learn", "learn a model from a training file");
  learn_cmd->add_option("train", train, "training file")->required();
  learn_cmd->add_option("--out", out_path, "model file (default: stdout)");

  auto* align_cmd = app.add_subcommand("align", "align traces to a model");
  align_cmd->add_option("model", model, "model file")->required();
  align_cmd->add_option("traces", traces, "training file with traces")->required();
  align_cmd->add_option("--report", report_path, "alignment report (default: stdout)");

  auto* score_cmd = app.add_subcommand("score", "print the average normalized score");
  score_cmd->add_option("model", model, "model file")->required();
  score_cmd->add_option("traces", traces, "training file with traces")->required();

  auto* iterate_cmd = app.add_subcommand("iterate", "iteratively realign and relearn");
  iterate_cmd->add_option("train", train, "training file")->required();
  auto* max_iter_opt = iterate_cmd->add_option("--max-iter", max_iter, "iteration budget (default 16)");
  auto* window_opt = iterate_cmd->add_option("--window", window, "convergence window (default 3)");
  iterate_cmd->add_option("--out", out_path, "best model file (default: <output_dir>/best.model)");
  iterate_cmd->add_option("--records", records_path, "JSON-lines iteration records");
  iterate_cmd->add_flag("--export-models", export_models, "write every iteration's model to the output dir");

  auto* verify_cmd = app.add_subcommand("verify", "perturb model paths and check recovery");
  verify_cmd->add_option("model", model, "model file")->required();
  auto* cases_opt = verify_cmd->add_option("--cases", cases_list, "comma-separated, e.g. remove1,swap1");
  auto* seed_opt = verify_cmd->add_option("--seed", seed, "perturbation seed");
  verify_cmd->add_option("--records", records_path, "JSON-lines verification records");

  auto* dot_cmd = app.add_subcommand("export-dot", "write the model as a Graphviz graph");
  dot_cmd->add_option("model", model, "model file")->required();
  dot_cmd->add_flag("--hide-sinks", hide_sinks, "omit sink states");
  dot_cmd->add_option("--highlight", highlight, "draw edges with this label in red");
  dot_cmd->add_option("--out", out_path, "output file (default: stdout)");

  std::vector<const char*> argv{"pdfalign"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    const Config cfg = resolve_config(flags, opts);

    if (learn_cmd->parsed()) {
      const Automaton learned = learn(read_training_file(std::filesystem::path(train)), cfg.learner());
      emit(out_path, out, [&](std::ostream& os) { write_model(learned, os); });
    } else if (align_cmd->parsed()) {
      const Automaton m = read_model(std::filesystem::path(model));
      const TraceCorpus corpus = load_traces(traces, cfg);
      const auto results = align_all(m, corpus.sequences, cfg.align(), cfg.iterate.threads);
      emit(report_path, out,
           [&](std::ostream& os) { write_alignment_report(os, m, corpus.sequences, results); });
    } else if (score_cmd->parsed()) {
      const Automaton m = read_model(std::filesystem::path(model));
      const TraceCorpus corpus = load_traces(traces, cfg);
      const auto results = align_all(m, corpus.sequences, cfg.align(), cfg.iterate.threads);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", average_normalized_score(results));
      out << buf << '\n';
    } else if (iterate_cmd->parsed()) {
      IterateParams params = cfg.iterate;
      if (max_iter_opt->count()) params.max_iterations = max_iter;
      if (window_opt->count()) params.convergence_window = window;
      const IterateResult result = iterate(read_training_file(std::filesystem::path(train)), params);
      write_iteration_table(out, result.report);
      if (!records_path.empty()) {
        emit(records_path, out, [&](std::ostream& os) { write_iteration_records(os, result.report); });
      }
      const std::string best = out_path.empty() ? (cfg.output_dir / "best.model").string() : out_path;
      write_model(result.model, std::filesystem::path(best));
      if (export_models) {
        for (std::size_t i = 0; i < result.models.size(); ++i) {
          write_model(result.models[i], cfg.output_dir / ("iteration_" + std::to_string(i) + ".model"));
        }
      }
    } else if (verify_cmd->parsed()) {
      const Automaton m = read_model(std::filesystem::path(model));
      const std::uint64_t s = seed_opt->count() ? seed : cfg.verify_seed;
      std::vector<TestCase> cases = cases_opt->count() ? parse_cases(cases_list, s) : cfg.verify_cases;
      for (auto& tc : cases) tc.rng_seed = s;
      const VerificationResult result = run_verification(m, cases, {cfg.align(), cfg.iterate.threads});
      write_verification_table(out, result);
      if (!records_path.empty()) {
        emit(records_path, out, [&](std::ostream& os) { write_verification_records(os, result); });
      }
    } else if (dot_cmd->parsed()) {
      const Automaton m = read_model(std::filesystem::path(model));
      DotOptions dot;
      dot.hide_sinks = hide_sinks;
      if (!highlight.empty()) dot.highlight = [&](const Transition& t) { return t.label == highlight; };
      emit(out_path, out, [&](std::ostream& os) { os << export_dot(m, dot); });
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace pdfalign
