#include "pdfalign/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"
#include "pdfalign/error.hpp"

namespace pdfalign {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) throw InputError("config: '" + std::string(where) + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("config: unknown key '" + std::string(where) + "." + key + "'");
    }
  }
}

template <class T>
void read(const json& obj, std::string_view where, const char* key, T& into) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!obj.at(key).is_number_unsigned()) {
      throw InputError("config: '" + std::string(where) + "." + key + "' must be a non-negative integer");
    }
  }
  try {
    into = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError("config: '" + std::string(where) + "." + key + "' has the wrong type");
  }
}

}  // namespace

void Config::validate() const {
  iterate.validate();
  for (const auto& tc : verify_cases) tc.validate();
}

Config parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  reject_unknown(root, "", {"scoring", "alignment", "learner", "iterate", "verify", "output_dir", "threads"});

  Config cfg;
  if (root.contains("scoring")) {
    const auto& s = root["scoring"];
    reject_unknown(s, "scoring", {"match", "mismatch", "gap"});
    auto& sc = cfg.iterate.align.scoring;
    read(s, "scoring", "match", sc.match);
    read(s, "scoring", "mismatch", sc.mismatch);
    read(s, "scoring", "gap", sc.gap);
  }
  if (root.contains("alignment")) {
    const auto& a = root["alignment"];
    reject_unknown(a, "alignment", {"unroll_depth", "include_sinks"});
    read(a, "alignment", "unroll_depth", cfg.iterate.align.unroll_depth);
    read(a, "alignment", "include_sinks", cfg.iterate.align.include_sinks);
  }
  if (root.contains("learner")) {
    const auto& l = root["learner"];
    reject_unknown(l, "learner", {"alpha", "sink_count", "use_sinks", "reverse"});
    auto& lp = cfg.iterate.learner;
    read(l, "learner", "alpha", lp.alpha);
    read(l, "learner", "sink_count", lp.sink_count);
    read(l, "learner", "use_sinks", lp.use_sinks);
    read(l, "learner", "reverse", lp.reverse);
  }
  if (root.contains("iterate")) {
    const auto& it = root["iterate"];
    reject_unknown(it, "iterate", {"max_iterations", "convergence_window", "convergence_tolerance", "objective_check"});
    read(it, "iterate", "max_iterations", cfg.iterate.max_iterations);
    read(it, "iterate", "convergence_window", cfg.iterate.convergence_window);
    read(it, "iterate", "convergence_tolerance", cfg.iterate.convergence_tolerance);
    std::string check = "root";
    read(it, "iterate", "objective_check", check);
    if (check == "root") cfg.iterate.objective_check = ObjectiveCheck::Root;
    else if (check == "any") cfg.iterate.objective_check = ObjectiveCheck::AnyState;
    else throw InputError("config: iterate.objective_check must be 'root' or 'any'");
  }
  if (root.contains("verify")) {
    const auto& v = root["verify"];
    reject_unknown(v, "verify", {"seed", "cases"});
    read(v, "verify", "seed", cfg.verify_seed);
    std::vector<std::string> names;
    read(v, "verify", "cases", names);
    if (v.contains("cases")) {
      cfg.verify_cases.clear();
      for (const auto& name : names) cfg.verify_cases.push_back(TestCase::parse(name));
    }
    for (auto& tc : cfg.verify_cases) tc.rng_seed = cfg.verify_seed;
  }
  std::string output_dir = cfg.output_dir.string();
  read(root, "", "output_dir", output_dir);
  cfg.output_dir = output_dir;
  read(root, "", "threads", cfg.iterate.threads);

  cfg.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pdfalign
