#pragma once

// Subcommands of the freedyn tool.  Each returns a report object, the text
// rendering, and the exit code (0 pass, 1 input error, 2 theorem violation).

#include <cstdint>
#include <string>

#include "json.hpp"

namespace freedyn::cli {

inline constexpr int kSchemaVersion = 1;

struct Options {
  std::string endo;
  std::string tree;
  std::string splitting;
  int classes_maxlen = 3;
  double tol = 1e-6;
  int max_iter = 60;
  int kmax = 5;
  int samples = 100;
  std::uint64_t seed = 42;
  int prefix = 8;
  int depth = 6;
  int k = 6;
  bool dump_graph = false;
};

struct Outcome {
  nlohmann::ordered_json report;
  std::string text;
  int exit_code = 0;
};

Outcome run_analyze(const Options& o);
Outcome run_orbit(const Options& o);
Outcome run_rays(const Options& o);
Outcome run_admissible(const Options& o);
Outcome run_rigidity(const Options& o);
Outcome run_fold(const Options& o);

// Dispatches by name, turning library errors into exit code 1 (or 2 where the
// error itself contradicts a theorem) and stamping schema and timing fields.
Outcome run(const std::string& command, const Options& o);

}  // namespace freedyn::cli
