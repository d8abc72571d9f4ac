#pragma once

#include <string>
#include <vector>

#include "orbichar/descriptor.hpp"
#include "orbichar/rational.hpp"

namespace orbichar::cli {

// One validated job per process invocation.
struct JobSpec {
  std::string command;
  json input = json::object();
  int k = 1;
  int order = 4;  // truncation N
  std::vector<Rational> phis;
  long long seed = 20240601;
  bool pretty = false;
  std::size_t max_group_order = 0;  // 0 keeps the default
  std::size_t iso_bound = 0;        // 0 keeps the default
};

struct RunResult {
  json machine;       // deterministic document for standard output
  std::string human;  // pretty report (with timing) for standard error
  int exit_code = 0;  // 0 ok / all-pass, 1 identity failure, 2 input error
};

// Executes the mapped library calls. Input errors are reported inside the
// result with exit code 2 rather than thrown.
RunResult run(const JobSpec& spec);

const std::vector<std::string>& command_names();

}  // namespace orbichar::cli
