#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbichar/cli.hpp"

using orbichar::cli::JobSpec;
using orbichar::cli::json;

int main(int argc, char** argv) {
  CLI::App app{"exact computations of orbifold Euler characteristics on finite group models"};
  app.require_subcommand(1);
  app.fallthrough();

  JobSpec spec;
  std::string input_path;
  std::string phi_arg;
  std::string format = "json";

  for (const auto& name : orbichar::cli::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->callback([&spec, name]() { spec.command = name; });
  }
  app.add_option("--input", input_path, "input document path (default: standard input)");
  app.add_option("--k", spec.k, "order of the Euler characteristic (max 4)");
  app.add_option("--N", spec.order, "series truncation order (max 8)");
  app.add_option("--phi", phi_arg, "comma-separated exact weights, e.g. 1,1/2");
  app.add_option("--format", format, "json (machine) or pretty (adds a human report on stderr)");
  app.add_flag("--pretty", spec.pretty, "print the human report to standard error");
  app.add_option("--max-group-order", spec.max_group_order, "override the group construction bound");
  app.add_option("--max-iso-order", spec.iso_bound, "override the isomorphism bound");
  app.add_option("--seed", spec.seed, "seed for randomized property suites");

  CLI11_PARSE(app, argc, argv);

  if (format == "pretty") spec.pretty = true;

  if (const char* env = std::getenv("ORBICHAR_MAX_GROUP"); env && spec.max_group_order == 0)
    spec.max_group_order = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));

  if (!phi_arg.empty()) {
    std::stringstream ss(phi_arg);
    std::string item;
    while (std::getline(ss, item, ',')) spec.phis.push_back(orbichar::Rational::parse(item));
  }

  // input document: needed by every command except selftest and
  // verify-power-axioms (which have usable defaults)
  std::string doc;
  if (!input_path.empty()) {
    std::ifstream in(input_path);
    if (!in) {
      std::cerr << "cannot open " << input_path << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    doc = buf.str();
  } else if (spec.command != "selftest" && spec.command != "verify-power-axioms") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    doc = buf.str();
  }
  if (!doc.empty()) {
    try {
      spec.input = json::parse(doc);
    } catch (const std::exception& e) {
      std::cerr << "input is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }

  auto result = orbichar::cli::run(spec);
  std::cout << result.machine.dump(2) << "\n";
  if (spec.pretty) std::cerr << result.human;
  return result.exit_code;
}
