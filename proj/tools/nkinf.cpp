// nkinf: finite superset of the non-trivial asymptotic critical values of a
// polynomial f: C^n -> C.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nkinf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Detect the non-trivial asymptotic critical values of a polynomial over Q"};
  nkinf::RunConfig config;
  std::string vars;
  std::string polynomial;
  std::string file;
  std::vector<std::string> sing;

  app.add_option("polynomial", polynomial, "Polynomial, e.g. \"x + x^2*y\"");
  app.add_option("--file", file, "Read the polynomial from a file")->check(CLI::ExistingFile);
  app.add_option("--vars", vars, "Comma-separated variables, e.g. x,y,z")->required();
  app.add_option("--method", config.method, "super_polar, iterated_polar or both")
      ->check(CLI::IsMember({"super_polar", "iterated_polar", "both"}))
      ->capture_default_str();
  app.add_option("--seed", config.detector.seed, "Base seed of the random coefficients")->capture_default_str();
  app.add_option("--runs", config.detector.runs, "Independent runs to intersect")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--coeff-bound", config.detector.coeff_bound, "Random coefficients lie in [-B, B] \\ {0}")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40))
      ->capture_default_str();
  app.add_flag("--force-general", config.detector.force_general_case, "Always localize away from Sing f");
  app.add_flag("--json", config.json, "Emit the JSON report");
  app.add_option("--tolerance", config.detector.tolerance, "Complex root tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--timings", config.timings, "Include per-run wall-clock times in the JSON");
  app.add_option("--sing", sing,
                 "Positive-dimensional component of Sing f as degree:dimension, for the bounds (repeatable)");
  app.add_flag_callback("--serial", [&] { config.detector.execution = nkinf::Execution::serial; },
                        "Disable OpenMP parallelism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : nkinf::kExitParseError;
  }

  if (!file.empty()) {
    if (!polynomial.empty()) {
      std::cerr << "give the polynomial either inline or with --file, not both\n";
      return nkinf::kExitParseError;
    }
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    polynomial = buf.str();
  } else if (polynomial.empty()) {
    std::cerr << "no polynomial given\n";
    return nkinf::kExitParseError;
  }

  for (const auto& s : sing) {
    auto colon = s.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(s);
      nkinf::SingularComponent c{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
      if (c.degree < 1 || c.dimension < 1) throw std::invalid_argument(s);
      config.detector.singular_components.push_back(c);
    } catch (const std::exception&) {
      std::cerr << "bad --sing value '" << s << "', expected degree:dimension\n";
      return nkinf::kExitParseError;
    }
  }

  std::vector<std::string> variables;
  try {
    variables = nkinf::parse_variable_list(vars);
  } catch (const nkinf::ParseError& e) {
    std::cerr << "parse error in --vars: " << e.what() << "\n";
    return nkinf::kExitParseError;
  }
  return nkinf::run_cli(config, variables, polynomial, std::cout, std::cerr);
}
