// SPDX-License-Identifier: Apache-2.0
// Command-line front end: runs one pipeline and writes a JSON report.
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "cnpfact/job.hpp"

namespace {

int emit(const cnpfact::json& report, const std::string& out_path, bool summary) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return cnpfact::kExitInvalid;
  }
  out << text;
  if (summary) std::cout << cnpfact::report_render(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization in complete Nevanlinna-Pick spaces"};
  cnpfact::JobConfig config;
  std::string out_path;
  constexpr int unset = std::numeric_limits<int>::min();
  int degree = unset;
  int dm = unset;

  app.add_option("command", config.command,
                 "lift | factor-seq | factor-wp | colrow | kernel | cnp-factor | render")
      ->required();
  app.add_option("--in", config.input, "input JSON file (omitted: random input from --seed)");
  app.add_option("--out", out_path, "report file (omitted: report on stdout)");
  app.add_option("--d", config.d, "number of variables for generated inputs");
  app.add_option("--degree", degree, "input degree; truncation degree for colrow and cnp-factor");
  app.add_option("--dm", dm, "invariant-subspace word depth (default: input degree + 2)");
  app.add_option("--dc", config.dc, "depth of the cyclicity check");
  app.add_option("--tol", config.tol, "certificate tolerance");
  app.add_option("--seed", config.seed, "seed for generated inputs");
  app.add_option("--cap", config.cap, "largest basis any step may build");
  app.add_flag("--literal", config.literal, "use the truncated wandering vector instead of the exact factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << cnpfact::json{{"status", "error"}, {"reason", "bad_arguments"}, {"message", e.what()}}.dump(2)
              << "\n";
    return cnpfact::kExitInvalid;
  }

  if (config.command == "render") {
    std::ifstream in(config.input);
    cnpfact::json report;
    try {
      report = cnpfact::json::parse(in);
      std::cout << cnpfact::report_render(report);
    } catch (const std::exception& e) {
      std::cerr << "cannot render: " << e.what() << "\n";
      return cnpfact::kExitInvalid;
    }
    return 0;
  }

  if (degree != unset) config.degree = degree;
  if (dm != unset) config.dm = dm;
  const cnpfact::JobResult result = cnpfact::run(config);
  const int io = emit(result.report, out_path, true);
  return io != 0 ? io : result.exit_code;
}
