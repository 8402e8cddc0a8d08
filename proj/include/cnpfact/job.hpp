// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_JOB_HPP
#define CNPFACT_JOB_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "cnpfact/json_io.hpp"

namespace cnpfact {

struct JobConfig {
  std::string command;        // lift, factor-seq, factor-wp, colrow, kernel, cnp-factor
  std::string input;          // empty: generate a random input from `seed`
  int d = 1;
  std::optional<int> degree;  // input degree for generated inputs; truncation D for colrow and cnp-factor
  std::optional<int> dm;      // default: input degree + 2
  int dc = 6;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultBasisCap;
  bool literal = false;       // literal truncated wandering vector instead of the exact factor
};

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitTolerance = 3, kExitResource = 4 };

struct JobResult {
  int exit_code = kExitOk;
  json report;
};

/// Runs one command. Never throws: failures become an error report and exit code.
JobResult run(const JobConfig& config);

/// Fixed-format text summary of a report; numbers carry 12 significant digits.
std::string report_render(const json& report);

int exit_code_for(ErrorKind kind);

}  // namespace cnpfact

#endif  // CNPFACT_JOB_HPP
