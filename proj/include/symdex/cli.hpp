#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace symdex {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitInvariant = 1, kExitInvalidInput = 2, kExitBudget = 3 };

struct Request {
  std::string command;  // delta extract refine tree series extreme one_sided oracle
  std::string in;
  std::string out;
  std::string format = "json";
  std::optional<std::size_t> n;
  std::optional<std::string> epsilon;
  std::optional<std::size_t> depth;
  std::string strategy = "greedy";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> decimal;
};

/// Runs one request, writes the report atomically to request.out and a one
/// line summary to `summary`. Returns the process exit code.
int run(const Request& request, std::ostream& summary, std::ostream& errors);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace symdex
