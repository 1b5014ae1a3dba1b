#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cuspk::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad flags, invalid input, caps exceeded
  kExitDisagree = 2,  // routes or checks disagree
};

enum class Format { text, json };

struct RunConfig {
  std::string command;
  long a = 0, b = 0, p = 0, e = 1;
  std::optional<long> r, j, m;
  long m_max = 10;
  std::string routes = "all";
  Format format = Format::text;
  std::optional<std::string> cache_dir;
  std::uint64_t witt_cap = 0;  // 0: library default
  unsigned bar_cap = 0;
  unsigned table_cap = 0;
  unsigned jobs = 0;  // 0: hardware concurrency
  // verify
  std::string grid = "default";
  bool with_bar = false;
  long bar_m_max = 14;
  int corrupt_h = 0;
  // witt-table
  std::optional<std::string> set;
  bool show = false;
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspk::cli
