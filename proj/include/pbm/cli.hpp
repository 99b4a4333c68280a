#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbm/gassner.hpp"

namespace pbm {

inline const std::vector<std::string> kCommands = {"matrix", "verify",   "form",     "specialize", "spectral",
                                                   "decompose", "dm",   "classify", "signature",  "sweep"};

// Inclusive integer range; a single value N is stored as N..N.
struct Range {
  int lo = 0;
  int hi = 0;
  bool single() const { return lo == hi; }
};

struct JobConfig {
  std::string command;
  std::optional<Range> n;
  std::optional<Range> d;
  std::optional<std::vector<int>> k;
  std::optional<int> f;
  std::optional<std::string> word;
  Basis basis = Basis::reduced;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  int cap = 12;
};

// Raw settings use flag names without dashes: n, d, k, f, word, basis, seed,
// out, cap.
using Settings = std::map<std::string, std::string>;

// key=value lines; '#' starts a comment, blank lines are skipped.
Settings read_config_file(const std::string& path);
Settings parse_config_text(const std::string& text);
// Throws ValidationError on unknown keys or malformed values.
JobConfig make_config(const std::string& command, const Settings& settings);
// The flags that rebuild this config.
std::string reproducer(const JobConfig& config);

struct RunResult {
  int exit_code = 0;
  std::string output;  // JSON document, or JSON lines for sweep
  std::string error;
};

// 0 on success, 2 on a validation error, 3 when an internal invariant fails.
RunResult run(const JobConfig& config);
// Parses settings first, so malformed flags also map to exit code 2.
RunResult run(const std::string& command, const Settings& settings);

}  // namespace pbm
