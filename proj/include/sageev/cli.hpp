#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "sageev/error.hpp"
#include "sageev/words.hpp"

namespace sageev::cli {

// Exit codes. Library errors map one-to-one onto ErrorKind.
enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDualityFailed = 20,
};
int exit_code(ErrorKind kind);

struct RunConfig {
  int genus = 2;
  std::map<std::string, double> tolerances;  // known keys: radius_margin
  int doublings_cap = 4;
  std::size_t class_budget = kDefaultClassBudget;
  std::uint64_t seed = 20240611;
  std::string matrices;  // empty: standard representation
  int threads = 1;
};

// Reads a JSON config file: {"genus": 2, "doublings_cap": 4, "class_budget": N,
// "seed": S, "matrices": "path", "threads": T, "tolerances": {"radius_margin": m}}.
// Absent keys keep the values already in `cfg`.
void load_config(const std::string& path, RunConfig& cfg);

// Entry point; argv as passed to main. Writes results to `out` (or to --out)
// and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sageev::cli
