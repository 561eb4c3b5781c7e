// cli.hpp
// The bvw command line as a library, so tests can drive it in-process.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bvw::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kCapacity = 3 };

enum class Format { json, csv };

struct RunConfig {
  std::uint64_t tables_limit = 10'000'000;
  std::uint64_t character_cap = 10'000;
  double precision_target = 1e-8;
  unsigned worker_count = 1;
  std::uint64_t seed = 1;
  Format output_format = Format::json;
  std::filesystem::path cache_dir;  // empty: BVW_TABLE_CACHE_DIR or none
  bool timing = false;
};

// UsageError on an invariant violation.
void validate(const RunConfig& c);

// key=value lines, '#' comments. Keys: tables_limit, character_cap,
// precision_target, worker_count, seed, output_format, cache_dir. Only the
// keys present are applied to `into`.
void apply_config_text(const std::string& text, RunConfig& into);
void apply_config_file(const std::filesystem::path& file, RunConfig& into);

// Integers written as 1e7, 10000000 or 1e+07; UsageError unless exact.
std::uint64_t parse_count(const std::string& text, const char* what);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvw::cli
