// table_cache.hpp
// On-disk cache for spf tables.
//
// File layout, all integers little-endian:
//   offset  0  8 bytes   magic "BVWSPF01"
//   offset  8  u32       format version (1)
//   offset 12  u32       reserved, zero
//   offset 16  u64       limit
//   offset 24  u32[limit + 1]  spf(0), spf(1), ..., spf(limit)
//
// The cache directory is taken from the BVW_TABLE_CACHE_DIR environment
// variable unless a directory is passed explicitly; files are named
// spf-<limit>.bin.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "bvw/arith/tables.hpp"

namespace bvw {

inline constexpr const char* kTableCacheEnv = "BVW_TABLE_CACHE_DIR";
inline constexpr std::uint32_t kTableCacheVersion = 1;

void save_table_cache(const FunctionTables& tables, const std::filesystem::path& file);
// Throws UsageError on a malformed or mismatched file.
FunctionTables load_table_cache(const std::filesystem::path& file);

std::filesystem::path table_cache_file(const std::filesystem::path& dir, std::uint64_t limit);

// Loads from the cache when present, otherwise sieves and (when a cache
// directory is configured) writes the cache. An empty dir means "use the
// environment variable, or no cache if unset".
FunctionTables load_or_build_tables(std::uint64_t limit, unsigned workers,
                                    const std::filesystem::path& dir = {},
                                    std::uint64_t memory_cap = FunctionTables::kDefaultMemoryCap);

}  // namespace bvw
