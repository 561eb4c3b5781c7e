#include "bvw/arith/table_cache.hpp"

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "bvw/errors.hpp"

namespace bvw {

namespace {

constexpr std::array<char, 8> kMagic = {'B', 'V', 'W', 'S', 'P', 'F', '0', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void save_table_cache(const FunctionTables& tables, const std::filesystem::path& file) {
  std::filesystem::create_directories(file.parent_path().empty() ? "." : file.parent_path());
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write table cache " + tmp.string());
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kTableCacheVersion);
    put_le<std::uint32_t>(out, 0);
    put_le<std::uint64_t>(out, tables.limit());
    std::vector<unsigned char> buffer;
    buffer.reserve(4 * 4096);
    for (const std::uint32_t v : tables.spf_array()) {
      for (int i = 0; i < 4; ++i) buffer.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
      if (buffer.size() >= 4 * 4096) {
        out.write(reinterpret_cast<const char*>(buffer.data()), buffer.size());
        buffer.clear();
      }
    }
    out.write(reinterpret_cast<const char*>(buffer.data()), buffer.size());
    if (!out) throw UsageError("short write on table cache " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

FunctionTables load_table_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot open table cache " + file.string());
  std::array<unsigned char, 24> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    throw UsageError("bad magic in table cache " + file.string());
  }
  if (get_le<std::uint32_t>(header.data() + 8) != kTableCacheVersion) {
    throw UsageError("unsupported table cache version in " + file.string());
  }
  const auto limit = get_le<std::uint64_t>(header.data() + 16);
  std::vector<unsigned char> raw((limit + 1) * 4);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw UsageError("truncated table cache " + file.string());
  std::vector<std::uint32_t> spf(limit + 1);
  for (std::uint64_t i = 0; i <= limit; ++i) spf[i] = get_le<std::uint32_t>(raw.data() + 4 * i);
  return FunctionTables::from_spf(std::move(spf));
}

std::filesystem::path table_cache_file(const std::filesystem::path& dir, std::uint64_t limit) {
  return dir / ("spf-" + std::to_string(limit) + ".bin");
}

FunctionTables load_or_build_tables(std::uint64_t limit, unsigned workers,
                                    const std::filesystem::path& dir, std::uint64_t memory_cap) {
  std::filesystem::path cache_dir = dir;
  if (cache_dir.empty()) {
    if (const char* env = std::getenv(kTableCacheEnv); env != nullptr && *env != '\0') {
      cache_dir = env;
    }
  }
  if (cache_dir.empty()) return FunctionTables(limit, workers, memory_cap);

  const auto file = table_cache_file(cache_dir, limit);
  if (std::filesystem::exists(file)) {
    auto tables = load_table_cache(file);
    if (tables.limit() == limit) return tables;
  }
  FunctionTables tables(limit, workers, memory_cap);
  save_table_cache(tables, file);
  return tables;
}

}  // namespace bvw
