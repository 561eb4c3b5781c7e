// catalog.hpp
// Literal constants and coefficient fixtures loaded from a plain-text data
// file. One record per line, whitespace separated:
//
//   <id> <params> <lo> <hi> <definition>
//
// `params` is "-" or a comma-separated list of key=value pairs (for example
// "A=2"). `lo` and `hi` are decimal literals; the stored enclosure is widened
// one ulp outward on each side. `definition` is free text without spaces.
// Blank lines and lines starting with '#' are ignored.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bvw/rigor/interval.hpp"

namespace bvw {

struct CatalogRecord {
  std::string id;
  std::string params;  // canonical "-" or "k=v,k=v"
  Interval value;
  std::string definition;
};

class Catalog {
 public:
  static Catalog parse(const std::string& text, const std::string& origin = "<string>");
  static Catalog load(const std::filesystem::path& file);
  // BVW_CATALOG environment variable, else the data file installed with the
  // sources.
  static const Catalog& standard();
  static std::filesystem::path default_path();

  const CatalogRecord* find(const std::string& id, const std::string& params = "-") const;
  // Throws UsageError naming the missing record.
  const CatalogRecord& at(const std::string& id, const std::string& params = "-") const;
  Interval value(const std::string& id, const std::string& params = "-") const {
    return at(id, params).value;
  }
  const std::vector<CatalogRecord>& records() const { return records_; }

 private:
  std::vector<CatalogRecord> records_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

std::string params_for_a(int a);

}  // namespace bvw
