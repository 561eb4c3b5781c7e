#include "bvw/rigor/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bvw/errors.hpp"

#ifndef BVW_DATA_DIR
#define BVW_DATA_DIR "data"
#endif

namespace bvw {

std::string params_for_a(int a) { return "A=" + std::to_string(a); }

Catalog Catalog::parse(const std::string& text, const std::string& origin) {
  Catalog catalog;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    CatalogRecord rec;
    std::string lo;
    std::string hi;
    if (!(fields >> rec.id >> rec.params >> lo >> hi >> rec.definition)) {
      throw UsageError(origin + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    std::string extra;
    if (fields >> extra) {
      throw UsageError(origin + ":" + std::to_string(line_no) + ": trailing field '" + extra + "'");
    }
    const Interval lo_iv = Interval::from_decimal(lo);
    const Interval hi_iv = Interval::from_decimal(hi);
    if (lo_iv.lo() > hi_iv.hi()) {
      throw UsageError(origin + ":" + std::to_string(line_no) + ": lo exceeds hi");
    }
    rec.value = Interval(lo_iv.lo(), hi_iv.hi());
    auto key = std::make_pair(rec.id, rec.params);
    if (catalog.index_.count(key) != 0) {
      throw UsageError(origin + ":" + std::to_string(line_no) + ": duplicate record " + rec.id +
                       " " + rec.params);
    }
    catalog.index_[key] = catalog.records_.size();
    catalog.records_.push_back(std::move(rec));
  }
  return catalog;
}

Catalog Catalog::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open catalog " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), file.string());
}

std::filesystem::path Catalog::default_path() {
  if (const char* env = std::getenv("BVW_CATALOG"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(BVW_DATA_DIR) / "catalog.txt";
}

const Catalog& Catalog::standard() {
  static const Catalog catalog = load(default_path());
  return catalog;
}

const CatalogRecord* Catalog::find(const std::string& id, const std::string& params) const {
  const auto it = index_.find({id, params});
  return it == index_.end() ? nullptr : &records_[it->second];
}

const CatalogRecord& Catalog::at(const std::string& id, const std::string& params) const {
  if (const auto* rec = find(id, params)) return *rec;
  throw UsageError("catalog has no record " + id + " " + params);
}

}  // namespace bvw
