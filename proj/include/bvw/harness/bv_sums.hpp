// bv_sums.hpp
// Left-hand sums of the mean-value theorem at desk scale:
//
//   sum_{q <= Q} max_{(a,q)=1} |psi(y; q, a) - y/phi(q)|
//
// optionally over squarefree q only and skipping multiples of a given q0.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bvw/arith/tables.hpp"

namespace bvw {

enum class YMode { fixed, grid };

inline constexpr unsigned kYGridPoints = 32;

struct BVOptions {
  bool squarefree_only = false;
  std::optional<std::uint64_t> exclude_q0;  // drop q with q0 | q
  YMode y_mode = YMode::fixed;
  int a = 2;  // exponent A in the normalisation
  unsigned workers = 1;
};

struct DiscrepancyRecord {
  std::uint64_t q = 0;
  std::uint64_t a_star = 1;  // smallest residue attaining the maximum
  std::uint64_t y_star = 0;  // y attaining it (x in fixed mode)
  double discrepancy = 0.0;
  bool squarefree = true;
  bool excluded = false;  // by the q0 filter
  bool included = true;   // contributes to the total
};

struct BVSumResult {
  std::uint64_t x = 0;
  std::uint64_t q_max = 0;
  YMode mode = YMode::fixed;
  bool squarefree_only = false;
  std::optional<std::uint64_t> exclude_q0;
  int a = 2;
  double total = 0.0;
  double normalized = 0.0;  // total log^A x / (x (log log x)^2)
  std::vector<DiscrepancyRecord> records;
};

// y = x, or the maximum over 32 log-spaced y in [sqrt x, x].
std::vector<std::uint64_t> y_grid(std::uint64_t x);

// DomainError when Q > x or Q < 1; CapacityError beyond the tables.
BVSumResult bv_discrepancy_sum(const FunctionTables& t, std::uint64_t x, std::uint64_t q,
                               const BVOptions& o = {});

// max_a |psi(x; q, a) - x/phi(q)| for a single modulus, y = x.
DiscrepancyRecord max_discrepancy(const FunctionTables& t, std::uint64_t x, std::uint64_t q);

double normalize_total(double total, std::uint64_t x, int a);

std::string y_mode_name(YMode m);
nlohmann::json to_json(const BVSumResult& r);
std::string to_csv(const BVSumResult& r);

}  // namespace bvw
