// partition.hpp
// Dyadic partition of X < m <= 2X: for k = 1..K and 0 <= j < 2^{k-1} the box
//
//   (1 + 2j/2^k) X < m <= min(1 + (2j+1)/2^k, 2) X,
//   Y / (1 + (2j+2)/2^k) < n <= Y / (1 + (2j+1)/2^k),
//
// with M, N the number of integers in each side. The four sums
// sum sqrt(MN), sum M sqrt(N), sum sqrt(M) N, sum MN are compared against
// their closed-form bounds.

#pragma once

#include <array>
#include <cstdint>

#include "bvw/boundlab/report.hpp"

namespace bvw {

struct DyadicPartitionResult {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned k = 0;
  std::uint64_t interval_count = 0;
  // sqrt(MN), M sqrt(N), sqrt(M) N, MN.
  std::array<double, 4> sums{};
  std::array<double, 4> bounds{};
  // Boxes breaking M <= 2^{-k}X + 1 or N <= 2^{-k}Y + 1.
  std::uint64_t size_violations = 0;
  BoundCheckReport report;
};

inline constexpr unsigned kMaxPartitionDepth = 20;

// DomainError unless X, Y >= 2 and 1 <= K <= 20.
DyadicPartitionResult dyadic_partition_sums(std::uint64_t x, std::uint64_t y, unsigned k);

}  // namespace bvw
