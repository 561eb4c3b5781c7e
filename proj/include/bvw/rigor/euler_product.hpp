// euler_product.hpp
// Rigorous enclosures of the Euler-product constants
//
//   C2 = prod_p (1 + 1/(p(p-1)))
//   C5 = prod_p (1 + 1/(p-1)^2)
//   B3 = zeta(3/2)/zeta(3) * prod_p (1 + p/((p-1)(p^{3/2}+1)))
//   B4 = prod_p (1 + 2/(sqrt p (p-1))) (1 + 2 sqrt p/((p-1)^2 (1 + 2/(sqrt p (p-1)))))
//   B5 = prod_p (1 + 2/(sqrt p (p-1)))
//
// Each local factor is a rational function L(a) of a = p^{-1/2} with integer
// coefficients. Before multiplying over primes we peel off zeta factors:
// with L(a) = prod_k (1 - a^k)^{-e_k} * corr(a) and corr(a) = 1 + O(a^m),
//
//   prod_p L(p) = prod_k zeta(k/2)^{e_k} * prod_p corr(p).
//
// The finite product runs over p <= cutoff in interval arithmetic (in log
// space, pairwise summed). For p > cutoff, |corr(p) - 1| <= K p^{-m/2} with K
// bounded from the exact residual polynomial, and the tail is majorized by
// the integer sum K * sum_{n > P} n^{-m/2} <= K P^{1-m/2}/(m/2 - 1).
//
// acceleration_order = 0 disables the zeta peeling and gives the plain
// product with the same integer-sum tail bound.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvw/rigor/interval.hpp"

namespace bvw {

enum class ProductId { C2, C5, B3, B4, B5 };

inline constexpr int kDefaultAccelerationOrder = 6;

struct EulerProductOptions {
  std::uint64_t cutoff = 1'000'000;
  int acceleration_order = kDefaultAccelerationOrder;
};

struct ZetaFactor {
  int half_argument;  // k, for zeta(k/2)
  int exponent;       // e_k
};

struct EulerProductResult {
  ProductId id;
  Interval value;
  std::uint64_t cutoff;
  int acceleration_order;
  std::vector<ZetaFactor> zeta_factors;
  int residual_order;  // lowest power of a in corr(a) - 1; 0 when corr == 1
  double tail_bound;   // bound on |log| of the tail product
};

// Integer polynomial in a = p^{-1/2}; coefficient i multiplies a^i.
using IntPoly = std::vector<std::int64_t>;

struct LocalFactor {
  IntPoly numerator;
  IntPoly denominator;
};

LocalFactor local_factor(ProductId id);
std::string product_name(ProductId id);

// Throws DomainError for cutoff < 100 (the catalog's minimum).
EulerProductResult euler_product(ProductId id, const EulerProductOptions& options = {});

// Exposed for tests: the zeta factorization of a local factor up to `order`.
struct PeeledFactor {
  std::vector<ZetaFactor> zeta_factors;
  IntPoly corr_numerator;
  IntPoly corr_denominator;
};
PeeledFactor peel_zeta_factors(const LocalFactor& factor, int order);

}  // namespace bvw
