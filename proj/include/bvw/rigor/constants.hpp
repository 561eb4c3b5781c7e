// constants.hpp
// The constant catalog: every named constant is produced as an Interval,
// either from a closed form, an Euler product, a zeta value or a literal.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvw/rigor/euler_product.hpp"
#include "bvw/rigor/interval.hpp"

namespace bvw {

enum class ConstantId {
  C2, C3, C4, C5, C11, C13,
  B1, B2, B3, B4, B5,
  Zeta3Halves, Zeta2, Zeta3,
  R0, R1, Q0,
};

// The lower threshold for Q0; C3 and C4 need Q0 strictly above it.
inline constexpr double kQ0Threshold = 223092870.0;
inline constexpr double kDefaultQ0 = 223092871.0;

struct ConstantParams {
  std::optional<std::uint64_t> l;   // B1(l), B2(l)
  std::optional<double> q0;         // C3, C4
  std::optional<int> a;             // C13
  std::optional<double> loglog_x0;  // C13
  std::uint64_t cutoff = 1'000'000;
  int acceleration_order = kDefaultAccelerationOrder;
};

struct ConstantValue {
  ConstantId id;
  Interval value;
  std::string definition;
  std::uint64_t cutoff = 0;  // 0 when no Euler product is involved
};

std::string constant_name(ConstantId id);
std::optional<ConstantId> parse_constant_id(const std::string& name);
const std::vector<ConstantId>& all_constant_ids();
std::string constant_definition(ConstantId id);
bool is_product_constant(ConstantId id);

// Dispatch over the catalog. Missing required parameters or out-of-domain
// values throw DomainError.
ConstantValue constant_value(ConstantId id, const ConstantParams& params = {});

// Closed forms. The *_formula variants skip the Q0 domain gate and serve
// sweeps run with a deliberately small test Q0.
Interval c3_constant(double q0);
Interval c3_formula(double q0);
Interval c4_formula(double q0, const Interval& c2);
Interval c4_constant(double q0, const Interval& c2);
Interval c13_constant(int a, double loglog_x0);
Interval b1_constant(std::uint64_t l);
Interval b2_constant(std::uint64_t l, const Interval& b5);

// Distinct prime divisors by trial division.
std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t n);

}  // namespace bvw
