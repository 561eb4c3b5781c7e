#include "bvw/rigor/constants.hpp"

#include <array>
#include <cmath>

#include "bvw/errors.hpp"
#include "bvw/rigor/catalog.hpp"
#include "bvw/rigor/zeta.hpp"

namespace bvw {

namespace {

struct Entry {
  ConstantId id;
  const char* name;
  const char* definition;
};

constexpr std::array<Entry, 17> kEntries = {{
    {ConstantId::C2, "C2", "prod_p(1+1/(p(p-1)))"},
    {ConstantId::C3, "C3", "e^gamma+5/(2loglogQ0)"},
    {ConstantId::C4, "C4", "C2+(89/16-C2log6)/logQ0"},
    {ConstantId::C5, "C5", "prod_p(1+1/(p-1)^2)"},
    {ConstantId::C11, "C11", "literal_1.334"},
    {ConstantId::C13, "C13", "1+1.334/((A+3)loglogx0)"},
    {ConstantId::B1, "B1", "zeta(3/2)/zeta(3)*prod_{p|l}sqrt(p)(p-1)/(p^{3/2}+1)"},
    {ConstantId::B2, "B2", "2^omega(l)*B5*prod_{p|l}2(1+2/(sqrt(p)(p-1)))^-1"},
    {ConstantId::B3, "B3", "zeta(3/2)/zeta(3)*prod_p(1+p/((p-1)(p^{3/2}+1)))"},
    {ConstantId::B4, "B4", "prod_p(1+2/(sqrt(p)(p-1)))(1+2sqrt(p)/((p-1)^2(1+2/(sqrt(p)(p-1)))))"},
    {ConstantId::B5, "B5", "prod_p(1+2/(sqrt(p)(p-1)))"},
    {ConstantId::Zeta3Halves, "zeta(3/2)", "sum_n n^(-3/2)"},
    {ConstantId::Zeta2, "zeta(2)", "sum_n n^(-2)"},
    {ConstantId::Zeta3, "zeta(3)", "sum_n n^(-3)"},
    {ConstantId::R0, "R0", "literal_6.397"},
    {ConstantId::R1, "R1", "literal_2.0452"},
    {ConstantId::Q0, "Q0", "literal_threshold_223092870"},
}};

const Entry& entry(ConstantId id) {
  for (const auto& e : kEntries) {
    if (e.id == id) return e;
  }
  throw UsageError("unknown constant id");
}

Interval product(ProductId pid, const ConstantParams& params) {
  return euler_product(pid, {params.cutoff, params.acceleration_order}).value;
}

double require_q0(const ConstantParams& params) { return params.q0.value_or(kDefaultQ0); }

}  // namespace

std::string constant_name(ConstantId id) { return entry(id).name; }
std::string constant_definition(ConstantId id) { return entry(id).definition; }

std::optional<ConstantId> parse_constant_id(const std::string& name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return e.id;
  }
  if (name == "zeta3/2" || name == "zeta_3_2") return ConstantId::Zeta3Halves;
  if (name == "zeta2") return ConstantId::Zeta2;
  if (name == "zeta3") return ConstantId::Zeta3;
  return std::nullopt;
}

const std::vector<ConstantId>& all_constant_ids() {
  static const std::vector<ConstantId> ids = [] {
    std::vector<ConstantId> v;
    for (const auto& e : kEntries) v.push_back(e.id);
    return v;
  }();
  return ids;
}

bool is_product_constant(ConstantId id) {
  switch (id) {
    case ConstantId::C2:
    case ConstantId::C4:
    case ConstantId::C5:
    case ConstantId::B2:
    case ConstantId::B3:
    case ConstantId::B4:
    case ConstantId::B5:
      return true;
    default:
      return false;
  }
}

std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

Interval c3_constant(double q0) {
  if (!(q0 > kQ0Threshold)) {
    throw DomainError("Q0 must be greater than 223092870");
  }
  return c3_formula(q0);
}

Interval c3_formula(double q0) {
  if (!(q0 > std::exp(1.0))) throw DomainError("C3 needs log log Q0 > 0");
  const Interval loglog = log(log(Interval(q0)));
  return exp(Interval::euler_gamma()) + Interval(5.0) / (Interval(2.0) * loglog);
}

Interval c4_constant(double q0, const Interval& c2) {
  if (!(q0 > kQ0Threshold)) {
    throw DomainError("Q0 must be greater than 223092870");
  }
  return c4_formula(q0, c2);
}

Interval c4_formula(double q0, const Interval& c2) {
  if (!(q0 > 1.0)) throw DomainError("C4 needs log Q0 > 0");
  const Interval numer = Interval(89.0) / 16.0 - c2 * log(Interval(6.0));
  return c2 + numer / log(Interval(q0));
}

Interval c13_constant(int a, double loglog_x0) {
  if (a < 2 || a > 7) throw DomainError("C13 requires 2 <= A <= 7");
  if (!(loglog_x0 > 0.0)) throw DomainError("C13 requires log log x0 > 0");
  const Interval c11 = Interval::from_decimal("1.334");
  return Interval(1.0) + c11 / (Interval(static_cast<double>(a + 3)) * Interval(loglog_x0));
}

Interval b1_constant(std::uint64_t l) {
  if (l == 0) throw DomainError("B1 requires l >= 1");
  Interval v = zeta_value(1.5) / zeta_value(3.0);
  for (const std::uint64_t p : distinct_prime_divisors(l)) {
    const Interval pp(static_cast<double>(p));
    const Interval root = sqrt(pp);
    v *= root * (pp - 1.0) / (pp * root + 1.0);
  }
  return v;
}

Interval b2_constant(std::uint64_t l, const Interval& b5) {
  if (l == 0) throw DomainError("B2 requires l >= 1");
  Interval v = b5;
  for (const std::uint64_t p : distinct_prime_divisors(l)) {
    const Interval pp(static_cast<double>(p));
    const Interval local = Interval(1.0) + Interval(2.0) / (sqrt(pp) * (pp - 1.0));
    // 2^omega(l) and the per-prime factor 2 (1 + 2/(sqrt p (p-1)))^-1.
    v *= Interval(2.0) * (Interval(2.0) / local);
  }
  return v;
}

ConstantValue constant_value(ConstantId id, const ConstantParams& params) {
  ConstantValue out{id, Interval(0.0), constant_definition(id), 0};
  if (is_product_constant(id)) out.cutoff = params.cutoff;
  const Catalog& catalog = Catalog::standard();
  switch (id) {
    case ConstantId::C2: out.value = product(ProductId::C2, params); break;
    case ConstantId::C5: out.value = product(ProductId::C5, params); break;
    case ConstantId::B3: out.value = product(ProductId::B3, params); break;
    case ConstantId::B4: out.value = product(ProductId::B4, params); break;
    case ConstantId::B5: out.value = product(ProductId::B5, params); break;
    case ConstantId::C3: out.value = c3_constant(require_q0(params)); break;
    case ConstantId::C4:
      out.value = c4_constant(require_q0(params), product(ProductId::C2, params));
      break;
    case ConstantId::C13:
      if (!params.a || !params.loglog_x0) throw DomainError("C13 needs A and log log x0");
      out.value = c13_constant(*params.a, *params.loglog_x0);
      break;
    case ConstantId::B1: out.value = b1_constant(params.l.value_or(1)); break;
    case ConstantId::B2:
      out.value = b2_constant(params.l.value_or(1), product(ProductId::B5, params));
      break;
    case ConstantId::Zeta3Halves: out.value = zeta_value(1.5); break;
    case ConstantId::Zeta2: out.value = zeta_value(2.0); break;
    case ConstantId::Zeta3: out.value = zeta_value(3.0); break;
    case ConstantId::C11: out.value = catalog.value("C11"); break;
    case ConstantId::R0: out.value = catalog.value("R0"); break;
    case ConstantId::R1: out.value = catalog.value("R1"); break;
    case ConstantId::Q0: out.value = catalog.value("Q0"); break;
  }
  return out;
}

}  // namespace bvw
