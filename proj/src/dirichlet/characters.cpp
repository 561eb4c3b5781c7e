#include "bvw/dirichlet/characters.hpp"

#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "bvw/errors.hpp"

namespace bvw {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Smallest primitive root mod p^k, p odd.
std::uint64_t primitive_root(std::uint64_t p, std::uint64_t pk, std::uint64_t order) {
  std::vector<std::uint64_t> divisors;
  for (const auto& [r, e] : factor_small(order)) {
    (void)e;
    divisors.push_back(r);
  }
  for (std::uint64_t g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const std::uint64_t r : divisors) {
      if (pow_mod(g, order / r, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ConsistencyError(fmt::format("no primitive root mod {}", pk));
}

}  // namespace

CharacterGroup::CharacterGroup(std::uint64_t q, std::uint64_t cap) : q_(q) {
  if (q == 0) throw DomainError("modulus must be positive");
  if (q > cap) {
    throw CapacityError(fmt::format("modulus {} exceeds the character cap {}", q, cap));
  }

  // Local log tables, one per prime power, indexed by residue mod p^k.
  struct Local {
    std::uint64_t pk;
    std::size_t first;
    std::size_t count;
    std::vector<std::vector<std::uint32_t>> logs;  // [factor][residue]
  };
  std::vector<Local> locals;
  for (const auto& [p, k] : factor_small(q)) {
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    Local local{pk, factors_.size(), 0, {}};
    if (p != 2) {
      const std::uint64_t order = pk / p * (p - 1);
      const std::uint64_t g = primitive_root(p, pk, order);
      factors_.push_back({p, k, pk, order, g});
      std::vector<std::uint32_t> table(pk, 0);
      std::uint64_t r = 1;
      for (std::uint64_t j = 0; j < order; ++j) {
        table[r] = static_cast<std::uint32_t>(j);
        r = r * g % pk;
      }
      local.logs.push_back(std::move(table));
    } else if (k == 2) {
      factors_.push_back({2, 2, 4, 2, 3});
      local.logs.push_back({0, 0, 0, 1});
    } else if (k >= 3) {
      const std::uint64_t order5 = pk / 4;
      factors_.push_back({2, k, pk, 2, pk - 1});
      factors_.push_back({2, k, pk, order5, 5});
      std::vector<std::uint32_t> t_sign(pk, 0);
      std::vector<std::uint32_t> t_five(pk, 0);
      std::uint64_t r = 1;
      for (std::uint64_t j = 0; j < order5; ++j) {
        t_five[r] = static_cast<std::uint32_t>(j);
        t_five[pk - r] = static_cast<std::uint32_t>(j);
        t_sign[pk - r] = 1;
        r = r * 5 % pk;
      }
      local.logs.push_back(std::move(t_sign));
      local.logs.push_back(std::move(t_five));
    }
    local.count = factors_.size() - local.first;
    locals.push_back(std::move(local));
  }

  phi_ = 1;
  exponent_ = 1;
  for (const auto& f : factors_) {
    phi_ *= f.order;
    exponent_ = std::lcm(exponent_, f.order);
  }

  const std::size_t nf = factors_.size();
  unit_.assign(q_, 0);
  logs_.assign(q_ * nf, 0);
  for (std::uint64_t r = 0; r < q_; ++r) {
    if (std::gcd(r, q_) != 1) continue;
    unit_[r] = 1;
    for (const auto& local : locals) {
      for (std::size_t i = 0; i < local.count; ++i) {
        logs_[r * nf + local.first + i] = local.logs[i][r % local.pk];
      }
    }
  }

  roots_.resize(exponent_);
  for (std::uint64_t k = 0; k < exponent_; ++k) {
    if (4 * k % exponent_ == 0) {
      switch (4 * k / exponent_) {
        case 0: roots_[k] = {1.0, 0.0}; break;
        case 1: roots_[k] = {0.0, 1.0}; break;
        case 2: roots_[k] = {-1.0, 0.0}; break;
        default: roots_[k] = {0.0, -1.0}; break;
      }
      continue;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(exponent_);
    roots_[k] = {std::cos(angle), std::sin(angle)};
  }

  // Mixed-radix enumeration; index 0 is the principal character.
  chars_.reserve(phi_);
  std::vector<std::uint64_t> e(nf, 0);
  for (std::uint64_t idx = 0; idx < phi_; ++idx) {
    DirichletCharacter chi;
    chi.modulus = q_;
    chi.exponents = e;
    chi.order = 1;
    for (std::size_t i = 0; i < nf; ++i) {
      const std::uint64_t o = factors_[i].order;
      chi.order = std::lcm(chi.order, o / std::gcd(e[i], o));
    }
    chi.is_principal = chi.order == 1;
    chi.is_real = chi.order <= 2;
    chi.conductor = conductor_of(e);
    chi.is_primitive = chi.conductor == q_;
    chars_.push_back(std::move(chi));
    for (std::size_t i = 0; i < nf; ++i) {
      if (++e[i] < factors_[i].order) break;
      e[i] = 0;
    }
  }
}

std::uint64_t CharacterGroup::conductor_of(const std::vector<std::uint64_t>& e) const {
  std::uint64_t conductor = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const CyclicFactor& f = factors_[i];
    if (f.prime != 2) {
      const std::uint64_t d = f.order / std::gcd(e[i], f.order);
      if (d == 1) continue;
      // Smallest m with d | (p-1) p^{m-1}.
      std::uint64_t pm = f.prime;
      std::uint64_t group = f.prime - 1;
      while (group % d != 0) {
        pm *= f.prime;
        group *= f.prime;
      }
      conductor *= pm;
    } else if (f.power == 2) {
      if (e[i] != 0) conductor *= 4;
    } else {
      // Factor pair <-1> x <5>; i is the sign factor.
      const CyclicFactor& five = factors_[i + 1];
      const std::uint64_t d5 = five.order / std::gcd(e[i + 1], five.order);
      if (d5 > 1) {
        conductor *= 4 * d5;
      } else if (e[i] != 0) {
        conductor *= 4;
      }
      ++i;
    }
  }
  return conductor;
}

std::int64_t CharacterGroup::value_exponent(const DirichletCharacter& chi,
                                            std::uint64_t n) const {
  const std::uint64_t r = n % q_;
  if (!unit_[r]) return -1;
  const std::size_t nf = factors_.size();
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    const std::uint64_t scale = exponent_ / factors_[i].order;
    k = (k + chi.exponents[i] * logs_[r * nf + i] % factors_[i].order * scale) % exponent_;
  }
  return static_cast<std::int64_t>(k);
}

std::complex<double> CharacterGroup::value(const DirichletCharacter& chi, std::uint64_t n) const {
  const std::int64_t k = value_exponent(chi, n);
  if (k < 0) return {0.0, 0.0};
  return roots_[static_cast<std::uint64_t>(k)];
}

std::vector<std::uint64_t> CharacterGroup::logs(std::uint64_t n) const {
  const std::uint64_t r = n % q_;
  if (!unit_[r]) return {};
  const std::size_t nf = factors_.size();
  std::vector<std::uint64_t> out(nf);
  for (std::size_t i = 0; i < nf; ++i) out[i] = logs_[r * nf + i];
  return out;
}

}  // namespace bvw
