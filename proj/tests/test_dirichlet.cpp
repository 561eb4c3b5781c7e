#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <set>

#include "bvw/arith/tables.hpp"
#include "bvw/dirichlet/characters.hpp"
#include "bvw/dirichlet/sums.hpp"
#include "bvw/errors.hpp"
#include "oracles.hpp"

using namespace bvw;

namespace {

const FunctionTables& tables() {
  static const FunctionTables t(100'000);
  return t;
}

// Smallest d | q such that chi(n) = 1 whenever gcd(n, q) = 1 and n = 1 mod d.
std::uint64_t brute_conductor(const CharacterGroup& g, const DirichletCharacter& chi) {
  const std::uint64_t q = g.modulus();
  for (std::uint64_t d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool trivial = true;
    for (std::uint64_t n = 1; n <= q && trivial; n += d) {
      if (std::gcd(n, q) != 1) continue;
      trivial = g.value_exponent(chi, n) == 0;
    }
    if (trivial) return d;
  }
  return q;
}

double brute_psi(std::uint64_t x, std::uint64_t q, std::uint64_t a) {
  std::vector<double> terms;
  for (std::uint64_t n = a % q == 0 ? q : a % q; n <= x; n += q) terms.push_back(oracle::lambda(n));
  return oracle::exact_sum(terms);
}

}  // namespace

TEST_CASE("group sizes and values") {
  for (std::uint64_t q = 1; q <= 120; ++q) {
    CAPTURE(q);
    const CharacterGroup g(q);
    REQUIRE(g.size() == oracle::phi(q));
    REQUIRE(g.order() == oracle::phi(q));
    REQUIRE(g[CharacterGroup::principal_index()].is_principal);
    std::set<std::vector<std::uint64_t>> distinct;
    for (const auto& chi : g.characters()) {
      distinct.insert(chi.exponents);
      for (std::uint64_t n = 0; n < 2 * q + 3; ++n) {
        const auto e = g.value_exponent(chi, n);
        REQUIRE((e < 0) == (std::gcd(n, q) != 1));
        if (e >= 0) REQUIRE(std::abs(std::abs(g.value(chi, n)) - 1.0) < 1e-15);
      }
      // Complete multiplicativity on units, exactly on exponents.
      for (std::uint64_t m = 1; m < q; ++m) {
        for (std::uint64_t n = 1; n < q; n += 3) {
          if (std::gcd(m * n, q) != 1) continue;
          REQUIRE(static_cast<std::uint64_t>(g.value_exponent(chi, m * n)) ==
                  (g.value_exponent(chi, m) + g.value_exponent(chi, n)) % g.exponent());
        }
      }
    }
    REQUIRE(distinct.size() == g.size());
  }
}

TEST_CASE("small groups") {
  const CharacterGroup g1(1);
  REQUIRE(g1.size() == 1);
  for (std::uint64_t n = 1; n < 20; ++n) CHECK(g1.value(g1[0], n) == std::complex<double>(1.0, 0.0));

  const CharacterGroup g5(5);
  std::complex<double> s = 0;
  for (const auto& chi : g5.characters()) s += g5.value(chi, 2) * std::conj(g5.value(chi, 3));
  CHECK(std::abs(s) < 1e-15);

  const CharacterGroup g8(8);
  std::multiset<std::uint64_t> conds;
  for (const auto& chi : g8.characters()) conds.insert(chi.conductor);
  CHECK(conds == std::multiset<std::uint64_t>{1, 4, 8, 8});

  const CharacterGroup g6(6);
  CHECK(g6[0].conductor == 1);
  CHECK(g6[1].conductor == 3);
  for (std::size_t i = 1; i < g5.size(); ++i) {
    CHECK(g5[i].conductor == 5);
    CHECK(g5[i].is_primitive);
  }
  CHECK_THROWS_AS(CharacterGroup(10'001), CapacityError);
  CHECK_THROWS_AS(CharacterGroup(0), DomainError);
}

TEST_CASE("orthogonality of rows and columns") {
  for (const std::uint64_t q : {7ULL, 12ULL, 16ULL, 45ULL, 60ULL}) {
    const CharacterGroup g(q);
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::uint64_t b = 1; b < q; ++b) {
        if (std::gcd(b, q) != 1) continue;
        std::complex<double> s = 0;
        for (const auto& chi : g.characters()) s += g.value(chi, a) * std::conj(g.value(chi, b));
        REQUIRE(std::abs(s - (a == b ? static_cast<double>(g.size()) : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("conductors against brute force, q <= 200") {
  for (std::uint64_t q = 1; q <= 200; ++q) {
    const CharacterGroup g(q);
    for (const auto& chi : g.characters()) {
      CAPTURE(q);
      const auto d = brute_conductor(g, chi);
      REQUIRE(chi.conductor == d);
      REQUIRE(q % chi.conductor == 0);
      REQUIRE(chi.is_primitive == (d == q));
      REQUIRE(chi.is_principal == (d == 1));
      // chi factors through Z/d: equal values on units congruent mod d.
      for (std::uint64_t n = 1; n <= q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        for (std::uint64_t m = n + d; m <= q; m += d) {
          if (std::gcd(m, q) != 1) continue;
          REQUIRE(g.value_exponent(chi, n) == g.value_exponent(chi, m));
        }
      }
      bool real = true;
      for (std::uint64_t n = 1; n <= q; ++n) {
        const auto e = g.value_exponent(chi, n);
        if (e > 0 && 2 * static_cast<std::uint64_t>(e) != g.exponent()) real = false;
      }
      REQUIRE(chi.is_real == real);
    }
  }
}

TEST_CASE("psi_chi") {
  const auto& t = tables();
  const CharacterGroup g1(1);
  const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(psi_chi(t, 10, g1, g1[0]).real() == doctest::Approx(psi10).epsilon(1e-15));
  CHECK(psi10 == doctest::Approx(7.8320).epsilon(1e-4));
  for (const std::uint64_t q : {8ULL, 12ULL, 24ULL}) {
    const CharacterGroup g(q);
    for (const auto& chi : g.characters()) {
      if (chi.is_real) CHECK(psi_chi(t, 5000, g, chi).imag() == 0.0);
    }
  }
}

TEST_CASE("orthogonality reconstruction of psi(x; q, a), q <= 60") {
  const auto& t = tables();
  for (const std::uint64_t x : {1000ULL, 10000ULL}) {
    for (std::uint64_t q = 1; q <= 60; ++q) {
      const CharacterGroup g(q);
      std::vector<std::complex<double>> psis;
      for (const auto& chi : g.characters()) psis.push_back(psi_chi(t, x, g, chi));
      const auto direct = class_sums(t, x, q, Weight::von_mangoldt);
      for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::complex<double> s = 0;
        for (std::size_t i = 0; i < g.size(); ++i) s += std::conj(g.value(g[i], a)) * psis[i];
        s /= static_cast<double>(g.size());
        const double want = brute_psi(x, q, a);
        CAPTURE(q);
        CAPTURE(a);
        REQUIRE(std::fabs(s.real() - want) <= 1e-9 * std::max(1.0, want));
        REQUIRE(std::fabs(direct[a % q] - want) <= 1e-12 * std::max(1.0, want));
      }
    }
  }
}

TEST_CASE("psi_progression") {
  const auto& t = tables();
  const auto s = psi_progression(t, 20, 4, 1);
  const double want = std::log(5.0) + std::log(3.0) + std::log(13.0) + std::log(17.0);
  CHECK(s.psi == doctest::Approx(want).epsilon(1e-15));
  CHECK(s.psi == doctest::Approx(8.1062).epsilon(1e-4));
  CHECK(s.discrepancy == doctest::Approx(std::fabs(want - 10.0)).epsilon(1e-15));
  CHECK(psi_progression(t, 5000, 1, 1).psi == doctest::Approx(brute_psi(5000, 1, 0)).epsilon(1e-14));
  CHECK_THROWS_AS(psi_progression(t, 100, 12, 4), DomainError);
  CHECK_THROWS_AS(psi_progression(t, 200'000, 3, 1), CapacityError);

  // Triangle inequality sanity on q = 12.
  double sum_disc = 0.0;
  double sum_psi = 0.0;
  for (const std::uint64_t a : {1, 5, 7, 11}) {
    const auto p = psi_progression(t, 10'000, 12, a);
    sum_disc += p.discrepancy;
    sum_psi += p.psi;
  }
  CHECK(sum_disc >= std::fabs(sum_psi - 10'000.0));
}

TEST_CASE("g weighted sums") {
  const auto& t = tables();
  const auto s = g_weighted_sums(t, 20, 4, 1, 3);
  CHECK(s.g == doctest::Approx(std::log(5.0) + std::log(13.0) + std::log(17.0)).epsilon(1e-15));
  CHECK(s.g == doctest::Approx(7.0076).epsilon(1e-4));
  CHECK(g_weighted_sums(t, 50, 4, 1, 50).g == 0.0);

  // sum_a G1 = sum_{(n,q)=1} g(n) log n - G(x), here for q = 3, x = 1000.
  const std::uint64_t x = 1000, q = 3, z = 5;
  double g1_sum = 0.0;
  for (const std::uint64_t a : {1, 2}) g1_sum += g_weighted_sums(t, x, q, a, z).g1;
  std::vector<double> coprime, all;
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (oracle::spf(n) <= z) continue;
    all.push_back(std::log(static_cast<double>(n)));
    if (n % q) coprime.push_back(std::log(static_cast<double>(n)));
  }
  const double phi = 2.0;
  const double want = oracle::exact_sum(coprime) - phi * oracle::exact_sum(all) / phi;
  CHECK(g1_sum == doctest::Approx(want).epsilon(1e-12));
  CHECK(g_total(t, x, z) == doctest::Approx(oracle::exact_sum(all)).epsilon(1e-14));
}

TEST_CASE("F^(R) decomposition") {
  const auto& t = tables();
  const CharacterGroup g12(12);
  // R >= q: every character is included, F^(R) = 0 exactly.
  CHECK(f_r_decomposition(t, 1000, g12, 5, 12.0, Weight::von_mangoldt).by_characters == 0.0);
  // R = 1: only the principal character is removed.
  const auto d1 = f_r_decomposition(t, 1000, g12, 5, 1.0, Weight::von_mangoldt);
  std::vector<double> coprime;
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    if (std::gcd(n, std::uint64_t{12}) == 1) coprime.push_back(oracle::lambda(n));
  }
  const double want1 = brute_psi(1000, 12, 5) - oracle::exact_sum(coprime) / 4.0;
  CHECK(d1.value() == doctest::Approx(want1).epsilon(1e-12));
  const auto d3 = f_r_decomposition(t, 1000, g12, 1, 3.0, Weight::von_mangoldt);
  CHECK(std::fabs(d3.by_definition - d3.by_characters) <= 1e-10 * std::max(1.0, std::fabs(d3.by_definition)));

  // 50 seeded random triples, both weights.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> pick_q(2, 120), pick_x(100, 100'000);
  std::uniform_real_distribution<double> pick_r(1.0, 40.0);
  for (int i = 0; i < 50; ++i) {
    const auto q = pick_q(rng);
    const auto x = pick_x(rng);
    const double r = pick_r(rng);
    const CharacterGroup g(q);
    std::uint64_t a = 1 + rng() % q;
    while (std::gcd(a, q) != 1) a = 1 + rng() % q;
    for (const auto w : {Weight::von_mangoldt, Weight::g_log}) {
      CAPTURE(q);
      CAPTURE(x);
      CAPTURE(r);
      const auto d = f_r_decomposition(t, x, g, a, r, w);
      const double scale = std::max(1.0, std::fabs(d.by_definition));
      REQUIRE(std::fabs(d.by_definition - d.by_characters) <= 1e-9 * scale);
      REQUIRE(std::fabs(d.imaginary_residue) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("conductor contributions partition psi") {
  const auto& t = tables();
  for (const std::uint64_t q : {15ULL, 16ULL, 36ULL, 60ULL}) {
    const CharacterGroup g(q);
    const auto sums = class_sums(t, 50'000, q, Weight::von_mangoldt);
    const auto c = conductor_contributions(g, 1, sums);
    std::complex<double> total = 0;
    for (const auto& [r, v] : c) {
      CHECK(q % r == 0);
      total += v;
    }
    CHECK(std::fabs(total.real() - sums[1 % q]) <= 1e-9 * sums[1 % q]);
    CHECK(std::fabs(total.imag()) <= 1e-9 * sums[1 % q]);
  }
}

TEST_CASE("rough counts") {
  const auto& t = tables();
  CHECK(rough_count(t, 20, 3, 4, 1) == 4);
  CHECK(rough_count(t, 12345, 1, 1, 1) == 12345);
  // Summed over reduced residues: everything rough minus the classes that
  // share a factor with q.
  for (std::uint64_t q = 1; q <= 30; ++q) {
    for (const std::uint64_t z : {1ULL, 2ULL, 5ULL, 11ULL}) {
      const std::uint64_t y = 3000;
      std::uint64_t reduced = 0;
      for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) == 1) reduced += rough_count(t, y, z, q, a % q);
      }
      std::uint64_t sharing = 0;
      for (std::uint64_t n = 1; n <= y; ++n) {
        if ((n == 1 || oracle::spf(n) > z) && std::gcd(n, q) != 1) ++sharing;
      }
      REQUIRE(reduced == rough_count(t, y, z, 1, 0) - sharing);
    }
  }
}

TEST_CASE("partial summation realises G exactly") {
  const auto& t = tables();
  for (const std::uint64_t b : {1ULL, 3ULL}) {
    const double via_n = g_by_partial_summation(t, 1000, 5, 4, b);
    const double direct = g_weighted_sums(t, 1000, 4, b, 5).g;
    CHECK(std::fabs(via_n - direct) <= 1e-9 * std::max(1.0, direct));
  }
  // Stieltjes sum oracle: int_1^y N(t)/t dt = sum_{jumps n} log(y/n).
  std::vector<double> terms;
  for (std::uint64_t n = 1; n <= 1000; n += 4) {
    if (n == 1 || oracle::spf(n) > 5) terms.push_back(std::log(1000.0 / static_cast<double>(n)));
  }
  CHECK(rough_count_integral(t, 1000, 5, 4, 1) == doctest::Approx(oracle::exact_sum(terms)).epsilon(1e-12));
}

TEST_CASE("phi_partial") {
  CHECK(phi_partial(6, 2) == Rational(4));
  CHECK(phi_partial(30, 5) == Rational(30));
  CHECK(phi_partial(97, 200) == Rational(97));
  for (std::uint64_t q = 2; q <= 100; ++q) {
    REQUIRE(phi_partial(q, 1) == Rational(oracle::phi(q)));
    for (const std::uint64_t z : {2ULL, 3ULL, 7ULL}) REQUIRE(phi_partial(q, z) >= Rational(oracle::phi(q)));
    REQUIRE(phi_partial(q, oracle::lpf(q)) == Rational(q));
  }
}
