#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "bvw/arith/functions.hpp"
#include "bvw/arith/table_cache.hpp"
#include "bvw/arith/tables.hpp"
#include "bvw/errors.hpp"
#include "oracles.hpp"

using namespace bvw;

namespace {

const FunctionTables& tables() {
  static const FunctionTables t(200'000);
  return t;
}

}  // namespace

TEST_CASE("primes up to 30") {
  const FunctionTables t(30);
  const std::vector<std::uint32_t> want = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  CHECK(std::vector<std::uint32_t>(t.primes().begin(), t.primes().end()) == want);
}

TEST_CASE("textbook values") {
  const auto& t = tables();
  CHECK(t.mu(1) == 1);
  CHECK(t.mu(12) == 0);
  CHECK(t.mu(30) == -1);
  CHECK(t.phi(10) == 4);
  CHECK(t.radical(12) == 6);
  CHECK(t.divisor_count(12) == 6);
  CHECK(t.omega(12) == 2);
  CHECK(t.von_mangoldt(8) == doctest::Approx(std::log(2.0)));
  CHECK(t.von_mangoldt(6) == 0.0);
  CHECK(t.prime_count(100) == 25);
  CHECK(t.prime_power_base(27) == 3);
  CHECK(t.prime_power_base(12) == 0);
}

TEST_CASE("tables agree with trial division on a random sample") {
  const auto& t = tables();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, t.limit());
  for (int i = 0; i < 10'000; ++i) {
    const auto n = pick(rng);
    CAPTURE(n);
    REQUIRE(t.mu(n) == oracle::mu(n));
    REQUIRE(t.spf(n) == oracle::spf(n));
    REQUIRE(t.von_mangoldt(n) == oracle::lambda(n));
    REQUIRE(t.omega(n) == oracle::factor(n).size());
    std::uint64_t rad = 1;
    std::uint64_t phi = n;
    std::uint64_t d = 1;
    for (const auto& [p, k] : oracle::factor(n)) {
      rad *= p;
      phi = phi / p * (p - 1);
      d *= k + 1;
    }
    REQUIRE(t.radical(n) == rad);
    REQUIRE(t.phi(n) == phi);
    REQUIRE(t.divisor_count(n) == d);
  }
  for (std::uint64_t n = 1; n <= 300; ++n) {
    REQUIRE(t.phi(n) == oracle::phi(n));
    REQUIRE(t.divisor_count(n) == oracle::divisors(n));
  }
}

TEST_CASE("structural identities") {
  const auto& t = tables();
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    std::uint64_t phi_sum = 0;
    int mu_sum = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      phi_sum += t.phi(d);
      mu_sum += t.mu(d);
    }
    REQUIRE(phi_sum == n);
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    const auto r = t.radical(n);
    REQUIRE(t.is_squarefree(r));
    REQUIRE(n % r == 0);
    REQUIRE((t.von_mangoldt(n) != 0.0) == (t.prime_power_base(n) != 0));
  }
  // Mertens-style: sum_{n <= x} sum_{d | n} mu(d) = 1.
  std::int64_t acc = 0;
  for (std::uint64_t x = 1; x <= 10'000; ++x) {
    std::int64_t inner = 0;
    for (std::uint64_t d = 1; d * d <= x; ++d) {
      if (x % d) continue;
      inner += t.mu(d);
      if (d * d != x) inner += t.mu(x / d);
    }
    acc += inner;
    REQUIRE(acc == 1);
  }
}

TEST_CASE("h2 exact") {
  const auto& t = tables();
  CHECK(h2(t, 1) == Rational(1));
  CHECK(h2(t, 6) == Rational(3, 2));
  CHECK(h2(t, 5) == Rational(25, 24));
  CHECK(h2(t, 12) == Rational(3, 2));
}

TEST_CASE("roughness weight") {
  const auto& t = tables();
  CHECK(rough_indicator(t, 35, 4) == 1);
  CHECK(rough_indicator(t, 15, 4) == 0);
  CHECK(rough_indicator(t, 1, 100) == 1);
  CHECK(rough_von_mangoldt(t, 7, 4) == doctest::Approx(std::log(7.0)));
  CHECK(rough_von_mangoldt(t, 9, 4) == 0.0);
  // Beyond the table the trial-division path takes over.
  CHECK(rough_indicator(t, 1'000'003ULL * 7, 5) == 1);
  CHECK(rough_indicator(t, 1'000'003ULL * 3, 5) == 0);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 400);
  for (int i = 0; i < 1000; ++i) {
    const auto a = pick(rng);
    const auto b = pick(rng);
    for (const std::uint64_t z : {1, 3, 10, 30}) {
      REQUIRE(rough_indicator(t, a * b, z) ==
              rough_indicator(t, a, z) * rough_indicator(t, b, z));
      REQUIRE(rough_indicator(t, a, z) == (a == 1 || oracle::spf(a) > z ? 1 : 0));
    }
  }
}

TEST_CASE("squarefree counts") {
  const auto& t = tables();
  CHECK(squarefree_count(t, 10) == 7);
  CHECK(squarefree_count(t, 1) == 1);
  std::uint64_t brute = 0;
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    brute += oracle::mu(n) != 0;
    if (n % 997 == 0 || n < 200) REQUIRE(squarefree_count(t, n) == brute);
  }
  const double q = static_cast<double>(squarefree_count(t, 1'000'000));
  CHECK(std::fabs(q - 1e6 * 6.0 / (M_PI * M_PI)) <= 2e3);
}

TEST_CASE("qm sums") {
  const auto& t = tables();
  CHECK(squarefree_reciprocal_sum(t, 1, 1, 10) ==
        doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 6 + 1.0 / 7 + 1.0 / 10).epsilon(1e-14));
  CHECK(squarefree_reciprocal_sum(t, 6, 1, 10) ==
        doctest::Approx(1.0 / 5 + 1.0 / 7).epsilon(1e-14));
  CHECK(squarefree_reciprocal_sum(t, 6, 10, 10) == 0.0);
  CHECK_THROWS_AS(squarefree_reciprocal_sum(t, 1, 1, 1e9), CapacityError);
}

TEST_CASE("gcd") {
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(0, 7) == 7);
  CHECK(gcd(1, 0) == 1);
}

TEST_CASE("capacity and domain gates") {
  CHECK_THROWS_AS(FunctionTables(1), DomainError);
  CHECK_THROWS_AS(FunctionTables(1'000'000, 1, 1024), CapacityError);
  CHECK_THROWS_AS(tables().require_covers(tables().limit() + 1, "test"), CapacityError);
}

TEST_CASE("segmented sieve is independent of workers and segments") {
  // Larger than one 2^22 segment.
  const FunctionTables a(5'000'000, 1);
  const FunctionTables b(5'000'000, 4);
  CHECK(std::equal(a.spf_array().begin(), a.spf_array().end(), b.spf_array().begin()));
  CHECK(a.prime_count(5'000'000) == 348'513);
}

TEST_CASE("table cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bvw-test-cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto built = load_or_build_tables(50'000, 1, dir);
  const auto file = table_cache_file(dir, 50'000);
  REQUIRE(fs::exists(file));
  CHECK(fs::file_size(file) == 24 + 4 * 50'001);
  const auto loaded = load_or_build_tables(50'000, 1, dir);
  CHECK(std::equal(built.spf_array().begin(), built.spf_array().end(),
                   loaded.spf_array().begin()));
  // Header bytes: magic then little-endian version and limit.
  std::ifstream in(file, std::ios::binary);
  char head[24];
  in.read(head, 24);
  CHECK(std::string(head, 8) == "BVWSPF01");
  CHECK(static_cast<unsigned char>(head[8]) == 1);
  CHECK(static_cast<unsigned char>(head[16]) == (50'000 & 0xff));
  CHECK(static_cast<unsigned char>(head[17]) == (50'000 >> 8));
  in.close();
  {
    std::ofstream bad(file, std::ios::binary | std::ios::trunc);
    bad << "garbage";
  }
  CHECK_THROWS_AS(load_table_cache(file), UsageError);
  fs::remove_all(dir);
}
