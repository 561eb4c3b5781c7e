#include "bvw/boundlab/large_sieve.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bvw/errors.hpp"
#include "bvw/rigor/euler_product.hpp"
#include "bvw/util/parallel.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

namespace {

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;  // [0, 1)
}

// sum_n c_n chi(n) with c indexed from `first`, through residue sums.
std::vector<std::complex<double>> residue_sums(const CharacterGroup& g,
                                               const std::vector<std::complex<double>>& c,
                                               std::uint64_t first) {
  std::vector<CompensatedComplexSum> acc(g.modulus());
  for (std::size_t i = 0; i < c.size(); ++i) acc[(first + i) % g.modulus()].add(c[i]);
  std::vector<std::complex<double>> out(g.modulus());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = acc[r].value();
  return out;
}

std::complex<double> twist(const CharacterGroup& g, const DirichletCharacter& chi,
                           const std::vector<std::complex<double>>& sums) {
  CompensatedComplexSum acc;
  for (std::uint64_t r = 0; r < g.modulus(); ++r) {
    if (!g.is_unit(r)) continue;
    acc.add(g.value(chi, r) * sums[r]);
  }
  return acc.value();
}

double norm(const std::vector<std::complex<double>>& c) {
  CompensatedSum s;
  for (const auto& v : c) s.add(std::norm(v));
  return std::sqrt(s.value());
}

}  // namespace

std::complex<double> unit_disk_sample(std::mt19937_64& rng) {
  for (;;) {
    const double u = 2.0 * unit_real(rng) - 1.0;
    const double v = 2.0 * unit_real(rng) - 1.0;
    if (u * u + v * v <= 1.0) return {u, v};
  }
}

std::vector<std::complex<double>> unit_disk_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::complex<double>> out(n);
  for (auto& v : out) v = unit_disk_sample(rng);
  return out;
}

std::vector<CharacterGroup> character_groups_upto(std::uint64_t q_max, std::uint64_t cap) {
  std::vector<CharacterGroup> groups;
  groups.reserve(q_max);
  for (std::uint64_t q = 1; q <= q_max; ++q) groups.emplace_back(q, cap);
  return groups;
}

LargeSieveValue large_sieve_value(const std::vector<CharacterGroup>& groups,
                                  const std::vector<std::complex<double>>& a) {
  CompensatedSum lhs;
  for (const auto& g : groups) {
    const auto sums = residue_sums(g, a, 1);
    const double weight = static_cast<double>(g.modulus()) / static_cast<double>(g.order());
    for (const auto& chi : g.characters()) {
      if (!chi.is_primitive) continue;
      lhs.add(weight * std::norm(twist(g, chi, sums)));
    }
  }
  const double q = static_cast<double>(groups.size());
  const double na = norm(a);
  return {lhs.value(), (static_cast<double>(a.size()) + q * q) * na * na};
}

BoundCheckReport large_sieve_test(std::uint64_t q, std::uint64_t n, unsigned trials,
                                  std::uint64_t seed, unsigned workers) {
  if (q < 1 || n < 1) throw DomainError("large sieve needs Q >= 1 and N >= 1");
  if (trials < 1) throw DomainError("large sieve needs at least one trial");
  const auto groups = character_groups_upto(q);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::complex<double>>> vectors;
  vectors.reserve(trials);
  for (unsigned t = 0; t < trials; ++t) vectors.push_back(unit_disk_vector(rng, n));
  const auto values = parallel_map(trials, workers, [&](std::size_t t) {
    return large_sieve_value(groups, vectors[t]);
  });
  MarginTracker tr;
  double worst_ratio = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    // A relative 1e-12 covers the rounding of the left side.
    tr.observe(static_cast<double>(t), values[t].lhs * (1.0 + 1e-12), values[t].rhs, false);
    if (values[t].rhs > 0.0) worst_ratio = std::max(worst_ratio, values[t].lhs / values[t].rhs);
  }
  BoundCheckReport r;
  r.check_id = "large_sieve";
  r.params = {{"Q", fmt_uint(q)},
              {"N", fmt_uint(n)},
              {"trials", fmt_uint(trials)},
              {"seed", fmt_uint(seed)}};
  r.domain = "random coefficients uniform on the unit disk (mt19937_64)";
  r.absorb(tr);
  r.extra.emplace_back("max_lhs_over_rhs", fmt_real(worst_ratio));
  return r;
}

BilinearProbe bilinear_lemma_probe(std::uint64_t q, double r, std::uint64_t seed,
                                   const BilinearOptions& o) {
  if (q < 1) throw DomainError("bilinear probe needs Q >= 1");
  if (o.m < 1 || o.n < 1) throw DomainError("bilinear probe needs M, N >= 1");
  if (o.share_coefficients && o.m != o.n) {
    throw DomainError("shared coefficients need M = N");
  }
  if (!(o.alpha1 > 1.0)) throw DomainError("alpha1 must exceed 1");
  std::vector<std::complex<double>> a(o.m, {1.0, 0.0});
  std::vector<std::complex<double>> b(o.n, {1.0, 0.0});
  if (o.kind == CoefficientKind::random) {
    std::mt19937_64 rng(seed);
    a = unit_disk_vector(rng, o.m);
    b = o.share_coefficients ? a : unit_disk_vector(rng, o.n);
  }
  const auto groups = character_groups_upto(q);
  BilinearProbe out;
  CompensatedSum lhs;
  CompensatedSum lhs_swapped;
  for (const auto& g : groups) {
    const auto sa = residue_sums(g, a, o.x + 1);
    const auto sb = residue_sums(g, b, o.y + 1);
    for (const auto& chi : g.characters()) {
      if (static_cast<double>(chi.conductor) < r) continue;
      const double ta = std::abs(twist(g, chi, sa));
      const double tb = std::abs(twist(g, chi, sb));
      lhs.add(ta * tb);
      lhs_swapped.add(tb * ta);
      ++out.characters;
    }
  }
  out.lhs = lhs.value();
  out.lhs_swapped = lhs_swapped.value();
  out.norm_a = norm(a);
  out.norm_b = norm(b);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.rhs_statement = nan;
  out.rhs_proof = nan;
  if (q >= 3) {
    const Interval qi(static_cast<double>(q));
    const Interval log_q = log(qi);
    const Interval c3 = c3_formula(o.q0);
    const Interval c2 = euler_product(ProductId::C2, {o.cutoff}).value;
    const Interval c4 = c4_formula(o.q0, c2);
    const Interval c5 = euler_product(ProductId::C5, {o.cutoff}).value;
    const Interval al(o.alpha1);
    const Interval al1 = al - 1.0;
    const Interval log_al = log(al);
    const Interval mi(static_cast<double>(o.m));
    const Interval ni(static_cast<double>(o.n));
    const Interval sqrt_mn = sqrt(mi * ni);
    const Interval sum_roots = sqrt(mi) + sqrt(ni);
    const Interval ri(r > 0.0 ? r : 1.0);
    const Interval front = c3 * log(log_q) * Interval(out.norm_a) * Interval(out.norm_b);
    const Interval statement =
        front * (al / al1 * c4 * (sqrt_mn / ri * log_q + al / log_al * sum_roots * square(log_q)) +
                 pow(al, 3) / al1 * c5 * qi);
    const Interval proof =
        front * (square(al) / al1 * c4 * (sqrt_mn / ri * log_q + sum_roots * square(log_q) / log_al) +
                 al / al1 * c5 * qi);
    out.rhs_statement = statement.hi();
    out.rhs_proof = proof.hi();
  }

  BoundCheckReport& rep = out.report;
  rep.check_id = "bilinear_probe";
  rep.params = {{"Q", fmt_uint(q)},     {"R", fmt_real(r)},       {"X", fmt_uint(o.x)},
                {"M", fmt_uint(o.m)},   {"Y", fmt_uint(o.y)},     {"N", fmt_uint(o.n)},
                {"seed", fmt_uint(seed)}, {"alpha1", fmt_real(o.alpha1)},
                {"coefficients", o.kind == CoefficientKind::ones ? "ones" : "random"}};
  rep.domain = "characters mod q <= Q with conductor >= R";
  rep.observational = true;
  rep.note = "exploratory: the constants presume Q > Q0, far beyond this range";
  MarginTracker tr;
  if (q >= 3) {
    tr.observe(0.0, out.lhs, out.rhs_statement, true, "statement form");
    tr.observe(1.0, out.lhs, out.rhs_proof, true, "proof form");
  }
  rep.absorb(tr);
  rep.extra = {{"lhs", fmt_real(out.lhs)},
               {"lhs_swapped", fmt_real(out.lhs_swapped)},
               {"characters", fmt_uint(out.characters)},
               {"rhs_statement_form", fmt_real(out.rhs_statement)},
               {"rhs_proof_form", fmt_real(out.rhs_proof)}};
  return out;
}

}  // namespace bvw
