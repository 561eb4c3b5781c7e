// squarefree.hpp
// Remainder envelopes for sums over squarefree integers coprime to l:
//
//   sum_{x1 < q <= x, (q,l)=1} mu^2(q)/phi(q)
//     = phi(l)/l log(x/x1) + theta [B1(l) log(x/x1)/sqrt x + B2(l)(sqrt x/x1 + 1/sqrt x)]
//
// and the reciprocal-sum form
//
//   Q_m(x1, x) = log(x/x1) (phi(m)/m) sum_{k <= sqrt x, (k,m)=1} mu(k)/k^2
//                + theta d(m*) sqrt x (1/x1 + 1/x),
//
// both with |theta| <= 1.

#pragma once

#include <cstdint>
#include <vector>

#include "bvw/arith/tables.hpp"
#include "bvw/boundlab/lemma_sweeps.hpp"
#include "bvw/boundlab/report.hpp"

namespace bvw {

struct RemainderTriple {
  std::uint64_t l;
  double x1;
  double x;
};

// l in {1,2,3,5,6,30}, x1 in {1,2,5,7,9}, x = 10^{1 + 4k/6} for k = 0..6.
std::vector<RemainderTriple> standard_remainder_grid();

// Two points: the phi-form envelope and the Q_m envelope with m = l. The
// implied theta values are listed in `extra`. Requires 1 <= x1 <= x.
BoundCheckReport check_squarefree_remainders(const FunctionTables& t, std::uint64_t l, double x1,
                                             double x, const SweepOptions& o = {});

// Every triple of the standard grid folded into one report.
BoundCheckReport check_squarefree_remainder_grid(const FunctionTables& t,
                                                 const SweepOptions& o = {});

}  // namespace bvw
