// zeta.hpp
// Rigorous zeta values at real s > 1 by Euler-Maclaurin summation.
//
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_{k=1}^{4} B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1} + R
//
// with |R| <= 2 |B_10|/10! * s(s+1)...(s+8) * N^{-s-9}.

#pragma once

#include "bvw/rigor/interval.hpp"

namespace bvw {

inline constexpr int kZetaCorrectionTerms = 4;
inline constexpr unsigned kZetaHeadTerms = 64;

// Any real s > 1 that is exactly representable (the argument is taken as a
// point). Used internally for the half-integer zeta factors of Euler
// products.
Interval zeta_euler_maclaurin(double s, unsigned head_terms = kZetaHeadTerms);

// The catalog entry points: s in {3/2, 2, 3}. Other s throw DomainError.
Interval zeta_value(double s);

}  // namespace bvw
