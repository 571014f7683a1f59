#pragma once

#include <vector>

#include "opcalc/numeric.hpp"

namespace opcalc::combinat {

// C(n,k); 0 whenever k < 0, k > n or n < 0. Total by design so that index
// juggling in the operator formulas never needs guards.
Int binomial(long n, long k);

// i! / j! for j <= i.
Int falling_ratio(long i, long j);

// Stirling numbers of the second kind, computed from the alternating-sum
// formula S(m,i) = (1/i!) sum_j (-1)^j C(i,j) (i-j)^m with the division
// checked exact. Memoized.
Int stirling2(unsigned m, unsigned i);

// a(i_1,...,i_n; j), defined by the recursion
//   a(i_1;j) = delta_{j,0}
//   a(i_1,...,i_n;j) =
//     sum_k k! C(i_1,k) C(i_2+...+i_n - j + k, k) a(i_2,...,i_n; j-k).
// Vanishes for j > (sum i_s) - max(i_s). Memoized.
Int a_coeff(const std::vector<unsigned>& parts, unsigned j);

// A_d(i,n) = sum over compositions i = i_1+...+i_d (i_s >= 1) of
// prod_s C(n, i_s), with A_0(i,n) = delta_{i,0}. Memoized.
Int A_coeff(unsigned d, unsigned i, unsigned n);

// b(i,l;n) = sum over weak compositions i = i_1+...+i_n (i_s >= 0) of
// (i!/(i_1!...i_n!)) a(i_1,...,i_n; l). Equals (i!/(i-l)!) A_{i-l}(i,n).
Int b_coeff(unsigned i, unsigned l, unsigned n);

// Compositions of `total` into exactly `parts` parts, each >= min_part.
// Enumeration helper for the brute-force oracles in the tests.
std::vector<std::vector<unsigned>> compositions(unsigned total, unsigned parts,
                                                unsigned min_part);

}  // namespace opcalc::combinat
