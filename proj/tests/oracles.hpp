#pragma once

// Slow reference computations kept independent of the library internals, so
// the numbers the tests pin down are derived twice.

#include <vector>

#include "voa/scalar.hpp"

namespace oracles {

// partition count by the classic coin-style DP
inline long partitions(int n) {
  if (n < 0) return 0;
  std::vector<long> dp(n + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) dp[s] += dp[s - part];
  return dp[n];
}

// partitions of n into at most k parts
inline long partitions_max_parts(int n, int k) {
  if (n < 0 || k < 0) return 0;
  if (n == 0) return 1;
  // dp[j][s]: partitions of s into at most j parts
  std::vector<std::vector<long>> dp(k + 1, std::vector<long>(n + 1, 0));
  for (int j = 0; j <= k; ++j) dp[j][0] = 1;
  for (int j = 1; j <= k; ++j)
    for (int s = 1; s <= n; ++s)
      dp[j][s] = dp[j - 1][s] + (s >= j ? dp[j][s - j] : 0);
  return dp[k][n];
}

// partitions of n with an even number of parts, by direct recursion over
// nonincreasing part lists
inline long partitions_even_parts_rec(int n, int max_part, int parity) {
  if (n == 0) return parity == 0 ? 1 : 0;
  long total = 0;
  for (int p = std::min(n, max_part); p >= 1; --p)
    total += partitions_even_parts_rec(n - p, p, 1 - parity);
  return total;
}

inline long partitions_even_parts(int n) {
  return partitions_even_parts_rec(n, n < 1 ? 1 : n, 0);
}

// determinant of the s x s matrix (1/(i+j+1))_{i,j=0..s-1} by the classical
// product formula: c^4 / C with c = prod_{k<s} k!, C = prod_{k<2s} k!
inline voa::Scalar cauchy_unit_det(int s) {
  voa::Scalar num(1), den(1);
  for (int k = 1; k < s; ++k) num *= voa::Scalar::factorial(static_cast<unsigned long>(k));
  voa::Scalar c4 = num * num * num * num;
  for (int k = 1; k < 2 * s; ++k) den *= voa::Scalar::factorial(static_cast<unsigned long>(k));
  return c4 / den;
}

}  // namespace oracles
