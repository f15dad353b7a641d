#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Sup-norm shell counting in Z^n. The shell {a : ||a||_inf = q} has
// (2q+1)^n - (2q-1)^n points; expanding both binomials leaves only the terms
// where n-k is odd, giving the monomial form 2 * sum C(n,k) (2q)^k used by the
// tail integrals.

namespace dioph {

inline double shell_count(std::int64_t q, int n) {
  double lo = 1.0, hi = 1.0;
  for (int i = 0; i < n; ++i) {
    hi *= double(2 * q + 1);
    lo *= double(2 * q - 1);
  }
  return hi - lo;
}

// (power of q, coefficient) pairs for shell_count(q, n); powers run over
// k <= n-1 with n-k odd, coefficient 2 * C(n,k) * 2^k
inline std::vector<std::pair<int, double>> shell_monomials(int n) {
  std::vector<double> binom(std::size_t(n) + 1, 0.0);
  binom[0] = 1.0;
  for (int row = 1; row <= n; ++row)
    for (int k = row; k >= 1; --k) binom[std::size_t(k)] += binom[std::size_t(k) - 1];
  std::vector<std::pair<int, double>> out;
  double pow2 = 1.0;
  for (int k = 0; k <= n; ++k) {
    if ((n - k) % 2 == 1) out.emplace_back(k, 2.0 * binom[std::size_t(k)] * pow2);
    pow2 *= 2.0;
  }
  return out;
}

}  // namespace dioph
