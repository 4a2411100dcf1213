#pragma once
// Slow, obviously-correct reference implementations used only by tests.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t slow_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (std::uint64_t i = 0; i < e; ++i) r = r * b % m;
  return r;
}

/// Legendre symbol by Euler's criterion with a naive power loop.
inline int euler_legendre(std::int64_t a, std::uint64_t q) {
  std::int64_t r = a % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  if (r == 0) return 0;
  std::uint64_t v = slow_pow(r, (q - 1) / 2, q);
  return v == 1 ? 1 : -1;
}

/// dim S_k(Gamma0(N)) from the genus-type formula (k even >= 2).
std::int64_t cusp_form_dimension(std::int64_t N, std::int64_t k);

}  // namespace oracle
