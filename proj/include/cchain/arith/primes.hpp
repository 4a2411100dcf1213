#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cchain {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

/// Canonical representative of a in [0, m).
inline u64 reduce(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(u64 n);

/// Legendre symbol (a/q) for an odd prime q.
int legendre(i64 a, u64 q);

/// Kronecker symbol (d/n) for a discriminant d and a prime n (n = 2 allowed).
int kronecker_prime(i64 d, u64 n);

std::vector<u64> primes_up_to(u64 n);
u64 next_prime(u64 n);  // smallest prime > n
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);

/// Index of Gamma0(N) in SL2(Z).
u64 gamma0_index(u64 n);

}  // namespace cchain
