#include "cchain/arith/primes.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "cchain/core/error.hpp"

namespace cchain {

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) {
    throw DomainError("element " + std::to_string(a) + " is not invertible modulo " +
                      std::to_string(m));
  }
  return reduce(t, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact below 3.3e24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(i64 a, u64 q) {
  if (q == 2 || !is_prime(q)) {
    throw DomainError("legendre symbol needs an odd prime modulus, got " + std::to_string(q));
  }
  u64 r = reduce(a, q);
  if (r == 0) return 0;
  return powmod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

int kronecker_prime(i64 d, u64 n) {
  if (n != 2) return legendre(d, n);
  if (d % 2 == 0) return 0;
  u64 r = reduce(d, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 gamma0_index(u64 n) {
  u64 mu = n;
  for (auto [p, e] : factorize(n)) mu = mu / p * (p + 1);
  return mu;
}

}  // namespace cchain
