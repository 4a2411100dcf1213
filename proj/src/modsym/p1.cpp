#include "cchain/modsym/p1.hpp"

#include <numeric>

#include "cchain/core/error.hpp"

namespace cchain {

P1List::P1List(u64 N) : N_(N) {
  if (N == 0) throw DomainError("level must be positive");
  if (N == 1) {
    reps_.push_back({0, 0});
    table_.assign(1, 0);
    return;
  }
  std::vector<u64> units;
  for (u64 u = 1; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  table_.assign(N * N, -1);
  // Scanning in lex order, the first unseen member of an orbit is its minimum.
  for (u64 c = 0; c < N; ++c) {
    for (u64 d = 0; d < N; ++d) {
      if (table_[c * N + d] != -1) continue;
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      int idx = static_cast<int>(reps_.size());
      reps_.push_back({c, d});
      for (u64 u : units) table_[(u * c % N) * N + (u * d % N)] = idx;
    }
  }
}

long P1List::index(i64 c, i64 d) const {
  u64 cc = reduce(c, N_), dd = reduce(d, N_);
  return table_[cc * N_ + dd];
}

namespace {

// Nearest integer to a/b, halves rounded away from zero.
i64 round_div(i64 a, i64 b) {
  bool neg = (a < 0) != (b < 0);
  i64 aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
  i64 q = (2 * aa + bb) / (2 * bb);
  return neg ? -q : q;
}

}  // namespace

std::vector<IntMatrix2> heilbronn_cremona(u64 p) {
  if (!is_prime(p)) throw DomainError("Heilbronn matrices need a prime index");
  if (p == 2) return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
  std::vector<IntMatrix2> out{{1, 0, 0, static_cast<i64>(p)}};
  const i64 P = static_cast<i64>(p);
  for (i64 r = -(P / 2); r <= P / 2; ++r) {
    i64 x1 = P, x2 = -r, y1 = 0, y2 = 1, a = -P, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      i64 q = round_div(a, b);
      i64 c = a - b * q;
      a = -b;
      b = c;
      i64 x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      i64 y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

}  // namespace cchain
