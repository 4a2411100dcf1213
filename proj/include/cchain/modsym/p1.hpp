#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cchain/arith/primes.hpp"

namespace cchain {

/// The projective line P^1(Z/N). Each class is represented by its lexicographically
/// smallest member (c, d) with 0 <= c, d < N; classes are indexed in that order.
class P1List {
 public:
  explicit P1List(u64 N);

  u64 level() const { return N_; }
  std::size_t size() const { return reps_.size(); }
  std::pair<u64, u64> rep(std::size_t i) const { return reps_[i]; }
  /// Index of the class of (c : d), or -1 when gcd(c, d, N) != 1.
  long index(i64 c, i64 d) const;

 private:
  u64 N_;
  std::vector<std::pair<u64, u64>> reps_;
  std::vector<int> table_;  // N*N entries, -1 where gcd(c, d, N) != 1
};

using IntMatrix2 = std::array<i64, 4>;  // (a, b, c, d) for [[a, b], [c, d]]

/// Heilbronn matrices of determinant p in Cremona's form.
std::vector<IntMatrix2> heilbronn_cremona(u64 p);

}  // namespace cchain
