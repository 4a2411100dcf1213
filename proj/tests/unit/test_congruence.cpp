#include <random>

#include "cchain/congruence/congruence.hpp"
#include "cchain/core/error.hpp"
#include "doctest.h"
#include "oracles/number_theory.hpp"
#include "oracles/qexp.hpp"

using namespace cchain;

namespace {

// Index of Gamma0(N) by brute force over P^1(Z/N).
u64 index_oracle(u64 N) {
  u64 count = 0;
  for (u64 c = 0; c < N; ++c)
    for (u64 d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      ++count;
    }
  // points of P^1 = pairs / units
  u64 units = 0;
  for (u64 u = 1; u <= N; ++u)
    if (std::gcd(u, N) == 1) ++units;
  return N == 1 ? 1 : count / units;
}

NewformOrbit with_system(NewformOrbit o, EigenSystem e) {
  o.eigensystem = std::move(e);
  return o;
}

}  // namespace

TEST_CASE("cross bound examples") {
  CHECK(cross_bound(11, 2, 11, 2) == 2);
  CHECK(cross_bound(1, 12, 11, 2) == 12);
  CHECK(cross_bound(23, 2, 37, 2) == 152);
  for (u64 N1 : {1, 4, 11, 15, 23}) {
    for (u64 N2 : {2, 9, 37}) {
      u64 L = std::lcm(N1, N2);
      CHECK(cross_bound(N1, 4, N2, 2) == 4 * index_oracle(L) / 12);
    }
  }
}

TEST_CASE("delta and f11 are congruent mod 11 only") {
  const auto& delta = find_class("delta");
  const auto& eleven = find_class("f11");
  auto d11 = class_orbits(delta, 11);
  auto e11 = class_orbits(eleven, 11);
  REQUIRE(d11.size() == 1);
  REQUIRE(e11.size() == 1);
  auto edge = check_congruence(d11[0], e11[0], 11);
  CHECK(edge.status == CongruenceStatus::Certified);
  CHECK(edge.bound_used == 12);
  CHECK(edge.tested_primes == std::vector<u64>{2, 3, 5, 7});
  // spot values from the q-expansions
  for (u64 q : edge.tested_primes) {
    CHECK(d11[0].eigensystem.eigenvalues.at(q).c[0] == static_cast<u64>(oracle::mod(oracle::tau(20)[q], 11)));
    CHECK(e11[0].eigensystem.eigenvalues.at(q).c[0] == static_cast<u64>(oracle::mod(oracle::f11(20)[q], 11)));
  }
  // weight 12 vs 2 is not compatible modulo 6
  CHECK_THROWS_AS(check_congruence(class_orbits(delta, 7)[0], class_orbits(eleven, 7)[0], 7), DomainError);
  // mod 5 weights are compatible (12 - 2 = 10, 4 | 10 fails) so rejected; mod 3 accepted and refuted
  CHECK_THROWS_AS(check_congruence(class_orbits(delta, 5)[0], class_orbits(eleven, 5)[0], 5), DomainError);
  auto e3 = check_congruence(class_orbits(delta, 3)[0], class_orbits(eleven, 3)[0], 3);
  bool agree = true;
  for (u64 q : {2, 5, 7})
    if (oracle::mod(oracle::tau(20)[q], 3) != oracle::mod(oracle::f11(20)[q], 3)) agree = false;
  CHECK((e3.status == CongruenceStatus::Certified) == agree);
  // different characteristics
  CHECK_THROWS_AS(check_congruence(d11[0], class_orbits(eleven, 3)[0], 11), DomainError);
}

TEST_CASE("orbit against itself is certified") {
  for (u64 ell : {5, 7, 13}) {
    for (const auto& o : newform_orbits(37, 2, ell)) {
      auto e = check_congruence(o, o, ell);
      CHECK(e.status == CongruenceStatus::Certified);
      CHECK(e.embedding.left_generator == e.embedding.right_generator);
    }
  }
  for (const auto& o : newform_orbits(23, 2, 5)) CHECK(check_congruence(o, o, 5).status == CongruenceStatus::Certified);
}

TEST_CASE("level 37 orbits at ell = 5") {
  auto orbits = newform_orbits(37, 2, 5);
  REQUIRE(orbits.size() == 2);
  auto e = check_congruence(orbits[0], orbits[1], 5);
  // a_2 = -2 for 37a and 0 for 37b: different mod 5
  CHECK(e.status == CongruenceStatus::Refuted);
  CHECK(e.refuted_at == 2);
  CHECK(e.tested_primes.empty());
}

TEST_CASE("symmetry and Frobenius invariance") {
  for (u64 N : {23, 29, 31, 35, 39, 43}) {
    for (u64 ell : {2, 3, 5, 7}) {
      if (N % ell == 0 || ell <= 2 - 2) continue;
      std::vector<NewformOrbit> orbits;
      try {
        orbits = newform_orbits(N, 2, ell);
      } catch (const DomainError&) {
        continue;
      }
      for (const auto& a : orbits)
        for (const auto& b : orbits) {
          auto ab = check_congruence(a, b, ell);
          auto ba = check_congruence(b, a, ell);
          CHECK(ab.status == ba.status);
          auto bc = with_system(b, frobenius_conjugate(b.eigensystem));
          auto ac = with_system(a, frobenius_conjugate(a.eigensystem, 2));
          CHECK(check_congruence(a, bc, ell).status == ab.status);
          CHECK(check_congruence(ac, b, ell).status == ab.status);
        }
    }
  }
}

TEST_CASE("certified pairs of one space agree on all table primes") {
  // same level and weight: Certified at the cross bound must persist to the full table
  int certified = 0;
  for (u64 N = 11; N <= 50; ++N) {
    for (u64 ell : {2, 3, 5}) {
      if (N % ell == 0) continue;
      std::vector<NewformOrbit> orbits;
      try {
        orbits = newform_orbits(N, 2, ell);
      } catch (const DomainError&) {
        continue;
      }
      for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = i + 1; j < orbits.size(); ++j) {
          auto e = check_congruence(orbits[i], orbits[j], ell);
          if (e.status != CongruenceStatus::Certified) continue;
          ++certified;
          const auto& x = orbits[i].eigensystem;
          const auto& y = orbits[j].eigensystem;
          for (const auto& [q, v] : x.eigenvalues) {
            if (N % q == 0 || q == ell) continue;
            CHECK(element_charpoly(x.value_field, v) == element_charpoly(y.value_field, y.eigenvalues.at(q)));
          }
        }
    }
  }
  // distinct orbits of one space never agree to the Sturm bound
  CHECK(certified == 0);
}

TEST_CASE("doubling the bound never revives a refuted edge") {
  for (u64 N1 : {11, 14, 15, 17, 19, 20, 21, 24, 26, 27, 30}) {
    for (u64 N2 : {11, 17, 19, 26, 27, 30}) {
      for (u64 ell : {2, 3, 5, 7}) {
        if (N1 % ell == 0 || N2 % ell == 0) continue;
        u64 big = 2 * cross_bound(N1, 2, N2, 2);
        std::vector<NewformOrbit> A, B;
        try {
          A = newform_orbits(N1, 2, ell, std::max<u64>(big, 50));
          B = newform_orbits(N2, 2, ell, std::max<u64>(big, 50));
        } catch (const DomainError&) {
          continue;
        }
        for (const auto& a : A)
          for (const auto& b : B) {
            auto e1 = check_congruence(a, b, ell);
            auto e2 = check_congruence(a, b, ell, big);
            if (e2.status == CongruenceStatus::Certified) CHECK(e1.status == CongruenceStatus::Certified);
            if (e1.status == CongruenceStatus::Certified) CHECK(e2.status == CongruenceStatus::Certified);
          }
      }
    }
  }
}

TEST_CASE("table shorter than the bound is an error") {
  auto a = newform_orbits(11, 2, 5, 10);
  auto b = newform_orbits(37, 2, 5, 10);
  CHECK_THROWS_AS(check_congruence(a[0], b[0], 5), DomainError);
}

TEST_CASE("scan examples") {
  auto f = class_orbits(find_class("f11"), 11);
  CHECK(scan_congruences(f, {11}).empty());
  auto dup = f;
  dup.insert(dup.end(), f.begin(), f.end());
  CHECK(scan_congruences(dup, {11}).empty());

  std::vector<NewformOrbit> all;
  std::vector<u64> ells{2, 3, 5, 7, 11, 13};
  for (u64 ell : ells) {
    for (auto& o : class_orbits(find_class("delta"), ell)) all.push_back(o);
    for (auto& o : class_orbits(find_class("f11"), ell)) all.push_back(o);
  }
  auto edges = scan_congruences(all, ells);
  bool found = false;
  for (const auto& e : edges) {
    CHECK(e.status == CongruenceStatus::Certified);
    CHECK(e.left < e.right);
    if (e.ell == 11) {
      found = true;
      CHECK(e.left == "1.12.0");
      CHECK(e.right == "11.2.0");
      CHECK(e.mlt.theorem == Theorem::MLT1);
      CHECK(e.mlt.count(CheckStatus::Fail) == 0);
    }
  }
  CHECK(found);
}

TEST_CASE("parallel scan equals serial scan") {
  std::vector<NewformOrbit> orbits;
  std::vector<u64> ells{2, 3, 5, 7};
  // class route reaches ell = 2, 3 and primes dividing the level
  for (u64 N : {11, 14, 15, 17, 19, 23})
    for (const auto& c : newform_classes(N, 2, 100))
      for (u64 ell : ells)
        for (auto& o : class_orbits(c, ell)) orbits.push_back(o);
  auto par = scan_congruences(orbits, ells);
  auto ser = scan_congruences_serial(orbits, ells);
  REQUIRE(par.size() == ser.size());
  // rational torsion: 14a (order 6) and 19a (order 3) are Eisenstein mod 3; 11a (order 5) is alone mod 5
  auto has = [&](const std::string& a, const std::string& b, u64 ell) {
    for (const auto& e : par)
      if (e.left == a && e.right == b && e.ell == ell) return true;
    return false;
  };
  CHECK(has("14.2.0", "19.2.0", 3));
  CHECK(has("14.2.0", "15.2.0", 2));
  CHECK(!has("11.2.0", "14.2.0", 5));
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].left == ser[i].left);
    CHECK(par[i].right == ser[i].right);
    CHECK(par[i].ell == ser[i].ell);
    CHECK(par[i].tested_primes == ser[i].tested_primes);
  }
  // every edge is sorted and deduplicated
  for (std::size_t i = 1; i < par.size(); ++i)
    CHECK(std::tie(par[i - 1].left, par[i - 1].right, par[i - 1].ell) < std::tie(par[i].left, par[i].right, par[i].ell));
}
