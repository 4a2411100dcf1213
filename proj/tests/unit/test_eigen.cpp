#include "cchain/arith/factor.hpp"
#include "cchain/eigen/eigensystem.hpp"
#include "doctest.h"
#include "oracles/number_theory.hpp"
#include "oracles/qexp.hpp"

using namespace cchain;

namespace {

u64 value(const EigenSystem& e, u64 q) {
  REQUIRE(e.degree() == 1);
  return e.eigenvalues.at(q).c[0];
}

}  // namespace

TEST_CASE("sturm bound examples") {
  CHECK(sturm_bound(1, 12) == 1);
  CHECK(sturm_bound(11, 2) == 2);
  CHECK(sturm_bound(37, 2) == 6);
}

TEST_CASE("decompose examples against eta-product expansions") {
  auto f = oracle::f11(60);
  auto sys = decompose(build_space(11, 2, 7));
  REQUIRE(sys.size() == 1);
  CHECK(value(sys[0], 2) == 5);
  CHECK(value(sys[0], 3) == 6);
  for (auto [q, v] : sys[0].eigenvalues) CHECK(v.c[0] == oracle::mod(f[q], 7));

  auto tau = oracle::tau(60);
  auto delta = decompose(build_space(1, 12, 13));
  REQUIRE(delta.size() == 1);
  CHECK(value(delta[0], 2) == 2);
  for (auto [q, v] : delta[0].eigenvalues) CHECK(v.c[0] == oracle::mod(tau[q], 13));

  auto s23 = decompose(build_space(23, 2, 7));
  REQUIRE(s23.size() == 1);
  CHECK(s23[0].degree() == 2);
  auto cp = element_charpoly(s23[0].value_field, s23[0].eigenvalues.at(2));
  PrimeField F7(7);
  CHECK(cp == Poly<PrimeField>{F7.from_int(-1), 1, 1});
}

TEST_CASE("newform orbit examples") {
  CHECK(newform_orbits(22, 2, 7).empty());
  CHECK(newform_orbits(11, 2, 7).size() == 1);
  auto o37 = newform_orbits(37, 2, 5);
  REQUIRE(o37.size() == 2);
  CHECK(o37[0].galois_orbit_size() == 1);
  CHECK(o37[1].galois_orbit_size() == 1);
  CHECK(o37[0].label == "37.2.5.0");
}

TEST_CASE("eigenvalues are roots of the Hecke charpolys") {
  auto S = build_space(43, 2, 11);
  for (auto& e : decompose(S)) {
    const auto& E = e.value_field;
    for (auto [q, a] : e.eigenvalues) {
      auto cp = charpoly(S.hecke_cuspidal(q));
      Poly<FiniteField> lifted;
      for (auto c : cp) lifted.push_back(E.from_int(static_cast<i64>(c)));
      REQUIRE(E.is_zero(poly_eval(E, lifted, a)));
    }
    // d is minimal: the eigenvalues generate F_{ell^d}.
    int gen = 1;
    for (auto [q, a] : e.eigenvalues) {
      auto cp = element_charpoly(E, a);
      auto fac = factor_poly(PrimeField(11), cp).factors;
      gen = std::max(gen, poly_deg(PrimeField(11), fac[0].first));
    }
    CHECK(gen == e.degree());
  }
}

TEST_CASE("multiplicity two, Frobenius closure and old/new accounting") {
  const u64 ell = 10007;
  for (u64 N = 1; N <= 50; ++N) {
    auto S = build_space(N, 2, ell);
    if (S.cuspidal_dim() == 0) continue;
    auto systems = decompose(S);
    std::size_t total = 0;
    for (auto& e : systems) {
      total += e.degree() * e.multiplicity;
      // Conjugates never form a new orbit.
      auto conj = frobenius_conjugate(e);
      int matches = 0;
      for (auto& o : systems) matches += systems_match(conj, o);
      REQUIRE(matches == 1);
      if (e.is_new) {
        REQUIRE(e.multiplicity == 2);
      } else {
        // An old system from new level M occurs with multiplicity 2 * #divisors(N/M).
        bool found = false;
        for (u64 M : divisors(N)) {
          if (M == N) continue;
          for (auto& o : newform_orbits(M, 2, ell)) {
            if (systems_match(e, o.eigensystem)) {
              REQUIRE(e.multiplicity == 2 * static_cast<int>(divisors(N / M).size()));
              found = true;
            }
          }
        }
        REQUIRE(found);
      }
    }
    REQUIRE(total == S.cuspidal_dim());
  }
}

TEST_CASE("degeneracy consistency: lower-level systems occur at level N") {
  const u64 ell = 13;
  for (u64 N : {22, 33, 37 * 1, 44, 46, 50}) {
    auto high = decompose(build_space(N, 2, ell));
    for (u64 M : divisors(N)) {
      if (M == N) continue;
      auto sm = build_space(M, 2, ell);
      if (sm.cuspidal_dim() == 0) continue;
      for (auto& e : decompose(sm)) {
        bool found = false;
        for (auto& h : high) found = found || systems_match(e, h);
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("decompose is deterministic") {
  auto a = newform_orbits(43, 2, 7);
  auto b = newform_orbits(43, 2, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].eigensystem.eigenvalues == b[i].eigensystem.eigenvalues);
  }
}
