#include <random>

#include "cchain/eigen/classes.hpp"
#include "cchain/image/image.hpp"
#include "cchain/mlt/mlt.hpp"
#include "doctest.h"
#include "oracles/number_theory.hpp"

using namespace cchain;

namespace {

EigenSystem synthetic(u64 N, int k, u64 ell, const std::function<i64(u64)>& a) {
  EigenSystem e;
  e.level = N;
  e.weight = k;
  e.characteristic = ell;
  e.value_field = FiniteField::canonical(ell, 1);
  e.bound = 60;
  for (u64 q : primes_up_to(60))
    if (N % q != 0 && q != ell) e.eigenvalues[q] = e.value_field.from_int(a(q));
  return e;
}

EigenSystem delta_mod(u64 ell) { return class_reductions(find_class("delta"), ell).at(0); }

}  // namespace

TEST_CASE("image pins for Delta") {
  CHECK(classify_image(delta_mod(691)).kind == ImageKind::Reducible);
  auto d23 = classify_image(delta_mod(23));
  CHECK(d23.kind == ImageKind::Dihedral);
  CHECK(d23.discriminant == -23);
  CHECK(classify_image(delta_mod(11)).kind == ImageKind::Large);
  // Same answers from the direct mod-ell decomposition.
  CHECK(classify_image(decompose(build_space(1, 12, 691)).at(0)).kind == ImageKind::Reducible);
  CHECK(classify_image(decompose(build_space(1, 12, 23)).at(0)).discriminant == -23);
}

TEST_CASE("dihedral evidence holds at every inert prime") {
  auto e = delta_mod(23);
  auto c = classify_image(e);
  for (auto& [q, a] : e.eigenvalues)
    if (oracle::euler_legendre(-23, q) == -1) CHECK(e.value_field.is_zero(a));
}

TEST_CASE("classification is stable under Frobenius conjugation") {
  for (u64 ell : {7, 11, 13}) {
    for (auto& e : decompose(build_space(23, 2, ell))) {
      auto a = classify_image(e), b = classify_image(frobenius_conjugate(e));
      CHECK(to_string(a) == to_string(b));
    }
  }
}

TEST_CASE("synthetic Eisenstein and CM patterns") {
  for (u64 ell : {7, 11, 13, 17}) {
    for (int i = 0; i <= 1; ++i) {
      auto e = synthetic(11, 4, ell, [&](u64 q) { return static_cast<i64>(powmod(q, i, ell) + powmod(q, 3 - i, ell)); });
      auto c = classify_image(e);
      CHECK(c.kind == ImageKind::Reducible);
      CHECK(c.eisenstein_exponent == i);
    }
  }
  // CM by Q(sqrt(-7)) at level 49: zero at inert primes, generic elsewhere.
  auto e = synthetic(49, 2, 13, [](u64 q) { return oracle::euler_legendre(-7, q) == -1 ? 0 : static_cast<i64>(q % 5 + 3); });
  auto c = classify_image(e);
  CHECK(c.kind == ImageKind::Dihedral);
  CHECK(c.discriminant == -7);
  auto few = synthetic(1, 2, 13, [](u64) { return 1; });
  few.eigenvalues.erase(few.eigenvalues.begin(), std::next(few.eigenvalues.begin(), few.eigenvalues.size() - 4));
  CHECK_THROWS_AS(classify_image(few), DomainError);
}

TEST_CASE("adequacy rules") {
  CHECK(is_adequate(ImageClass::large(), 11, false).adequate == Tri::True);
  CHECK(is_adequate(ImageClass::large(), 5, false).adequate == Tri::False);
  CHECK(is_adequate(ImageClass::large(), 5, true).adequate == Tri::True);
  CHECK(is_adequate(ImageClass::reducible(), 13, true).adequate == Tri::False);
  CHECK(is_adequate(ImageClass::large(), 2, true).adequate == Tri::Unknown);
}

TEST_CASE("MLT1 examples") {
  EdgeContext c{.ell = 11, .image = ImageClass::large(), .k1 = 12, .k2 = 2};
  auto v = check_mlt1(c);
  CHECK(v.theorem == Theorem::MLT1);
  CHECK(v.count(CheckStatus::Fail) == 0);
  c.ell = 3;
  c.k1 = 2;
  CHECK(check_mlt1(c).theorem == Theorem::None);
  EdgeContext r{.ell = 691, .image = ImageClass::reducible(), .k1 = 12, .k2 = 12};
  CHECK(check_mlt1(r).theorem == Theorem::None);
  EdgeContext d{.ell = 23, .image = ImageClass::dihedral(-23), .k1 = 12, .k2 = 12};
  CHECK(check_mlt1(d).theorem == Theorem::None);  // -23 = 23*
  d.image = ImageClass::dihedral(-7);
  CHECK(check_mlt1(d).theorem == Theorem::MLT1);
}

TEST_CASE("MLT2 examples") {
  EdgeContext c{.ell = 11, .image = ImageClass::large(), .ordinary_left = true, .ordinary_right = true};
  CHECK(check_mlt2(c).theorem == Theorem::MLT2);
  c.ordinary_right = false;
  CHECK(check_mlt2(c).theorem == Theorem::None);
  c.ordinary_right = std::nullopt;
  CHECK(check_mlt2(c).theorem == Theorem::None);
  EdgeContext n{.ell = 5, .image = ImageClass::large(), .ordinary_left = true, .ordinary_right = true};
  CHECK(check_mlt2(n).theorem == Theorem::None);
}

TEST_CASE("MLT3 examples") {
  EdgeContext c{.ell = 13, .image = ImageClass::large(), .k1 = 12, .k2 = 2, .fontaine_laffaille = true};
  CHECK(check_mlt3(c).theorem == Theorem::MLT3);
  EdgeContext s{.ell = 7, .image = ImageClass::large(), .k1 = 12, .k2 = 2};
  CHECK(check_mlt3(s).theorem == Theorem::None);
  s.fontaine_laffaille = true;
  CHECK_THROWS_AS(check_mlt3(s), DomainError);
  EdgeContext g{.ell = 5, .image = ImageClass::large(), .good_dihedral_context = true, .fontaine_laffaille = true};
  auto v = check_mlt3(g);
  CHECK(v.theorem == Theorem::MLT3);
  CHECK(v.count(CheckStatus::Assumed) >= 1);
}

TEST_CASE("MLT4 examples and verdict order") {
  EdgeContext c{.ell = 7, .image = ImageClass::large()};
  auto v = check_mlt4(c);
  CHECK(v.theorem == Theorem::MLT4);
  CHECK_FALSE(v.assumption_used);
  c.k1 = 12;
  v = check_mlt4(c);
  CHECK(v.theorem == Theorem::MLT4);
  CHECK(v.assumption_used);
  EdgeContext r{.ell = 7, .image = ImageClass::reducible()};
  CHECK(check_mlt4(r).theorem == Theorem::None);

  EdgeContext showcase{.ell = 11, .image = ImageClass::large(), .k1 = 12, .k2 = 2};
  CHECK(best_verdict(showcase).theorem == Theorem::MLT1);
  EdgeContext mixed{.ell = 3, .image = ImageClass::large(), .ordinary_left = true, .ordinary_right = false,
                    .good_dihedral_context = true};
  CHECK(best_verdict(mixed).theorem == Theorem::MLT4);
  CHECK(best_verdict(r).theorem == Theorem::None);
}

TEST_CASE("verdict invariants over random contexts") {
  std::mt19937_64 rng(23);
  const std::vector<ImageClass> images{ImageClass::large(), ImageClass::reducible(), ImageClass::dihedral(-4),
                                       ImageClass::dihedral(-7), ImageClass::exceptional(ExceptionalGroup::S4)};
  const std::vector<u64> ells{2, 3, 5, 7, 11, 13};
  for (int t = 0; t < 2000; ++t) {
    EdgeContext c;
    c.ell = ells[rng() % ells.size()];
    c.image = images[rng() % images.size()];
    c.k1 = 2 * (1 + rng() % 6);
    c.k2 = 2 * (1 + rng() % 6);
    c.residually_modular_witness = rng() % 4 != 0;
    if (rng() % 2) c.ordinary_left = rng() % 2;
    if (rng() % 2) c.ordinary_right = rng() % 2;
    c.good_dihedral_context = rng() % 2;
    auto v = best_verdict(c);
    if (v.theorem != Theorem::None) REQUIRE(v.count(CheckStatus::Fail) == 0);
    if (v.theorem != Theorem::None) REQUIRE(v.count(CheckStatus::Unknown) == 0);
    if (check_mlt1(c).theorem == Theorem::MLT1) REQUIRE(v.theorem == Theorem::MLT1);
    REQUIRE(v.assumption_used == (v.theorem == Theorem::MLT4 && check_mlt4(c).assumption_used));
  }
}

namespace {

// Exhaustive search straight from the definition.
std::pair<u64, u64> brute_good_dihedral(u64 B, const std::set<u64>& forbidden) {
  u64 p = B + 1;
  while (!(p % 4 == 1 && oracle::trial_prime(p) && !forbidden.count(p))) ++p;
  for (u64 q = 2;; ++q) {
    if (!oracle::trial_prime(q) || forbidden.count(q)) continue;
    if ((q + 1) % p != 0 || q % 8 != 1) continue;
    bool ok = true;
    for (u64 r = 3; r < B; r += 2)
      if (oracle::trial_prime(r) && oracle::euler_legendre(r, q) != 1) ok = false;
    if (ok) return {p, q};
  }
}

}  // namespace

TEST_CASE("good dihedral sieve") {
  auto always = [](u64) { return true; };
  auto g = find_good_dihedral(10, {}, always);
  CHECK(g.p == 13);
  CHECK(verify_good_dihedral(g).empty());
  auto [bp, bq] = brute_good_dihedral(10, {});
  CHECK(g.p == bp);
  CHECK(g.q == bq);
  CHECK(find_good_dihedral(10, {13}, always).p == 17);
  CHECK_THROWS_AS(find_good_dihedral(10, {}, [](u64) { return false; }, 10000), DomainError);
  CHECK_THROWS_AS(find_good_dihedral(5, {}, always), DomainError);
  for (u64 B = 7; B <= 23; ++B) {
    auto h = find_good_dihedral(B, {}, always);
    REQUIRE(verify_good_dihedral(h).empty());
    auto [p, q] = brute_good_dihedral(B, {});
    REQUIRE(h.p == p);
    REQUIRE(h.q == q);
  }
}

TEST_CASE("level raising condition") {
  CHECK(level_raising_condition(13, 7, true));
  CHECK_FALSE(level_raising_condition(29, 7, true));
  CHECK_FALSE(level_raising_condition(13, 7, false));
}

TEST_CASE("sieve monotonicity in B holds only while p is unchanged") {
  auto always = [](u64) { return true; };
  auto prev = find_good_dihedral(7, {}, always);
  for (u64 B = 8; B <= 40; ++B) {
    auto g = find_good_dihedral(B, {}, always);
    if (g.p == prev.p) REQUIRE(g.q >= prev.q);
    prev = g;
  }
  // A change of p can lower q: B = 36 gives (37, 7504561), B = 37 gives (41, 7449289).
  CHECK(find_good_dihedral(37, {}, always).q < find_good_dihedral(36, {}, always).q);
}
