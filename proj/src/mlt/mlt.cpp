#include "cchain/mlt/mlt.hpp"

#include <algorithm>

#include "cchain/core/error.hpp"

namespace cchain {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::MLT1: return "MLT1";
    case Theorem::MLT2: return "MLT2";
    case Theorem::MLT3: return "MLT3";
    case Theorem::MLT4: return "MLT4";
    case Theorem::None: return "None";
  }
  return "?";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "Pass";
    case CheckStatus::Fail: return "Fail";
    case CheckStatus::Assumed: return "Assumed";
    case CheckStatus::Unknown: return "Unknown";
  }
  return "?";
}

int MltVerdict::count(CheckStatus s) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; }));
}

namespace {

CheckStatus pass_if(bool b) { return b ? CheckStatus::Pass : CheckStatus::Fail; }

MltVerdict conclude(Theorem t, std::vector<HypothesisCheck> checks) {
  MltVerdict v;
  v.checks = std::move(checks);
  bool ok = std::all_of(v.checks.begin(), v.checks.end(), [](const auto& c) {
    return c.status == CheckStatus::Pass || c.status == CheckStatus::Assumed;
  });
  v.theorem = ok ? t : Theorem::None;
  return v;
}

HypothesisCheck splits_in_F() { return {"ell splits completely in F", CheckStatus::Pass, "F = Q"}; }

HypothesisCheck restriction_irreducible(const EdgeContext& c) {
  const auto& im = c.image;
  if (im.kind == ImageKind::Large) return {"restriction to F(zeta_ell) absolutely irreducible", CheckStatus::Pass, "large image"};
  if (im.kind == ImageKind::Dihedral) {
    bool bad = im.discriminant == ell_star(c.ell) || im.discriminant == -ell_star(c.ell);
    return {"restriction to F(zeta_ell) absolutely irreducible", pass_if(!bad),
            bad ? "dihedral field inside the cyclotomic field" : "dihedral field not cyclotomic"};
  }
  return {"restriction to F(zeta_ell) absolutely irreducible", CheckStatus::Fail, to_string(im) + " image"};
}

HypothesisCheck adequacy_check(const EdgeContext& c) {
  auto a = is_adequate(c.image, c.ell, c.good_dihedral_context);
  if (a.adequate == Tri::Unknown) return {"adequate", CheckStatus::Unknown, a.reason};
  if (a.adequate == Tri::False) return {"adequate", CheckStatus::Fail, a.reason};
  if (c.ell == 3 || c.ell == 5) return {"adequate", CheckStatus::Assumed, a.reason};
  return {"adequate", CheckStatus::Pass, a.reason};
}

HypothesisCheck ordinary_check(const std::string& side, const std::optional<bool>& flag) {
  if (!flag) return {"ordinary above ell (" + side + ")", CheckStatus::Unknown, "not supplied"};
  return {"ordinary above ell (" + side + ")", pass_if(*flag), "supplied"};
}

}  // namespace

MltVerdict check_mlt1(const EdgeContext& c) {
  std::vector<HypothesisCheck> ch;
  ch.push_back({"ell >= 5", pass_if(c.ell >= 5), ""});
  ch.push_back(splits_in_F());
  bool weights_ok = c.k1 >= 2 && c.k2 >= 2;
  ch.push_back({"potentially semistable with distinct Hodge-Tate weights",
                weights_ok ? CheckStatus::Assumed : CheckStatus::Fail, "weight k >= 2 used as proxy"});
  ch.push_back(restriction_irreducible(c));
  ch.push_back({"residually modular", pass_if(c.residually_modular_witness), ""});
  return conclude(Theorem::MLT1, std::move(ch));
}

MltVerdict check_mlt2(const EdgeContext& c) {
  std::vector<HypothesisCheck> ch;
  ch.push_back(splits_in_F());
  ch.push_back({"irreducible", pass_if(c.image.kind != ImageKind::Reducible), to_string(c.image)});
  ch.push_back(adequacy_check(c));
  ch.push_back(ordinary_check("left", c.ordinary_left));
  ch.push_back(ordinary_check("right", c.ordinary_right));
  return conclude(Theorem::MLT2, std::move(ch));
}

MltVerdict check_mlt3(const EdgeContext& c) {
  const bool fl = std::max(c.k1, c.k2) <= static_cast<i64>(c.ell) - 1;
  if (c.fontaine_laffaille && *c.fontaine_laffaille != fl)
    throw DomainError("supplied Fontaine-Laffaille flag contradicts max(k1, k2) <= ell - 1");
  std::vector<HypothesisCheck> ch;
  if (c.ell >= 7)
    ch.push_back({"ell >= 7 or small ell with good dihedral prime", CheckStatus::Pass, ""});
  else if ((c.ell == 3 || c.ell == 5) && c.good_dihedral_context)
    ch.push_back({"ell >= 7 or small ell with good dihedral prime", CheckStatus::Assumed, "adequacy via good dihedral prime"});
  else
    ch.push_back({"ell >= 7 or small ell with good dihedral prime", CheckStatus::Fail, ""});
  ch.push_back(adequacy_check(c));
  ch.push_back(restriction_irreducible(c));
  ch.push_back({"Fontaine-Laffaille weights", pass_if(fl), "max(k1, k2) <= ell - 1"});
  const bool mixed = c.ordinary_left && c.ordinary_right && *c.ordinary_left != *c.ordinary_right;
  ch.push_back({"potentially diagonalizable above ell on both sides", pass_if(!mixed),
                mixed ? "ordinary on one side only" : "Fontaine-Laffaille witness"});
  return conclude(Theorem::MLT3, std::move(ch));
}

MltVerdict check_mlt4(const EdgeContext& c) {
  std::vector<HypothesisCheck> ch;
  bool assumed = false;
  if (c.ell == 2) {
    ch.push_back({"odd residual characteristic", CheckStatus::Assumed, "characteristic 2 covered only by the assumption"});
    assumed = true;
  }
  ch.push_back({"irreducible", pass_if(c.image.kind != ImageKind::Reducible), to_string(c.image)});
  if (c.ell != 2) ch.push_back(adequacy_check(c));
  if (c.k1 == 2 && c.k2 == 2) {
    ch.push_back({"parallel weight 2", CheckStatus::Pass, "known theorem in parallel weight 2"});
  } else {
    ch.push_back({"mixed potentially diagonalizable / ordinary lifting", CheckStatus::Assumed, "unproven outside weight 2"});
    assumed = true;
  }
  MltVerdict v = conclude(Theorem::MLT4, std::move(ch));
  v.assumption_used = v.theorem == Theorem::MLT4 && assumed;
  return v;
}

MltVerdict best_verdict(const EdgeContext& c) {
  MltVerdict combined;
  for (auto* f : {check_mlt1, check_mlt2, check_mlt3, check_mlt4}) {
    MltVerdict v = f(c);
    if (v.theorem != Theorem::None) return v;
    for (auto& h : v.checks) combined.checks.push_back(h);
  }
  return combined;
}

namespace {

bool splits_everywhere_below(u64 q, u64 B) {
  for (u64 r : primes_up_to(B - 1))
    if (r != 2 && legendre(static_cast<i64>(r), q) != 1) return false;
  return true;
}

}  // namespace

GoodDihedralPair find_good_dihedral(u64 B, const std::set<u64>& forbidden,
                                    const std::function<bool(u64)>& image_witness, u64 cap) {
  if (B < 7) throw DomainError("good dihedral search needs B >= 7");
  u64 p = 0;
  for (u64 c = B + 1; c <= cap; ++c) {
    if (c % 4 == 1 && is_prime(c) && !forbidden.count(c) && image_witness(c)) {
      p = c;
      break;
    }
  }
  if (p == 0) throw DomainError("no auxiliary prime p found below the search cap " + std::to_string(cap));
  // q = -1 mod p and q = 1 mod 8 (p odd): q = r0 mod 8p.
  u64 r0 = 0;
  for (u64 t = 1; t <= 8; ++t)
    if ((t * p - 1) % 8 == 1) {
      r0 = t * p - 1;
      break;
    }
  for (u64 q = r0; q <= cap; q += 8 * p) {
    if (!is_prime(q) || forbidden.count(q)) continue;
    if (!splits_everywhere_below(q, B)) continue;
    GoodDihedralPair g{p, q, B, {}};
    g.certificates.push_back("p = " + std::to_string(p) + " = 1 mod 4, p > B");
    g.certificates.push_back("q = -1 mod p");
    g.certificates.push_back("q = 1 mod 8");
    for (u64 r : primes_up_to(B - 1))
      if (r != 2) g.certificates.push_back("(" + std::to_string(r) + "/q) = 1");
    return g;
  }
  throw DomainError("no good dihedral prime q found below the search cap " + std::to_string(cap));
}

std::vector<std::string> verify_good_dihedral(const GoodDihedralPair& g) {
  std::vector<std::string> bad;
  if (!is_prime(g.p) || g.p % 4 != 1) bad.push_back("p is not a prime = 1 mod 4");
  if (g.p <= g.B) bad.push_back("p <= B");
  if (!is_prime(g.q)) bad.push_back("q is not prime");
  if ((g.q + 1) % g.p != 0) bad.push_back("q != -1 mod p");
  if (g.q % 8 != 1) bad.push_back("q != 1 mod 8");
  for (u64 r : primes_up_to(g.B - 1))
    if (r != 2 && legendre(static_cast<i64>(r), g.q) != 1) bad.push_back("(" + std::to_string(r) + "/q) != 1");
  return bad;
}

bool level_raising_condition(u64 q, u64 ell, bool a_q_is_zero) {
  if (q == ell) throw DomainError("level raising needs q != ell");
  return (q + 1) % ell == 0 && a_q_is_zero;
}

}  // namespace cchain
