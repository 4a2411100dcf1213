#include "cchain/image/image.hpp"

#include <algorithm>
#include <cstdlib>

#include "cchain/core/error.hpp"

namespace cchain {

std::string to_string(const ImageClass& c) {
  switch (c.kind) {
    case ImageKind::Reducible:
      return "Reducible";
    case ImageKind::Dihedral:
      return "Dihedral(" + std::to_string(c.discriminant) + ")";
    case ImageKind::Exceptional:
      return std::string("Exceptional(") + (c.group == ExceptionalGroup::A4 ? "A4" : c.group == ExceptionalGroup::S4 ? "S4" : "A5") + ")";
    case ImageKind::Large:
      return "Large";
  }
  return "?";
}

i64 ell_star(u64 ell) {
  const i64 l = static_cast<i64>(ell);
  return ell % 4 == 1 ? l : -l;
}

std::vector<i64> fundamental_discriminants_dividing(u64 n) {
  std::vector<i64> odd_parts;
  bool has_two = false;
  for (auto [p, e] : factorize(n)) {
    if (p == 2)
      has_two = true;
    else
      odd_parts.push_back(ell_star(p));
  }
  std::vector<i64> two_parts{1};
  if (has_two) two_parts = {1, -4, 8, -8};
  std::vector<i64> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << odd_parts.size()); ++mask) {
    i64 d = 1;
    for (std::size_t i = 0; i < odd_parts.size(); ++i)
      if (mask >> i & 1) d *= odd_parts[i];
    for (i64 t : two_parts)
      if (d * t != 1) out.push_back(d * t);
  }
  std::sort(out.begin(), out.end(), [](i64 a, i64 b) {
    if (std::llabs(a) != std::llabs(b)) return std::llabs(a) < std::llabs(b);
    return a < b;
  });
  return out;
}

ImageClass classify_image(const EigenSystem& e) {
  const u64 ell = e.characteristic;
  const int k = e.weight;
  const auto& E = e.value_field;
  if (static_cast<i64>(ell) <= k - 2) throw DomainError("image classification needs ell > k - 2");
  if (e.eigenvalues.size() < 5)
    throw DomainError("only " + std::to_string(e.eigenvalues.size()) + " usable primes; at least 5 are needed to classify");

  // Reducible: a_q = q^i + q^(k-1-i) at every tabulated q.
  for (int i = 0; 2 * i <= k - 1; ++i) {
    bool all = true;
    for (auto& [q, a] : e.eigenvalues) {
      u64 v = (powmod(q % ell, i, ell) + powmod(q % ell, k - 1 - i, ell)) % ell;
      if (!(a == E.from_int(static_cast<i64>(v)))) {
        all = false;
        break;
      }
    }
    if (all) {
      ImageClass c = ImageClass::reducible(i);
      for (auto& [q, a] : e.eigenvalues)
        c.evidence.push_back({q, "a_q = q^" + std::to_string(i) + " + q^" + std::to_string(k - 1 - i)});
      return c;
    }
  }

  // Dihedral: a_q = 0 at every tabulated prime inert in Q(sqrt D).
  for (i64 D : fundamental_discriminants_dividing(e.level * ell)) {
    std::vector<ImageEvidence> ev;
    bool ok = true;
    for (auto& [q, a] : e.eigenvalues) {
      if (kronecker_prime(D, q) != -1) continue;
      if (!E.is_zero(a)) {
        ok = false;
        break;
      }
      ev.push_back({q, "inert in Q(sqrt(" + std::to_string(D) + ")) and a_q = 0"});
    }
    if (ok && ev.size() >= 2) {
      ImageClass c = ImageClass::dihedral(D);
      c.evidence = std::move(ev);
      return c;
    }
  }

  // Exceptional: every u_q = a_q^2 / q^(k-1) is a projective trace of an element of
  // order 1, 2, 3, 4 (S4) or 1, 2, 3, 5 (A5).
  const auto four = E.from_int(4), zero = E.zero(), one = E.one(), two = E.from_int(2);
  bool in_a4 = true, in_s4 = true, in_a5 = true;
  std::vector<ImageEvidence> ev;
  for (auto& [q, a] : e.eigenvalues) {
    auto u = E.mul(E.mul(a, a), E.inv(E.from_int(static_cast<i64>(powmod(q % ell, k - 1, ell)))));
    bool base = u == zero || u == one || u == four;
    bool five = E.is_zero(E.add(E.sub(E.mul(u, u), E.mul(E.from_int(3), u)), one));
    in_a4 = in_a4 && base;
    in_s4 = in_s4 && (base || u == two);
    in_a5 = in_a5 && (base || five);
    ev.push_back({q, "u_q = " + E.to_string(u)});
  }
  if (in_a4 || in_s4 || in_a5) {
    ImageClass c = ImageClass::exceptional(in_a4 ? ExceptionalGroup::A4 : in_s4 ? ExceptionalGroup::S4 : ExceptionalGroup::A5);
    c.evidence = std::move(ev);
    return c;
  }
  ImageClass c = ImageClass::large();
  c.evidence = std::move(ev);
  return c;
}

AdequacyVerdict is_adequate(const ImageClass& c, u64 ell, bool good_dihedral_context) {
  if (ell == 2) return {Tri::Unknown, "characteristic 2 is outside the adequacy criteria"};
  if (c.kind == ImageKind::Reducible) return {Tri::False, "reducible residual image"};
  if (ell >= 7) return {Tri::True, "ell >= 7: adequacy equals irreducibility"};
  if (good_dihedral_context) return {Tri::True, "ell in {3, 5} after adding a good dihedral prime"};
  return {Tri::False, "ell in {3, 5} requires a good dihedral prime"};
}

}  // namespace cchain
