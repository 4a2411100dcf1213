// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cchain/graph/graph.hpp"
#include "cchain/modsym/modsym.hpp"
#include "cchain/planner/planner.hpp"
#include "cchain/store/serialize.hpp"
#include "oracles/descriptors.hpp"
#include "oracles/graphs.hpp"
#include "oracles/number_theory.hpp"
#include "oracles/qexp.hpp"

using namespace cchain;

namespace {

int failures = 0;

// body returns an empty string on success, otherwise the reason.
void criterion(const std::string& name, double limit_s, const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string why;
  try {
    why = body();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (why.empty() && s > limit_s) {
    std::ostringstream o;
    o << "took " << s << " s, limit " << limit_s << " s";
    why = o.str();
  }
  bool ok = why.empty();
  if (!ok) ++failures;
  std::printf("%s  %-28s %7.2f s / %.0f s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), s, limit_s, ok ? "" : "  ", why.c_str());
  std::fflush(stdout);
}

std::string dimension_pins() {
  struct Pin {
    u64 N;
    int k;
    i64 dim;
  };
  const Pin pins[] = {{11, 2, 1}, {23, 2, 2}, {37, 2, 2}, {67, 2, 5}, {1, 12, 1}};
  const u64 chars[] = {13, 17, 10007};
  for (const auto& p : pins) {
    i64 oracle_dim = oracle::cusp_form_dimension(static_cast<i64>(p.N), p.k);
    if (oracle_dim != p.dim) return "oracle disagrees with pin at N=" + std::to_string(p.N);
    for (u64 ell : chars) {
      // every new system occupies multiplicity-many dimensions over its field; halve for the +/- pair
      i64 weighted = 0;
      for (const auto& o : newform_orbits(p.N, p.k, ell))
        weighted += static_cast<i64>(o.galois_orbit_size()) * o.eigensystem.multiplicity / 2;
      if (weighted != p.dim)
        return "N=" + std::to_string(p.N) + " k=" + std::to_string(p.k) + " ell=" + std::to_string(ell) +
               ": weighted " + std::to_string(weighted) + " vs " + std::to_string(p.dim);
      if (static_cast<i64>(build_space(p.N, p.k, ell).cuspidal_dim()) != 2 * oracle_dim) return "cuspidal dimension mismatch";
    }
  }
  return "";
}

std::string hecke_commutativity() {
  std::mt19937_64 rng(0xC0FFEE);
  int done = 0;
  while (done < 20) {
    u64 N = std::uniform_int_distribution<u64>(1, 60)(rng);
    int k = std::uniform_int_distribution<int>(0, 1)(rng) ? 4 : 2;
    u64 ell;
    do ell = std::uniform_int_distribution<u64>(5, 500)(rng);
    while (!oracle::trial_prime(ell) || N % ell == 0);
    auto s = build_space(N, k, ell);
    std::vector<Matrix<PrimeField>> T;
    for (u64 q : {2, 3, 5, 7, 11, 13})
      if (q != ell) T.push_back(s.hecke_full(q));
    for (std::size_t i = 0; i < T.size(); ++i)
      for (std::size_t j = i + 1; j < T.size(); ++j)
        if (!(mat_mul(T[i], T[j]) == mat_mul(T[j], T[i])))
          return "T operators fail to commute at N=" + std::to_string(N) + " k=" + std::to_string(k) + " ell=" + std::to_string(ell);
    ++done;
  }
  return "";
}

std::string showcase() {
  const auto& delta = find_class("delta");
  const auto& f11 = find_class("f11");
  auto a = class_orbits(delta, 11), b = class_orbits(f11, 11);
  if (a.size() != 1 || b.size() != 1) return "expected one reduction each mod 11";
  auto e = check_congruence(a[0], b[0], 11);
  if (e.status != CongruenceStatus::Certified) return "not certified mod 11";
  std::vector<u64> want;
  for (u64 q = 2; q <= cross_bound(1, 12, 11, 2); ++q)
    if (oracle::trial_prime(q) && q != 11) want.push_back(q);
  if (e.tested_primes != want) return "tested primes do not cover every q <= cross_bound";
  auto t = oracle::tau(20);
  auto f = oracle::f11(20);
  for (u64 q : want)
    if (oracle::mod(t[q], 11) != oracle::mod(f[q], 11)) return "oracle expansions disagree at " + std::to_string(q);
  if (oracle::mod(t[2], 11) != 9 || oracle::mod(t[3], 11) != 10) return "spot values a_2, a_3";
  auto v = edge_verdict(e, a[0].eigensystem);
  if (v.theorem != Theorem::MLT1 || v.count(CheckStatus::Fail) != 0) return "verdict is " + to_string(v.theorem);
  // at 7 the weights 12 and 2 are incompatible, so no edge can be certified
  try {
    auto e7 = check_congruence(class_orbits(delta, 7)[0], class_orbits(f11, 7)[0], 7);
    if (e7.status == CongruenceStatus::Certified) return "certified mod 7";
  } catch (const DomainError&) {
  }
  std::vector<NewformOrbit> both = class_orbits(delta, 7);
  for (auto& o : class_orbits(f11, 7)) both.push_back(o);
  if (!scan_congruences(both, {7}).empty()) return "scan found an edge mod 7";
  return "";
}

std::string image_pins() {
  // handwritten tau(q) for the cross-check, independent of both engine and eta products
  const std::pair<u64, i64> tau[] = {{2, -24}, {3, 252}, {5, 4830}, {7, -16744}, {13, -577738}};
  auto tmod = [](i64 x, u64 m) { return static_cast<u64>(((x % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m)); };
  struct Case {
    u64 ell;
    std::string want;
  };
  for (const Case& c : {Case{691, "Reducible"}, Case{23, "Dihedral(-23)"}, Case{11, "Large"}}) {
    auto os = newform_orbits(1, 12, c.ell);
    if (os.size() != 1) return "expected one system mod " + std::to_string(c.ell);
    const auto& es = os[0].eigensystem;
    for (auto [q, v] : tau)
      if (q != c.ell && es.eigenvalues.at(q).c[0] != tmod(v, c.ell)) return "engine tau mismatch at " + std::to_string(q);
    auto got = to_string(classify_image(es));
    if (got.rfind(c.want, 0) != 0) return "mod " + std::to_string(c.ell) + " gave " + got;
  }
  // table cross-checks of each pattern
  for (auto [q, v] : tau) {
    u64 eis = (1 + oracle::slow_pow(q, 11, 691)) % 691;
    if (tmod(v, 691) != eis) return "Eisenstein pattern fails at " + std::to_string(q);
    if (oracle::euler_legendre(-23, q) == -1 && tmod(v, 23) != 0) return "CM pattern fails at " + std::to_string(q);
  }
  bool some_inert_nonzero = false, some_non_eis = false;
  for (auto [q, v] : tau) {
    if (q == 11) continue;
    if (oracle::euler_legendre(-11, q) == -1 && tmod(v, 11) != 0) some_inert_nonzero = true;
    bool eis = false;
    for (u64 i = 0; i <= 5; ++i)
      if (tmod(v, 11) == (oracle::slow_pow(q, i, 11) + oracle::slow_pow(q, 11 - i, 11)) % 11) eis = true;
    if (!eis) some_non_eis = true;
  }
  if (!some_inert_nonzero || !some_non_eis) return "table does not rule out reducible/dihedral mod 11";
  return "";
}

std::string good_dihedral() {
  const u64 B = 10;
  auto g = find_good_dihedral(B, {}, [](u64) { return true; });
  auto good_q = [&](u64 p, u64 q) {
    if (!oracle::trial_prime(q) || (q + 1) % p != 0 || q % 8 != 1) return false;
    for (u64 r = 3; r < B; r += 2)
      if (oracle::trial_prime(r) && oracle::euler_legendre(static_cast<i64>(r), q) != 1) return false;
    return true;
  };
  if (!oracle::trial_prime(g.p) || g.p % 4 != 1 || g.p <= B) return "p condition";
  if (!good_q(g.p, g.q)) return "q conditions";
  for (u64 p = B + 1; p < g.p; ++p)
    if (oracle::trial_prime(p) && p % 4 == 1) return "a smaller p exists: " + std::to_string(p);
  for (u64 q = 2; q < g.q; ++q)
    if (good_q(g.p, q)) return "a smaller q exists: " + std::to_string(q);
  return "";
}

std::string mazur() {
  std::string findings;
  for (u64 N = 2; N <= 67; ++N) {
    if (!oracle::trial_prime(N)) continue;
    auto r = mazur_report(N, 2, 50);
    if (!r.connected) {
      auto again = mazur_report(N, 2, 50);
      bool same = to_json(again).dump() == to_json(r).dump();
      findings += " N=" + std::to_string(N) + " disconnected for ell <= 50 (" + std::to_string(r.components.size()) +
                  " blocks" + (same ? ", reproducible" : ", NOT reproducible") + ")";
    }
  }
  return findings;
}

std::string plan_problems(const ChainPlan& plan) {
  u64 aux = plan_aux(plan);
  if (!aux) return "no final lift";
  SystemDescriptor cur = plan.start;
  auto m = termination_measure(cur, aux);
  for (const auto& [move, after] : plan.steps) {
    if (move.verdict.theorem == Theorem::None) return to_string(move.kind) + " has no lifting theorem";
    cur = apply_move(cur, move);
    if (!(cur == after)) return "replay differs after " + to_string(move.kind);
    auto next = termination_measure(cur, aux);
    if (!(next < m)) return "measure did not decrease at " + to_string(move.kind);
    m = next;
  }
  if (!is_safe_form(plan.final_state(), aux)) return "final shape is not GoodDihedral plus aux";
  return "";
}

std::string planner() {
  std::mt19937_64 rng(0xD1CE);
  for (int i = 0; i < 50; ++i) {
    auto d = oracle::random_descriptor(rng);
    auto why = plan_problems(plan_to_safe_form(d, 30));
    if (!why.empty()) return "descriptor " + to_json(d).dump() + ": " + why;
  }
  return "";
}

std::string connect_determinism() {
  std::mt19937_64 rng(0xBEEF);
  for (int i = 0; i < 20; ++i) {
    auto a = oracle::random_descriptor(rng);
    auto b = oracle::random_descriptor(rng);
    auto [pa, pb] = connect(a, b, 30);
    for (const auto* p : {&pa, &pb}) {
      auto why = plan_problems(*p);
      if (!why.empty()) return why;
    }
    if (plan_aux(pa) != plan_aux(pb)) return "aux primes differ";
    if (!(pa.final_state() == pb.final_state())) return "final descriptors differ";
    int gd = 0;
    for (const auto& [r, t] : pa.final_state().conductor) gd += t.kind == LocalKind::GoodDihedral;
    if (gd != 1) return "final state lacks a single good-dihedral prime";
    auto [qa, qb] = connect(a, b, 30);
    if (to_json(qa).dump() != to_json(pa).dump() || to_json(qb).dump() != to_json(pb).dump()) return "not deterministic";
  }
  return "";
}

std::string graph_oracles() {
  std::mt19937_64 rng(0x6A4F);
  for (int i = 0; i < 100; ++i) {
    auto g = oracle::random_graph(rng);
    if (int bad = oracle::graph_mismatches(g)) return "graph " + std::to_string(i) + ": " + std::to_string(bad) + " mismatches";
  }
  return "";
}

}  // namespace

int main() {
  criterion("dimension pins", 10, dimension_pins);
  criterion("Hecke commutativity", 60, hecke_commutativity);
  criterion("congruence showcase", 10, showcase);
  criterion("image pins", 10, image_pins);
  criterion("good-dihedral sieve", 1, good_dihedral);
  criterion("Mazur connectedness", 1800, mazur);
  criterion("planner replay+termination", 10, planner);
  criterion("connect determinism", 5, connect_determinism);
  criterion("graph oracles", 5, graph_oracles);
  return failures;
}
