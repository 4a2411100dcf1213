#include "cchain/planner/planner.hpp"

#include <algorithm>
#include <set>

#include "cchain/arith/primes.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::MakeNonDihedral: return "MakeNonDihedral";
    case MoveKind::ToParallelWeight2: return "ToParallelWeight2";
    case MoveKind::AddGoodDihedral: return "AddGoodDihedral";
    case MoveKind::KillTamePart: return "KillTamePart";
    case MoveKind::TameifyWild: return "TameifyWild";
    case MoveKind::MoveSteinbergToSplit: return "MoveSteinbergToSplit";
    case MoveKind::KillSteinberg: return "KillSteinberg";
    case MoveKind::FinalWeight2Lift: return "FinalWeight2Lift";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& rule, const std::string& what) { throw DomainError(rule + ": " + what); }

std::optional<std::pair<u64, LocalType>> good_dihedral_entry(const SystemDescriptor& d) {
  for (const auto& [q, t] : d.conductor)
    if (t.kind == LocalKind::GoodDihedral) return std::make_pair(q, t);
  return std::nullopt;
}

bool has_characters(const SystemDescriptor& d) {
  return std::any_of(d.conductor.begin(), d.conductor.end(), [](const auto& e) { return e.second.has_character(); });
}

bool has_steinberg(const SystemDescriptor& d) {
  return std::any_of(d.conductor.begin(), d.conductor.end(),
                     [](const auto& e) { return e.second.kind == LocalKind::Steinberg; });
}

u64 remove_prime_part(u64 n, u64 p) {
  while (n % p == 0) n /= p;
  return n;
}

// Every produced system is a new lift: its coefficient field is no longer known, and
// the twisting character only survives at primes still carrying a character.
void settle(SystemDescriptor& d) {
  d.coeff_degree.reset();
  u64 t = 1;
  for (auto [r, e] : factorize(d.twist_conductor)) {
    auto it = d.conductor.find(r);
    if (it != d.conductor.end() && it->second.has_character()) t *= r;
  }
  d.twist_conductor = t;
}

void require_good_dihedral(const SystemDescriptor& d, const std::string& rule) {
  if (!good_dihedral_entry(d)) fail(rule, "needs a good-dihedral prime in the conductor first");
}

void require_fresh_prime(const SystemDescriptor& d, u64 r, const std::string& rule, const std::string& role) {
  if (!is_prime(r)) fail(rule, role + " " + std::to_string(r) + " is not prime");
  if (d.conductor.count(r)) fail(rule, role + " " + std::to_string(r) + " already divides the conductor");
}

}  // namespace

void validate(const SystemDescriptor& d) {
  const std::string rule = "descriptor";
  if (d.field_degree != 1) fail(rule, "only field degree 1 is supported");
  if (d.weight < 2 || d.weight % 2 != 0) fail(rule, "weight must be an even integer >= 2");
  if (d.coeff_degree && *d.coeff_degree == 0) fail(rule, "coefficient degree must be positive");
  int gd = 0;
  for (const auto& [r, t] : d.conductor) {
    if (!is_prime(r)) fail(rule, "conductor key " + std::to_string(r) + " is not prime");
    if (t.has_character()) {
      if (t.char_order < 2) fail(rule, "character order at " + std::to_string(r) + " must be at least 2");
      if (t.wild != (t.char_order % r == 0))
        fail(rule, "wild flag at " + std::to_string(r) + " must hold exactly when " + std::to_string(r) + " divides the character order");
    }
    if (t.kind == LocalKind::GoodDihedral) {
      ++gd;
      if (!is_prime(t.p) || t.p % 4 != 1 || t.p <= t.B)
        fail(rule, "good-dihedral character order must be a prime = 1 mod 4 above the bound");
    }
    if (t.kind == LocalKind::Steinberg && d.dihedral) fail(rule, "a dihedral system has no Steinberg primes");
  }
  if (gd > 1) fail(rule, "at most one good-dihedral entry");
  if (d.twist_conductor == 0) fail(rule, "twist conductor must be positive");
  for (auto [r, e] : factorize(d.twist_conductor)) {
    if (e > 1) fail(rule, "twist conductor must be squarefree");
    auto it = d.conductor.find(r);
    if (it == d.conductor.end() || !it->second.has_character())
      fail(rule, "twist prime " + std::to_string(r) + " must carry a principal series or supercuspidal entry");
  }
}

SystemDescriptor apply_move(const SystemDescriptor& d, const ChainMove& m) {
  SystemDescriptor out = d;
  const std::string rule = to_string(m.kind);
  switch (m.kind) {
    case MoveKind::MakeNonDihedral: {
      if (!d.dihedral) fail(rule, "system is not dihedral");
      if (!is_prime(m.mod) || m.mod < 7 || d.conductor.count(m.mod)) fail(rule, "congruence prime must be >= 7 and unramified");
      require_fresh_prime(d, m.at, rule, "Steinberg prime");
      if ((m.at + 1) % m.mod != 0) fail(rule, "Steinberg prime must be -1 mod the congruence prime");
      out.conductor[m.at] = LocalType::steinberg();
      out.dihedral = false;
      break;
    }
    case MoveKind::ToParallelWeight2: {
      if (d.weight == 2) fail(rule, "weight is already 2");
      if (d.dihedral) fail(rule, "system must be non-dihedral");
      if (!is_prime(m.mod) || m.mod < 7 || m.mod <= static_cast<u64>(d.weight) || d.conductor.count(m.mod))
        fail(rule, "congruence prime must be >= 7, exceed the weight and be unramified");
      out.weight = 2;
      break;
    }
    case MoveKind::AddGoodDihedral: {
      if (d.weight != 2) fail(rule, "needs weight 2");
      if (d.dihedral) fail(rule, "system must be non-dihedral");
      if (good_dihedral_entry(d)) fail(rule, "a good-dihedral prime is already present");
      if (!m.pair) fail(rule, "missing good-dihedral pair");
      auto problems = verify_good_dihedral(*m.pair);
      if (!problems.empty()) fail(rule, problems.front());
      if (m.mod != m.pair->p) fail(rule, "congruence prime must be the pair's p");
      require_fresh_prime(d, m.pair->q, rule, "good-dihedral prime");
      out.conductor[m.pair->q] = LocalType::good_dihedral(m.pair->p, m.pair->B);
      break;
    }
    case MoveKind::KillTamePart: {
      require_good_dihedral(d, rule);
      auto it = d.conductor.find(m.at);
      if (!is_prime(m.mod) || it == d.conductor.end() || !it->second.has_character() || it->second.wild ||
          it->second.char_order % m.mod != 0)
        fail(rule, "the entry at " + std::to_string(m.at) + " must be tame with order divisible by " + std::to_string(m.mod));
      for (auto e = out.conductor.begin(); e != out.conductor.end();) {
        if (e->second.has_character() && !e->second.wild) {
          e->second.char_order = remove_prime_part(e->second.char_order, m.mod);
          if (e->second.char_order == 1) {
            e = out.conductor.erase(e);
            continue;
          }
        }
        ++e;
      }
      break;
    }
    case MoveKind::TameifyWild: {
      require_good_dihedral(d, rule);
      auto it = d.conductor.find(m.at);
      if (it == d.conductor.end() || !it->second.has_character() || !it->second.wild)
        fail(rule, "no wild entry at " + std::to_string(m.at));
      if (m.mod != m.at) fail(rule, "congruence prime must be the residue characteristic");
      u64 rest = remove_prime_part(it->second.char_order, m.at);
      out.conductor[m.at] = rest > 1 ? LocalType::principal_series(rest, false) : LocalType::steinberg();
      std::set<u64> seen;
      for (u64 r : m.twist_added) {
        require_fresh_prime(d, r, rule, "twist prime");
        if (r == 2 || !seen.insert(r).second) fail(rule, "twist primes must be distinct and odd");
        out.conductor[r] = LocalType::principal_series(2, false);
        out.twist_conductor *= r;
      }
      break;
    }
    case MoveKind::MoveSteinbergToSplit: {
      require_good_dihedral(d, rule);
      auto it = d.conductor.find(m.at);
      if (it == d.conductor.end() || it->second.kind != LocalKind::Steinberg)
        fail(rule, "no Steinberg entry at " + std::to_string(m.at));
      for (const auto& [r, t] : d.conductor)
        if (r == m.at && t.has_character()) fail(rule, "system must be unramified or Steinberg above the prime");
      require_fresh_prime(d, m.to, rule, "split prime");
      if (m.to < 5 || m.to >= good_dihedral_entry(d)->second.B)
        fail(rule, "split prime must be at least 5 and below the good-dihedral bound");
      if (m.mod != m.at) fail(rule, "congruence prime must be the moved prime");
      out.conductor.erase(m.at);
      out.conductor[m.to] = LocalType::steinberg();
      break;
    }
    case MoveKind::KillSteinberg: {
      require_good_dihedral(d, rule);
      auto it = d.conductor.find(m.at);
      if (it == d.conductor.end() || it->second.kind != LocalKind::Steinberg)
        fail(rule, "no Steinberg entry at " + std::to_string(m.at));
      if (m.at < 5) fail(rule, "residual characteristic must differ from 2 and 3");
      if (m.mod != m.at) fail(rule, "congruence prime must be the Steinberg prime");
      if (has_characters(d)) fail(rule, "all principal series and supercuspidal parts must be gone");
      out.conductor.erase(m.at);
      break;
    }
    case MoveKind::FinalWeight2Lift: {
      require_good_dihedral(d, rule);
      auto gd = *good_dihedral_entry(d);
      if (has_characters(d) || has_steinberg(d)) fail(rule, "system must be ramified only at the good-dihedral prime");
      require_fresh_prime(d, m.at, rule, "auxiliary prime");
      if (m.at <= gd.second.B || m.at % 4 != 1 || m.at == gd.second.p)
        fail(rule, "auxiliary prime must exceed the bound, be 1 mod 4 and differ from p");
      if (m.mod != m.at) fail(rule, "congruence prime must be the auxiliary prime");
      out.weight = 2;
      out.conductor[m.at] = LocalType::steinberg();
      break;
    }
  }
  settle(out);
  return out;
}

MltVerdict move_verdict(const SystemDescriptor& before, const ChainMove& m) {
  EdgeContext c;
  c.ell = m.mod;
  // A dihedral system's residual image is dihedral for a field unramified at the
  // congruence prime; its discriminant is not tracked (0 stands for unknown).
  c.image = before.dihedral ? ImageClass::dihedral(0) : ImageClass::large();
  c.k1 = before.weight;
  c.k2 = (m.kind == MoveKind::ToParallelWeight2 || m.kind == MoveKind::FinalWeight2Lift) ? 2 : before.weight;
  c.residually_modular_witness = true;
  c.good_dihedral_context = good_dihedral_entry(before).has_value() || m.kind == MoveKind::AddGoodDihedral;
  return best_verdict(c);
}

namespace {

struct Planner {
  explicit Planner(u64 bound) : B(bound) {}

  u64 B;
  std::vector<ChainPlan> plans;
  std::set<u64> seen;  // every conductor prime met along any plan
  u64 gd_p = 0;

  void note(const SystemDescriptor& d) {
    for (const auto& [r, t] : d.conductor) seen.insert(r);
  }

  void push(ChainPlan& plan, ChainMove m) {
    const SystemDescriptor& before = plan.final_state();
    m.verdict = move_verdict(before, m);
    SystemDescriptor after = apply_move(before, m);
    note(after);
    if (m.verdict.assumption_used) ++plan.assumption_count;
    plan.steps.emplace_back(std::move(m), std::move(after));
  }

  static u64 smallest_prime_from(u64 start, const std::function<bool(u64)>& ok) {
    for (u64 r = next_prime(start - 1);; r = next_prime(r))
      if (ok(r)) return r;
  }

  void opening(ChainPlan& plan) {
    const auto& d = plan.final_state();
    if (d.dihedral) {
      ChainMove m;
      m.kind = MoveKind::MakeNonDihedral;
      m.mod = smallest_prime_from(7, [&](u64 r) { return !d.conductor.count(r); });
      m.at = smallest_prime_from(2, [&](u64 r) { return (r + 1) % m.mod == 0 && !d.conductor.count(r); });
      m.audit = "level raising at a prime -1 mod the congruence prime adds a Steinberg prime";
      push(plan, m);
    }
    if (plan.final_state().weight != 2) {
      const auto& e = plan.final_state();
      ChainMove m;
      m.kind = MoveKind::ToParallelWeight2;
      m.mod = smallest_prime_from(7, [&](u64 r) { return r > static_cast<u64>(e.weight) && !e.conductor.count(r); });
      m.audit = "weight-two lift with the same ramification (existence asserted)";
      push(plan, m);
    }
  }

  void kill_tame(ChainPlan& plan) {
    for (;;) {
      const auto& d = plan.final_state();
      u64 best = 0, at = 0;
      for (const auto& [r, t] : d.conductor) {
        if (!t.has_character() || t.wild) continue;
        u64 f = factorize(t.char_order).front().first;
        if (best == 0 || f < best) {
          best = f;
          at = r;
        }
      }
      if (!best) return;
      ChainMove m;
      m.kind = MoveKind::KillTamePart;
      m.at = at;
      m.mod = best;
      m.audit = "congruence mod the order's prime drops that part of every tame character";
      push(plan, m);
    }
  }

  void middle(ChainPlan& plan) {
    kill_tame(plan);
    for (;;) {
      const auto& d = plan.final_state();
      auto it = std::find_if(d.conductor.begin(), d.conductor.end(),
                             [](const auto& e) { return e.second.has_character() && e.second.wild; });
      if (it == d.conductor.end()) break;
      ChainMove m;
      m.kind = MoveKind::TameifyWild;
      m.at = m.mod = it->first;
      for (u64 r = 3; m.twist_added.size() < 2; r = next_prime(r))
        if (!d.conductor.count(r) && r != gd_p) m.twist_added.push_back(r);
      m.audit = "congruence mod the residue characteristic after a twist with squarefree conductor";
      push(plan, m);
      kill_tame(plan);
    }
    for (u64 s : {2, 3}) {
      const auto& d = plan.final_state();
      auto it = d.conductor.find(s);
      if (it == d.conductor.end() || it->second.kind != LocalKind::Steinberg) continue;
      ChainMove m;
      m.kind = MoveKind::MoveSteinbergToSplit;
      m.at = m.mod = s;
      m.to = smallest_prime_from(5, [&](u64 r) { return !d.conductor.count(r); });
      if (m.to >= B) fail(to_string(m.kind), "no unramified prime between 5 and the bound " + std::to_string(B));
      m.audit = "Steinberg moved to a prime split in the good-dihedral field";
      push(plan, m);
    }
    for (;;) {
      const auto& d = plan.final_state();
      auto it = std::find_if(d.conductor.begin(), d.conductor.end(),
                             [](const auto& e) { return e.second.kind == LocalKind::Steinberg; });
      if (it == d.conductor.end()) break;
      ChainMove m;
      m.kind = MoveKind::KillSteinberg;
      m.at = m.mod = it->first;
      m.audit = "level lowering at a Steinberg prime of residual characteristic >= 5";
      push(plan, m);
    }
  }

  std::vector<ChainPlan> run(const std::vector<SystemDescriptor>& starts) {
    for (const auto& d : starts) {
      validate(d);
      ChainPlan p;
      p.start = d;
      note(d);
      plans.push_back(std::move(p));
    }
    for (auto& p : plans) opening(p);

    // one good-dihedral pair for everyone
    std::optional<std::pair<u64, LocalType>> shared;
    for (auto& p : plans) {
      auto g = good_dihedral_entry(p.final_state());
      if (!g) continue;
      if (shared && !(*shared == *g)) throw DomainError("AddGoodDihedral: inputs carry different good-dihedral primes");
      shared = g;
    }
    GoodDihedralPair pair;
    if (shared) {
      pair.q = shared->first;
      pair.p = shared->second.p;
      pair.B = shared->second.B;
    } else {
      pair = find_good_dihedral(B, seen, [](u64) { return true; });
    }
    gd_p = pair.p;
    for (auto& p : plans) {
      if (good_dihedral_entry(p.final_state())) continue;
      ChainMove m;
      m.kind = MoveKind::AddGoodDihedral;
      m.mod = pair.p;
      m.pair = pair;
      m.audit = "congruence mod p with a system locally good-dihedral at q";
      push(p, m);
    }
    B = pair.B;
    for (auto& p : plans) middle(p);

    u64 aux = smallest_prime_from(B + 1, [&](u64 r) { return r % 4 == 1 && !seen.count(r) && r != pair.p && r != pair.q; });
    for (auto& p : plans) {
      ChainMove m;
      m.kind = MoveKind::FinalWeight2Lift;
      m.at = m.mod = aux;
      m.audit = "weight-two lift at an auxiliary split prime";
      push(p, m);
    }
    return std::move(plans);
  }
};

}  // namespace

ChainPlan plan_to_safe_form(const SystemDescriptor& d, u64 B) { return Planner(B).run({d}).front(); }

std::pair<ChainPlan, ChainPlan> connect(const SystemDescriptor& d1, const SystemDescriptor& d2, u64 B) {
  auto plans = Planner(B).run({d1, d2});
  return {std::move(plans[0]), std::move(plans[1])};
}

TerminationMeasure termination_measure(const SystemDescriptor& d, u64 aux) {
  TerminationMeasure m;
  m.dihedral = d.dihedral;
  m.weight_not_two = d.weight != 2;
  m.lacks_good_dihedral = !good_dihedral_entry(d);
  for (const auto& [r, t] : d.conductor) {
    if (t.has_character()) m.characters.emplace_back(t.wild, t.char_order);
    if (t.kind == LocalKind::Steinberg) {
      if (r <= 3) ++m.small_steinberg;
      if (r != aux) ++m.other_steinberg;
    }
  }
  std::sort(m.characters.rbegin(), m.characters.rend());
  auto it = d.conductor.find(aux);
  m.aux_missing = !(it != d.conductor.end() && it->second.kind == LocalKind::Steinberg);
  return m;
}

bool is_safe_form(const SystemDescriptor& d, u64 aux) {
  if (d.weight != 2 || d.dihedral) return false;
  int gd = 0;
  for (const auto& [r, t] : d.conductor) {
    if (t.kind == LocalKind::GoodDihedral)
      ++gd;
    else if (!(t.kind == LocalKind::Steinberg && r == aux))
      return false;
  }
  return gd == 1;
}

u64 plan_aux(const ChainPlan& p) {
  if (!p.steps.empty() && p.steps.back().first.kind == MoveKind::FinalWeight2Lift) return p.steps.back().first.at;
  return 0;
}

}  // namespace cchain
