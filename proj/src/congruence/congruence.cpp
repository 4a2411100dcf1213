#include "cchain/congruence/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "cchain/arith/factor.hpp"
#include "cchain/core/error.hpp"

namespace cchain {

std::string to_string(CongruenceStatus s) { return s == CongruenceStatus::Certified ? "Certified" : "Refuted"; }

u64 cross_bound(u64 N1, int k1, u64 N2, int k2) {
  return sturm_bound(std::lcm(N1, N2), std::max(k1, k2));
}

namespace {

ExtElem embed(const FiniteField& E, const FiniteField& src, const ExtElem& a, const ExtElem& gen) {
  ExtElem acc = E.zero(), power = E.one();
  for (int i = 0; i < src.degree(); ++i) {
    acc = E.add(acc, E.mul(E.from_int(static_cast<i64>(a.c[i])), power));
    power = E.mul(power, gen);
  }
  return acc;
}

std::vector<ExtElem> generator_images(const FiniteField& E, const FiniteField& src) {
  if (src.degree() == 1) return {E.zero()};  // only the constant coordinate is used
  Poly<FiniteField> m;
  for (u64 c : src.modulus()) m.push_back(E.from_int(static_cast<i64>(c)));
  return poly_roots(E, m);
}

}  // namespace

CongruenceEdge check_congruence(const NewformOrbit& a, const NewformOrbit& b, u64 ell, u64 bound) {
  const EigenSystem& x = a.eigensystem;
  const EigenSystem& y = b.eigensystem;
  if (x.characteristic != ell || y.characteristic != ell)
    throw DomainError("orbits are not both in characteristic " + std::to_string(ell));
  const int k1 = x.weight, k2 = y.weight;
  if (k1 != k2 && (std::abs(k1 - k2) % static_cast<i64>(ell - 1)) != 0)
    throw DomainError("weights " + std::to_string(k1) + " and " + std::to_string(k2) + " are not congruent modulo ell - 1 = " +
                      std::to_string(ell - 1));
  CongruenceEdge edge;
  edge.left = a.label;
  edge.right = b.label;
  edge.left_index = a.index;
  edge.right_index = b.index;
  edge.left_level = x.level;
  edge.right_level = y.level;
  edge.left_weight = k1;
  edge.right_weight = k2;
  edge.ell = ell;
  edge.bound_used = bound ? bound : cross_bound(x.level, k1, y.level, k2);

  std::vector<u64> primes;
  for (u64 q : primes_up_to(edge.bound_used)) {
    if (x.level % q == 0 || y.level % q == 0 || q == ell) continue;
    if (!x.eigenvalues.count(q)) throw DomainError("eigenvalue table of " + a.label + " stops below the bound " + std::to_string(edge.bound_used));
    if (!y.eigenvalues.count(q)) throw DomainError("eigenvalue table of " + b.label + " stops below the bound " + std::to_string(edge.bound_used));
    primes.push_back(q);
  }

  const int e = std::lcm(x.degree(), y.degree());
  if (e > kMaxExtDegree) throw DomainError("compositum degree exceeds supported maximum");
  const FiniteField E = FiniteField::canonical(ell, e);
  const ExtElem left_gen = generator_images(E, x.value_field).at(0);
  const auto right_gens = generator_images(E, y.value_field);

  std::size_t best_len = 0;
  int best_choice = -1;
  for (std::size_t r = 0; r < right_gens.size(); ++r) {
    std::size_t len = 0;
    while (len < primes.size()) {
      u64 q = primes[len];
      if (!(embed(E, x.value_field, x.eigenvalues.at(q), left_gen) == embed(E, y.value_field, y.eigenvalues.at(q), right_gens[r])))
        break;
      ++len;
    }
    if (best_choice < 0 || len > best_len) {
      best_len = len;
      best_choice = static_cast<int>(r);
    }
    if (len == primes.size()) break;
  }
  edge.embedding.degree = e;
  edge.embedding.compositum_modulus = E.modulus();
  edge.embedding.left_generator = E.coords(left_gen);
  edge.embedding.right_generator = E.coords(right_gens[best_choice]);
  edge.embedding.right_choice = best_choice;
  edge.tested_primes.assign(primes.begin(), primes.begin() + best_len);
  if (best_len == primes.size()) {
    edge.status = CongruenceStatus::Certified;
  } else {
    edge.status = CongruenceStatus::Refuted;
    edge.refuted_at = primes[best_len];
  }
  return edge;
}

namespace {

struct Task {
  std::size_t i, j;
  u64 ell;
};

std::vector<Task> scan_tasks(const std::vector<NewformOrbit>& orbits, const std::vector<u64>& ells) {
  std::vector<Task> tasks;
  for (u64 ell : ells)
    for (std::size_t i = 0; i < orbits.size(); ++i)
      for (std::size_t j = i + 1; j < orbits.size(); ++j) {
        if (orbits[i].label == orbits[j].label) continue;
        if (orbits[i].eigensystem.characteristic != ell || orbits[j].eigensystem.characteristic != ell) continue;
        tasks.push_back({i, j, ell});
      }
  return tasks;
}

std::optional<CongruenceEdge> run_task(const std::vector<NewformOrbit>& orbits, const Task& t) {
  const NewformOrbit* a = &orbits[t.i];
  const NewformOrbit* b = &orbits[t.j];
  if (b->label < a->label) std::swap(a, b);
  const int k1 = a->eigensystem.weight, k2 = b->eigensystem.weight;
  if (k1 != k2 && std::abs(k1 - k2) % static_cast<i64>(t.ell - 1) != 0) return std::nullopt;
  auto edge = check_congruence(*a, *b, t.ell);
  if (edge.status != CongruenceStatus::Certified) return std::nullopt;
  edge.mlt = edge_verdict(edge, a->eigensystem);
  return edge;
}

std::vector<CongruenceEdge> finish(std::vector<std::optional<CongruenceEdge>>& results) {
  std::vector<CongruenceEdge> edges;
  for (auto& r : results)
    if (r) edges.push_back(std::move(*r));
  auto key = [](const CongruenceEdge& e) { return std::tie(e.left, e.right, e.ell, e.left_index, e.right_index); };
  std::stable_sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  std::vector<CongruenceEdge> out;
  for (auto& e : edges) {
    if (!out.empty() && out.back().left == e.left && out.back().right == e.right && out.back().ell == e.ell) continue;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<CongruenceEdge> scan_congruences(const std::vector<NewformOrbit>& orbits, const std::vector<u64>& ells) {
  const auto tasks = scan_tasks(orbits, ells);
  std::vector<std::optional<CongruenceEdge>> results(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < tasks.size(); ++t) results[t] = run_task(orbits, tasks[t]);
  return finish(results);
}

std::vector<CongruenceEdge> scan_congruences_serial(const std::vector<NewformOrbit>& orbits,
                                                    const std::vector<u64>& ells) {
  const auto tasks = scan_tasks(orbits, ells);
  std::vector<std::optional<CongruenceEdge>> results(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) results[t] = run_task(orbits, tasks[t]);
  return finish(results);
}

std::vector<NewformOrbit> class_orbits(const NewformClass& c, u64 ell) {
  std::vector<NewformOrbit> out;
  for (auto& s : class_reductions(c, ell)) {
    NewformOrbit o;
    o.level = c.level;
    o.weight = c.weight;
    o.ell = ell;
    o.index = static_cast<int>(out.size());
    o.label = c.label;
    o.eigensystem = std::move(s);
    out.push_back(std::move(o));
  }
  return out;
}

MltVerdict edge_verdict(const CongruenceEdge& edge, const EigenSystem& left) {
  EdgeContext ctx;
  ctx.ell = edge.ell;
  ctx.k1 = edge.left_weight;
  ctx.k2 = edge.right_weight;
  ctx.residually_modular_witness = true;  // both sides are modular forms
  try {
    ctx.image = classify_image(left);
  } catch (const DomainError& err) {
    MltVerdict v;
    v.checks.push_back({"residual image classified", CheckStatus::Unknown, err.what()});
    return v;
  }
  return best_verdict(ctx);
}

}  // namespace cchain
