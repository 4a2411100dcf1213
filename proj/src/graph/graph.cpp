#include "cchain/graph/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cchain/core/error.hpp"

namespace cchain {

CongruenceGraph build_graph(const std::vector<NewformOrbit>& orbits, const std::vector<u64>& ells) {
  CongruenceGraph g;
  for (const auto& o : orbits) g.nodes.push_back(o.label);
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  g.edges = scan_congruences(orbits, ells);
  g.ell_range = ells;
  return g;
}

namespace {

std::size_t node_index(const CongruenceGraph& g, const std::string& label) {
  auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), label);
  if (it == g.nodes.end() || *it != label) throw DomainError("unknown node label " + label);
  return static_cast<std::size_t>(it - g.nodes.begin());
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::vector<std::vector<std::string>> components(const CongruenceGraph& g) {
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : g.edges) {
    auto a = find_root(parent, node_index(g, e.left));
    auto b = find_root(parent, node_index(g, e.right));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::string>> blocks;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) blocks[find_root(parent, i)].push_back(g.nodes[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : blocks) out.push_back(std::move(members));
  return out;
}

std::optional<std::vector<CongruenceEdge>> chain_search(const CongruenceGraph& g, const std::string& from,
                                                        const std::string& to, bool mlt_only) {
  const std::size_t s = node_index(g, from), t = node_index(g, to);
  if (s == t) return std::vector<CongruenceEdge>{};
  // adjacency: (ell, neighbour label, edge index)
  std::vector<std::vector<std::tuple<u64, std::string, std::size_t>>> adj(g.nodes.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (mlt_only && e.mlt.theorem == Theorem::None) continue;
    adj[node_index(g, e.left)].emplace_back(e.ell, e.right, i);
    adj[node_index(g, e.right)].emplace_back(e.ell, e.left, i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<std::ptrdiff_t> via(g.nodes.size(), -1);
  std::vector<bool> seen(g.nodes.size(), false);
  std::deque<std::size_t> queue{s};
  seen[s] = true;
  while (!queue.empty() && !seen[t]) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& [ell, label, idx] : adj[v]) {
      auto w = node_index(g, label);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = static_cast<std::ptrdiff_t>(idx);
      queue.push_back(w);
    }
  }
  if (!seen[t]) return std::nullopt;
  std::vector<CongruenceEdge> path;
  for (auto v = t; v != s;) {
    const auto& e = g.edges[static_cast<std::size_t>(via[v])];
    path.push_back(e);
    v = node_index(g, g.nodes[v] == e.left ? e.right : e.left);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<NewformOrbit> class_orbit_set(const std::vector<const NewformClass*>& classes, u64 lmax) {
  std::vector<NewformOrbit> orbits;
  for (u64 ell : primes_up_to(lmax))
    for (const auto* c : classes)
      for (auto& o : class_orbits(*c, ell)) orbits.push_back(std::move(o));
  return orbits;
}

MazurReport mazur_report(u64 N, int k, u64 lmax) {
  MazurReport r;
  r.level = N;
  r.weight = k;
  r.lmax = lmax;
  // every pair of divisor levels has lcm dividing N, so this bound covers cross_bound
  const u64 table = std::max(default_table_bound(N, k), sturm_bound(N, k));
  std::vector<const NewformClass*> classes;
  for (u64 M : divisors(N))
    for (const auto& c : newform_classes(M, k, std::max(table, default_table_bound(M, k)))) classes.push_back(&c);
  auto orbits = class_orbit_set(classes, lmax);
  r.graph = build_graph(orbits, primes_up_to(lmax));
  for (const auto* c : classes) r.graph.nodes.push_back(c->label);  // classes with no reductions still count
  std::sort(r.graph.nodes.begin(), r.graph.nodes.end());
  r.graph.nodes.erase(std::unique(r.graph.nodes.begin(), r.graph.nodes.end()), r.graph.nodes.end());
  r.components = components(r.graph);
  r.connected = r.components.size() <= 1;
  return r;
}

}  // namespace cchain
