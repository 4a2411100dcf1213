#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cchain/congruence/congruence.hpp"

namespace cchain {

struct CongruenceGraph {
  std::vector<std::string> nodes;  // sorted, distinct
  std::vector<CongruenceEdge> edges;
  std::vector<u64> ell_range;
};

/// Nodes are the distinct orbit labels; edges come from scan_congruences.
CongruenceGraph build_graph(const std::vector<NewformOrbit>& orbits, const std::vector<u64>& ells);

/// Connected components; blocks and their members are sorted.
std::vector<std::vector<std::string>> components(const CongruenceGraph& g);

/// Breadth-first shortest path; neighbours are visited in (ell, label) order. With mlt_only,
/// only edges with a verdict other than None are used. nullopt when no path exists.
std::optional<std::vector<CongruenceEdge>> chain_search(const CongruenceGraph& g, const std::string& from,
                                                        const std::string& to, bool mlt_only);

struct MazurReport {
  u64 level = 0;
  int weight = 0;
  u64 lmax = 0;
  bool connected = true;
  std::vector<std::vector<std::string>> components;
  CongruenceGraph graph;
};

/// Newform classes of every level M | N at weight k, reduced at every prime ell <= lmax,
/// joined by certified congruences.
MazurReport mazur_report(u64 N, int k, u64 lmax);

/// Orbits for a set of classes at every prime ell <= lmax, tables long enough for any pair.
std::vector<NewformOrbit> class_orbit_set(const std::vector<const NewformClass*>& classes, u64 lmax);

}  // namespace cchain
