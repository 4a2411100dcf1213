#pragma once

#include <string>
#include <vector>

#include "cchain/eigen/classes.hpp"
#include "cchain/eigen/eigensystem.hpp"
#include "cchain/mlt/mlt.hpp"

namespace cchain {

enum class CongruenceStatus { Certified, Refuted };

/// Both value fields placed inside the canonical F_{ell^e}, e = lcm of their degrees,
/// by the images of their generators.
struct Embedding {
  int degree = 1;
  std::vector<u64> compositum_modulus;
  std::vector<u64> left_generator;
  std::vector<u64> right_generator;
  int right_choice = 0;  // index among the sorted roots of the right modulus
};

struct CongruenceEdge {
  std::string left, right;
  int left_index = 0, right_index = 0;  // orbit indices (reduction indices on the class route)
  u64 left_level = 0, right_level = 0;
  int left_weight = 0, right_weight = 0;
  u64 ell = 0;
  Embedding embedding;
  std::vector<u64> tested_primes;
  u64 bound_used = 0;
  CongruenceStatus status = CongruenceStatus::Refuted;
  u64 refuted_at = 0;
  MltVerdict mlt;
};

/// sturm_bound(lcm(N1, N2), max(k1, k2)).
u64 cross_bound(u64 N1, int k1, u64 N2, int k2);

/// Compares eigenvalues at every prime q <= bound (default cross_bound), q not dividing
/// N1*N2*ell, under each embedding; Certified iff one embedding matches everywhere.
CongruenceEdge check_congruence(const NewformOrbit& a, const NewformOrbit& b, u64 ell, u64 bound = 0);

/// Certified edges among distinct labels for each ell, deduplicated by (pair, ell) and
/// sorted by (left, right, ell). Pairs failing the weight precondition are skipped.
/// Runs the pair checks in parallel.
std::vector<CongruenceEdge> scan_congruences(const std::vector<NewformOrbit>& orbits, const std::vector<u64>& ells);
/// Serial reference for scan_congruences.
std::vector<CongruenceEdge> scan_congruences_serial(const std::vector<NewformOrbit>& orbits,
                                                    const std::vector<u64>& ells);

/// The mod-ell reductions of a characteristic-zero class, labelled by the class.
std::vector<NewformOrbit> class_orbits(const NewformClass& c, u64 ell);

/// Gate verdict for an edge: image of the left system, weights, modular witness.
MltVerdict edge_verdict(const CongruenceEdge& edge, const EigenSystem& left);

std::string to_string(CongruenceStatus s);

}  // namespace cchain
