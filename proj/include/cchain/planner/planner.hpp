#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cchain/mlt/mlt.hpp"

namespace cchain {

enum class LocalKind { Steinberg, PrincipalSeries, Supercuspidal, GoodDihedral };

struct LocalType {
  LocalKind kind = LocalKind::Steinberg;
  u64 char_order = 1;  // PrincipalSeries / Supercuspidal
  bool wild = false;   // PrincipalSeries / Supercuspidal
  u64 p = 0, B = 0;    // GoodDihedral

  static LocalType steinberg() { return {}; }
  static LocalType principal_series(u64 order, bool wild) { return {LocalKind::PrincipalSeries, order, wild, 0, 0}; }
  static LocalType supercuspidal(u64 order, bool wild) { return {LocalKind::Supercuspidal, order, wild, 0, 0}; }
  static LocalType good_dihedral(u64 p, u64 B) { return {LocalKind::GoodDihedral, p, false, p, B}; }

  bool has_character() const { return kind == LocalKind::PrincipalSeries || kind == LocalKind::Supercuspidal; }
  bool operator==(const LocalType&) const = default;
};

/// Abstract compatible system: parallel weight, conductor with local types.
struct SystemDescriptor {
  int field_degree = 1;
  int weight = 2;
  std::map<u64, LocalType> conductor;
  bool dihedral = false;
  std::optional<u64> coeff_degree;  // unknown after any lift
  u64 twist_conductor = 1;

  bool operator==(const SystemDescriptor&) const = default;
};

/// Throws DomainError naming the first broken invariant.
void validate(const SystemDescriptor& d);

enum class MoveKind {
  MakeNonDihedral,
  ToParallelWeight2,
  AddGoodDihedral,
  KillTamePart,
  TameifyWild,
  MoveSteinbergToSplit,
  KillSteinberg,
  FinalWeight2Lift
};

std::string to_string(MoveKind k);

struct ChainMove {
  MoveKind kind = MoveKind::FinalWeight2Lift;
  u64 at = 0;   // steinberg_at / at / from / aux
  u64 mod = 0;  // the congruence prime
  u64 to = 0;   // MoveSteinbergToSplit target
  std::vector<u64> twist_added;
  std::optional<GoodDihedralPair> pair;
  std::string audit;
  MltVerdict verdict;
};

/// Applies one rewrite after checking its side conditions; throws DomainError naming the rule.
SystemDescriptor apply_move(const SystemDescriptor& d, const ChainMove& m);

/// Gate verdict for the congruence a move relies on.
MltVerdict move_verdict(const SystemDescriptor& before, const ChainMove& m);

struct ChainPlan {
  SystemDescriptor start;
  std::vector<std::pair<ChainMove, SystemDescriptor>> steps;
  int assumption_count = 0;

  const SystemDescriptor& final_state() const { return steps.empty() ? start : steps.back().second; }
};

ChainPlan plan_to_safe_form(const SystemDescriptor& d, u64 B);

/// Two plans sharing one good-dihedral pair and one auxiliary prime, ending at equal descriptors.
std::pair<ChainPlan, ChainPlan> connect(const SystemDescriptor& d1, const SystemDescriptor& d2, u64 B);

/// Lexicographic measure that every move strictly decreases; aux is the plan's auxiliary prime.
struct TerminationMeasure {
  int dihedral = 0;
  int weight_not_two = 0;
  int lacks_good_dihedral = 0;
  std::vector<std::pair<int, u64>> characters;  // (wild, order), sorted descending
  int small_steinberg = 0;                      // Steinberg at 2 or 3
  int other_steinberg = 0;                      // Steinberg away from aux
  int aux_missing = 0;

  auto operator<=>(const TerminationMeasure&) const = default;
};

TerminationMeasure termination_measure(const SystemDescriptor& d, u64 aux);

/// Weight 2, one GoodDihedral entry, and at most a Steinberg entry at aux besides.
bool is_safe_form(const SystemDescriptor& d, u64 aux);

/// The auxiliary prime of a plan (from its final lift), or 0.
u64 plan_aux(const ChainPlan& p);

}  // namespace cchain
