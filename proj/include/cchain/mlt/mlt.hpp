#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cchain/image/image.hpp"

namespace cchain {

enum class Theorem { MLT1, MLT2, MLT3, MLT4, None };
enum class CheckStatus { Pass, Fail, Assumed, Unknown };

std::string to_string(Theorem t);
std::string to_string(CheckStatus s);

struct HypothesisCheck {
  std::string name;
  CheckStatus status;
  std::string note;
};

struct MltVerdict {
  Theorem theorem = Theorem::None;
  std::vector<HypothesisCheck> checks;
  bool assumption_used = false;

  int count(CheckStatus s) const;
};

/// Everything the gate needs to know about one congruence.
struct EdgeContext {
  u64 ell = 0;
  ImageClass image;
  int k1 = 2, k2 = 2;
  bool residually_modular_witness = true;
  std::optional<bool> ordinary_left, ordinary_right;  // unknown unless supplied
  bool good_dihedral_context = false;
  std::optional<bool> fontaine_laffaille;  // cross-checked against max(k1, k2) <= ell - 1
};

MltVerdict check_mlt1(const EdgeContext& c);
MltVerdict check_mlt2(const EdgeContext& c);
MltVerdict check_mlt3(const EdgeContext& c);
MltVerdict check_mlt4(const EdgeContext& c);
/// First of MLT1, MLT2, MLT3, MLT4 that applies; None otherwise.
MltVerdict best_verdict(const EdgeContext& c);

struct GoodDihedralPair {
  u64 p = 0;
  u64 q = 0;
  u64 B = 0;
  std::vector<std::string> certificates;
};

inline constexpr u64 kDefaultSieveCap = 100'000'000;

/// Smallest p = 1 mod 4 above B (not forbidden, witness true), then the smallest prime q
/// (not forbidden) with q = -1 mod p, q = 1 mod 8 and (r/q) = 1 for every odd prime r < B.
GoodDihedralPair find_good_dihedral(u64 B, const std::set<u64>& forbidden,
                                    const std::function<bool(u64)>& image_witness, u64 cap = kDefaultSieveCap);

/// Re-verifies the arithmetic conditions of a pair; returns the list of failures.
std::vector<std::string> verify_good_dihedral(const GoodDihedralPair& g);

/// q = -1 mod ell and a_q = 0.
bool level_raising_condition(u64 q, u64 ell, bool a_q_is_zero);

}  // namespace cchain
