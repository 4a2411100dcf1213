#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cchain/eigen/eigensystem.hpp"

namespace cchain {

enum class ImageKind { Reducible, Dihedral, Exceptional, Large };
enum class ExceptionalGroup { A4, S4, A5 };

struct ImageEvidence {
  u64 q;
  std::string criterion;
};

/// Dickson-type classification of a residual image.
struct ImageClass {
  ImageKind kind = ImageKind::Large;
  i64 discriminant = 0;          // Dihedral: the quadratic discriminant
  ExceptionalGroup group = ExceptionalGroup::A4;  // Exceptional only
  int eisenstein_exponent = -1;  // Reducible: the i in q^i + q^(k-1-i)
  std::vector<ImageEvidence> evidence;

  static ImageClass large() { return {}; }
  static ImageClass reducible(int i = 0) {
    ImageClass c;
    c.kind = ImageKind::Reducible;
    c.eisenstein_exponent = i;
    return c;
  }
  static ImageClass dihedral(i64 D) {
    ImageClass c;
    c.kind = ImageKind::Dihedral;
    c.discriminant = D;
    return c;
  }
  static ImageClass exceptional(ExceptionalGroup g) {
    ImageClass c;
    c.kind = ImageKind::Exceptional;
    c.group = g;
    return c;
  }
};

std::string to_string(const ImageClass& c);

/// Classifies using the eigenvalues stored in e; needs at least 5 tabulated primes.
ImageClass classify_image(const EigenSystem& e);

/// Fundamental discriminants (other than 1) supported on the primes dividing n,
/// ordered by absolute value, negative first.
std::vector<i64> fundamental_discriminants_dividing(u64 n);

/// ell* = (-1)^((ell-1)/2) ell, the discriminant of the quadratic subfield of Q(zeta_ell).
i64 ell_star(u64 ell);

enum class Tri { False, True, Unknown };

struct AdequacyVerdict {
  Tri adequate = Tri::Unknown;
  std::string reason;
};

AdequacyVerdict is_adequate(const ImageClass& c, u64 ell, bool good_dihedral_context);

}  // namespace cchain
