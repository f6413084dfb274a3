#pragma once

#include <cstdint>
#include <random>

#include "unitarize/linalg.h"

namespace unitarize {

inline constexpr std::uint64_t kDefaultSeed = 20010611;

/// Reads UNITARIZE_SEED (decimal); returns `fallback` when unset or malformed.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);
  double normal();
  Complex complex_normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix random_unitary(Index n, Rng& rng);

/// U1 diag(sigma) U2 with sigma in [1, cond], both endpoints attained.
CMatrix random_conditioned(Index n, double cond, Rng& rng);

CMatrix random_hermitian(Index n, Rng& rng);

/// Unit-modulus values whose phases are pairwise at least `min_gap` apart on
/// the circle. Throws kInvalidInput if the gap cannot fit.
CVector random_unimodular_spectrum(Index n, double min_gap, Rng& rng);

CVector random_state(Index n, Rng& rng);

struct ConjugatedFixture {
  CMatrix t;  // S^-1 U S
  CMatrix s;
  CMatrix u;  // V diag(spectrum) V*
  CVector spectrum;
  CMatrix eigvecs_u;  // V
};

/// T = S^-1 V diag(spectrum) V* S with Haar V and cond(S) = cond.
ConjugatedFixture conjugate_spectrum(const CVector& spectrum, double cond, Rng& rng);

/// Random spectrum (with repeated eigenvalues when `degenerate`).
ConjugatedFixture random_conjugated_unimodular(Index n, double cond, double min_gap,
                                               bool degenerate, Rng& rng);

enum class DefectKind { kOffCircle, kJordanBlock };

/// Conjugated matrix violating the Nagy criterion: one eigenvalue moved to
/// modulus 1 +- 0.05, or one 2x2 unimodular Jordan block.
CMatrix random_not_bounded(Index n, double cond, DefectKind kind, Rng& rng);

/// Normal matrix V diag(spectrum) V* for Haar V.
CMatrix random_normal(const CVector& spectrum, Rng& rng);

/// Commuting T1 = S^-1 diag(1, 1, -1) S and T2 = S^-1 (R + [1]) S with R a 2x2
/// unitary mixing the degenerate eigenspace of T1, so h_T1 is not
/// T2-invariant for generic S.
std::pair<CMatrix, CMatrix> degenerate_commuting_pair(double cond, Rng& rng);

}  // namespace unitarize
