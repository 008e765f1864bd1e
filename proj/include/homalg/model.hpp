#pragma once

#include <optional>
#include <vector>

#include "homalg/chain.hpp"

namespace homalg {

// Commuting square: p o top = bottom o i, checked on construction.
struct LiftingProblem {
  ChainMap i;       // A -> B
  ChainMap p;       // X -> Y
  ChainMap top;     // A -> X
  ChainMap bottom;  // B -> Y
  LiftingProblem(ChainMap i, ChainMap p, ChainMap top, ChainMap bottom);
};

// Diagonal h : B -> X with h o i = top and p o h = bottom, found by one
// joint linear solve; absent exactly when no filler exists.
std::optional<ChainMap> solve_lift(const LiftingProblem& prob);

// Both sides of the generating-set characterization: RLP against
// {0 -> D^n P} versus surjectivity of P-elements, and RLP against
// {S^{n-1} P -> D^n P} versus surjectivity + P-quasi-isomorphism.
// Disagreement indicates an implementation bug and throws
// CharacterizationMismatch.
struct RlpReport {
  bool surjective_direct;
  bool quasi_iso_direct;
  bool rlp_disks;          // against {0 -> D^n P}
  bool rlp_sphere_disks;   // against {S^{n-1} P -> D^n P}
  bool is_fibration() const { return surjective_direct; }
  bool is_acyclic_fibration() const {
    return surjective_direct && quasi_iso_direct;
  }
};
RlpReport check_rlp_characterization(const ProjectiveClass& pc,
                                     const ChainMap& p);

enum class FactorKind { CofThenAcyclicFib, AcyclicCofThenFib };

// Degree window on which the factorization's membership certificates were
// verified; complete means the construction stabilized globally.
struct Window {
  int lo, hi;
  bool complete;
};

struct Factorization {
  ChainMap f;
  ChainComplex mid;
  ChainMap left, right;  // right o left = f
  FactorKind kind;
  int stages;
  Window window;
};

// One-stage factorization f = (fibration) o (acyclic cofibration): mid is
// X (+) a contractible complex of disks indexed by Hom generators of Y.
Factorization factor_acyclic_cof_then_fib(const ProjectiveClass& pc,
                                          const ChainMap& f);

// Iterated cell attachment along sphere -> disk generators until the right
// map certifies as an acyclic fibration on the window; throws
// StageBoundExceeded when it fails to do so within stage_bound stages.
Factorization factor_cof_then_acyclic_fib(const ProjectiveClass& pc,
                                          const ChainMap& f, int stage_bound);

struct Replacement {
  ChainComplex q;   // bounded-below complex of P-projectives
  ChainMap map;     // q -> x, P-surjective P-quasi-isomorphism on the window
  int stages;
  Window window;
};
Replacement cofibrant_replacement(const ProjectiveClass& pc,
                                  const ChainComplex& x, int stage_bound);

}  // namespace homalg
