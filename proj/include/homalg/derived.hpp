#pragma once

#include <optional>
#include <string>

#include "homalg/chain.hpp"

namespace homalg {

// P-projective P-exact resolution, built by iterating envelopes on
// successive kernels; stops early (exact = true) when a kernel vanishes.
struct Resolution {
  ProjectiveClass pclass;
  FpModule target;
  ChainComplex complex;      // degrees 0..length
  ModMorphism augmentation;  // degree-0 module -> target
  int length;
  bool exact;
};
Resolution p_resolution(const ProjectiveClass& pc, const FpModule& a,
                        int length);

struct ExtResult {
  AbGroupShape shape;
  int degree;
  bool window_certified;  // resolution reached length n+1 or became exact
};
// n-th right derived functor of Hom(-, b) relative to the class.
ExtResult ext(const ProjectiveClass& pc, const FpModule& a, const FpModule& b,
              int n);

struct ExtComparison {
  ExtResult pure;
  ExtResult categorical;
  // matrix of the induced map on cohomology: pure generators -> categorical
  // coordinates
  Matrix map_matrix;
  std::string map_description;
};
// Both theories plus the natural comparison map, induced by a chain map over
// the identity between the two resolutions.
ExtComparison ext_comparison(const FpModule& a, const FpModule& b, int n,
                             const Int& torsion_bound);

void clear_resolution_cache();

}  // namespace homalg
