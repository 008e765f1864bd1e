#pragma once

#include <random>

#include "homalg/chain.hpp"

namespace homalg {

// Deterministic instance generator; identical seeds give identical objects.
class Rng {
 public:
  explicit Rng(unsigned long long seed) : eng_(seed) {}
  long long uniform(long long lo, long long hi);  // inclusive
  Int coeff(long long bound) { return Int(uniform(-bound, bound)); }

 private:
  std::mt19937_64 eng_;
};

FpModule random_module(Rng& rng, const Ring& ring, int max_gens, int max_rels,
                       int entry_bound);

// A random combination of Hom generators.
ModMorphism random_morphism(Rng& rng, const FpModule& a, const FpModule& b,
                            int coeff_bound = 2);

// Random bounded complex: modules drawn as above, differentials drawn from
// the group of maps composing to zero with the one above.
ChainComplex random_complex(Rng& rng, const Ring& ring, int lo_min, int lo_max,
                            int max_width, int max_gens, int max_rels,
                            int entry_bound);

// Random combination of chain-map-group generators.
ChainMap random_chain_map(Rng& rng, const ChainComplex& x,
                          const ChainComplex& y, int coeff_bound = 2);

}  // namespace homalg
