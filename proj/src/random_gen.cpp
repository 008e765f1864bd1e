#include "homalg/random_gen.hpp"

namespace homalg {

long long Rng::uniform(long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  return d(eng_);
}

FpModule random_module(Rng& rng, const Ring& ring, int max_gens, int max_rels,
                       int entry_bound) {
  const Index g = rng.uniform(1, max_gens);
  const Index r = rng.uniform(0, max_rels);
  IntMat rel(g, r);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < g; ++i) rel(i, j) = rng.coeff(entry_bound);
  return FpModule(ring, g, Matrix(ring, std::move(rel)));
}

ModMorphism random_morphism(Rng& rng, const FpModule& a, const FpModule& b,
                            int coeff_bound) {
  HomGroup hg = hom_group(a, b);
  if (hg.generators.empty()) return zero_morphism(a, b);
  IntMat z(static_cast<Index>(hg.generators.size()), 1);
  for (Index i = 0; i < z.rows(); ++i) z(i, 0) = rng.coeff(coeff_bound);
  return hg.from_coordinates(Matrix(a.ring(), std::move(z)));
}

ChainComplex random_complex(Rng& rng, const Ring& ring, int lo_min, int lo_max,
                            int max_width, int max_gens, int max_rels,
                            int entry_bound) {
  const int lo = static_cast<int>(rng.uniform(lo_min, lo_max));
  const int width = static_cast<int>(rng.uniform(1, max_width));
  std::vector<FpModule> modules;
  for (int i = 0; i < width; ++i)
    modules.push_back(random_module(rng, ring, max_gens, max_rels, entry_bound));
  ChainComplexBuilder cb(ring);
  for (int i = 0; i < width; ++i) cb.set_module(lo + i, modules[static_cast<std::size_t>(i)]);
  // choose differentials from the top down so that d o d = 0
  ModMorphism above = zero_morphism(FpModule::zero(ring),
                                    modules[static_cast<std::size_t>(width - 1)]);
  bool have_above = false;
  for (int i = width - 1; i >= 1; --i) {
    const FpModule& src = modules[static_cast<std::size_t>(i)];
    const FpModule& tgt = modules[static_cast<std::size_t>(i - 1)];
    ModMorphism d = zero_morphism(src, tgt);
    if (!have_above) {
      d = random_morphism(rng, src, tgt);
    } else {
      // generators of {g : g o above = 0}
      HomGroup h = hom_group(src, tgt);
      HomGroup hcomp = hom_group(above.source(), tgt);
      ModMorphism pre = hom_pre(h, hcomp, above);
      KernelResult k = kernel(pre);
      if (k.module.gens() > 0) {
        IntMat z(k.module.gens(), 1);
        for (Index r = 0; r < z.rows(); ++r) z(r, 0) = rng.coeff(2);
        Matrix coords = k.inclusion.gen_matrix() * Matrix(ring, std::move(z));
        d = h.from_coordinates(coords);
      }
    }
    cb.set_differential(lo + i, d);
    above = d;
    have_above = true;
  }
  return cb.build();
}

ChainMap random_chain_map(Rng& rng, const ChainComplex& x,
                          const ChainComplex& y, int coeff_bound) {
  ChainMapGroup g = chain_map_group(x, y);
  if (g.generators.empty()) return ChainMap::zero(x, y);
  IntMat z(g.generator_coords.cols(), 1);
  for (Index i = 0; i < z.rows(); ++i) z(i, 0) = rng.coeff(coeff_bound);
  return g.from_coords(g.generator_coords * Matrix(x.ring(), std::move(z)));
}

}  // namespace homalg
