#include "homalg/projclass.hpp"

#include <algorithm>
#include <stdexcept>

namespace homalg {

ProjectiveClass::ProjectiveClass(std::string name, Ring ring,
                                 std::vector<FpModule> test_set,
                                 Int torsion_bound)
    : name_(std::move(name)),
      ring_(std::move(ring)),
      test_set_(std::move(test_set)),
      torsion_bound_(std::move(torsion_bound)) {
  if (test_set_.empty())
    throw std::invalid_argument("ProjectiveClass: test set must be nonempty");
  for (const FpModule& m : test_set_)
    if (m.ring() != ring_)
      throw std::invalid_argument("ProjectiveClass: test object ring mismatch");
}

std::string ProjectiveClass::fingerprint() const {
  std::string fp = name_ + "@" + ring_.name() + "@" + torsion_bound_.get_str();
  for (const FpModule& m : test_set_) fp += "|" + m.fingerprint();
  return fp;
}

ProjectiveClass categorical_class(const Ring& ring) {
  return ProjectiveClass("categorical", ring, {FpModule::free(ring, 1)});
}

ProjectiveClass pure_class(const Ring& ring, const Int& torsion_bound) {
  std::vector<FpModule> tests;
  if (ring.is_modular()) {
    // All cyclic Z/d with d | n, largest first; d = n is the free module.
    const Int& n = ring.modulus();
    std::vector<Int> divs;
    for (Int d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
    std::sort(divs.begin(), divs.end(), [](const Int& a, const Int& b) { return a > b; });
    for (const Int& d : divs)
      if (d > 1) tests.push_back(FpModule::cyclic(ring, d));
    return ProjectiveClass("pure", ring, std::move(tests));
  }
  if (torsion_bound < 1)
    throw std::invalid_argument("pure_class: torsion bound must be >= 1");
  tests.push_back(FpModule::free(ring, 1));
  for (Int k = 2; k <= torsion_bound; ++k)
    tests.push_back(FpModule::cyclic(ring, k));
  return ProjectiveClass("pure", ring, std::move(tests), torsion_bound);
}

bool is_p_epi(const ProjectiveClass& pc, const ModMorphism& f) {
  if (pc.ring() != f.ring())
    throw std::invalid_argument("is_p_epi: ring mismatch");
  for (const FpModule& q : pc.test_set()) {
    HomGroup hg = hom_group(q, f.target());
    for (const ModMorphism& phi : hg.generators)
      if (!lift_through(f, phi)) return false;
  }
  return true;
}

Envelope p_envelope(const ProjectiveClass& pc, const FpModule& b) {
  if (pc.ring() != b.ring())
    throw std::invalid_argument("p_envelope: ring mismatch");
  std::vector<FpModule> parts;
  Matrix cols = Matrix::zero(b.ring(), b.gens(), 0);
  for (const FpModule& q : pc.test_set()) {
    HomGroup hg = hom_group(q, b);
    for (const ModMorphism& phi : hg.generators) {
      parts.push_back(q);
      cols = hcat(cols, phi.gen_matrix());
    }
  }
  MultiSum sum = direct_sum_many(b.ring(), std::move(parts));
  return {sum.module, make_morphism(sum.module, b, std::move(cols))};
}

bool is_p_projective(const ProjectiveClass& pc, const FpModule& m) {
  Envelope env = p_envelope(pc, m);
  return lift_through(env.eps, identity_morphism(m)).has_value();
}

bool is_p_exact(const ProjectiveClass& pc, const ModMorphism& f,
                const ModMorphism& g) {
  if (f.target() != g.source())
    throw NotComposableOrNonzeroComposite("is_p_exact: maps not composable");
  if (!is_zero(compose(g, f)))
    throw NotComposableOrNonzeroComposite("is_p_exact: composite is nonzero");
  for (const FpModule& q : pc.test_set()) {
    HomGroup ha = hom_group(q, f.source());
    HomGroup hb = hom_group(q, f.target());
    HomGroup hc = hom_group(q, g.target());
    ModMorphism fstar = hom_post(ha, hb, f);
    ModMorphism gstar = hom_post(hb, hc, g);
    KernelResult ker = kernel(gstar);
    // kernel generators must come from Hom(Q, A) modulo the relations
    Matrix span = hcat(fstar.gen_matrix(), hb.module.relations());
    if (!solve(span, ker.inclusion.gen_matrix()).has_value()) return false;
  }
  return true;
}

bool is_p_exact_sequence(const ProjectiveClass& pc, const ModMorphism& f,
                         const ModMorphism& g) {
  const FpModule zero = FpModule::zero(pc.ring());
  return is_p_exact(pc, zero_morphism(zero, f.source()), f) &&
         is_p_exact(pc, f, g) &&
         is_p_exact(pc, g, zero_morphism(g.target(), zero));
}

}  // namespace homalg
