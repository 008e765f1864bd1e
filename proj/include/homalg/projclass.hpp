#pragma once

#include <string>
#include <vector>

#include "homalg/fpmod.hpp"

namespace homalg {

// Projective class determined by a finite set of test modules: the
// projectives are the retracts of finite direct sums of test objects, and a
// sequence is exact for the class when Hom(Q, -) makes it exact for every
// test object Q.
class ProjectiveClass {
 public:
  ProjectiveClass(std::string name, Ring ring, std::vector<FpModule> test_set,
                  Int torsion_bound = 0);

  const std::string& name() const { return name_; }
  const Ring& ring() const { return ring_; }
  const std::vector<FpModule>& test_set() const { return test_set_; }
  // Nonzero only for the pure class over Z: results are valid on modules
  // whose torsion exponent divides it.
  const Int& torsion_bound() const { return torsion_bound_; }
  std::string fingerprint() const;

 private:
  std::string name_;
  Ring ring_;
  std::vector<FpModule> test_set_;
  Int torsion_bound_;
};

// Determined by the free rank-1 module: epis and exactness are the usual ones.
ProjectiveClass categorical_class(const Ring& ring);
// Over Z/n: every cyclic Z/d with d | n (d = n being the free module).
// Over Z: the free module plus Z/k for 2 <= k <= torsion_bound.
ProjectiveClass pure_class(const Ring& ring, const Int& torsion_bound = 16);

// f induces a surjection of Q-elements for every test object Q.
bool is_p_epi(const ProjectiveClass& pc, const ModMorphism& f);

struct Envelope {
  FpModule module;   // direct sum of test objects, one per Hom generator
  ModMorphism eps;   // the assembled P-epi onto the argument
};
Envelope p_envelope(const ProjectiveClass& pc, const FpModule& b);

// The envelope splits, i.e. m is a retract of a sum of test objects.
bool is_p_projective(const ProjectiveClass& pc, const FpModule& m);

// Hom(Q, A) -> Hom(Q, B) -> Hom(Q, C) exact at the middle for every test Q.
// Requires g o f = 0; throws NotComposableOrNonzeroComposite otherwise.
bool is_p_exact(const ProjectiveClass& pc, const ModMorphism& f,
                const ModMorphism& g);
// All three joints of 0 -> A -> B -> C -> 0.
bool is_p_exact_sequence(const ProjectiveClass& pc, const ModMorphism& f,
                         const ModMorphism& g);

}  // namespace homalg
