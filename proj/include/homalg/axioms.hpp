#pragma once

#include <string>

#include "homalg/model.hpp"
#include "homalg/random_gen.hpp"

namespace homalg {

struct AxiomCaseResult {
  bool ok;
  std::string name;
  std::string detail;  // nonempty on failure
};

// Randomized executable checks of the model-structure axioms; `index`
// rotates through the suite, `seed` fixes the instance.
AxiomCaseResult run_axiom_case(const ProjectiveClass& pc,
                               unsigned long long seed, int index);
int axiom_case_count();

// Individual checks, reused by the acceptance suite.
AxiomCaseResult check_two_out_of_three(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_homotopy_relation(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_rlp_agreement(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_factorization_axiom(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_path_object(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_cylinder_object(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_purity_tensor(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_pure_implies_categorical(const ProjectiveClass& pc,
                                               Rng& rng);
AxiomCaseResult check_retract_closure(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_cone_of_identity(const ProjectiveClass& pc, Rng& rng);
AxiomCaseResult check_suspension_cofibre(const ProjectiveClass& pc, Rng& rng);

}  // namespace homalg
