#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homalg/errors.hpp"
#include "homalg/matrix.hpp"
#include "homalg/shape.hpp"
#include "homalg/smith.hpp"

namespace homalg {

// Finitely presented module: coker(relations : R^r -> R^gens).
class FpModule {
 public:
  FpModule(Ring ring, Index gens, Matrix relations);
  static FpModule zero(Ring ring);
  static FpModule free(Ring ring, Index rank);
  // Z/d as a module over the ring; d = 0 (or d = n over Z/n) gives the free
  // rank-1 module.
  static FpModule cyclic(Ring ring, const Int& d);

  const Ring& ring() const { return ring_; }
  Index gens() const { return gens_; }
  const Matrix& relations() const { return relations_; }

  AbGroupShape shape() const { return cokernel_divisors(relations_); }
  bool is_zero_module() const { return shape().trivial(); }
  std::string fingerprint() const;

  friend bool operator==(const FpModule& a, const FpModule& b) {
    return a.ring_ == b.ring_ && a.gens_ == b.gens_ &&
           a.relations_ == b.relations_;
  }
  friend bool operator!=(const FpModule& a, const FpModule& b) {
    return !(a == b);
  }

 private:
  Ring ring_;
  Index gens_;
  Matrix relations_;
};

// Morphism of presented modules: gen_matrix (target.gens x source.gens) with
// a well-definedness witness W satisfying gen_matrix * src.rel = tgt.rel * W.
class ModMorphism {
 public:
  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const Matrix& gen_matrix() const { return gen_; }
  const Matrix& witness() const { return witness_; }
  const Ring& ring() const { return source_.ring(); }

 private:
  ModMorphism(FpModule src, FpModule tgt, Matrix gen, Matrix wit)
      : source_(std::move(src)),
        target_(std::move(tgt)),
        gen_(std::move(gen)),
        witness_(std::move(wit)) {}
  friend std::optional<ModMorphism> try_make_morphism(const FpModule&,
                                                      const FpModule&, Matrix);
  FpModule source_, target_;
  Matrix gen_, witness_;
};

std::optional<ModMorphism> try_make_morphism(const FpModule& src,
                                             const FpModule& tgt,
                                             Matrix gen_matrix);
// Throws IllDefinedMorphism when gen_matrix does not respect the relations.
ModMorphism make_morphism(const FpModule& src, const FpModule& tgt,
                          Matrix gen_matrix);
ModMorphism zero_morphism(const FpModule& src, const FpModule& tgt);
ModMorphism identity_morphism(const FpModule& m);

ModMorphism compose(const ModMorphism& g, const ModMorphism& f);  // g after f
ModMorphism operator+(const ModMorphism& f, const ModMorphism& g);
ModMorphism operator-(const ModMorphism& f, const ModMorphism& g);
ModMorphism operator-(const ModMorphism& f);
ModMorphism scale(const Int& c, const ModMorphism& f);

// Equality as maps: gen matrices agree modulo the target relations.
bool eq(const ModMorphism& f, const ModMorphism& g);
bool is_zero(const ModMorphism& f);

struct KernelResult {
  FpModule module;
  ModMorphism inclusion;  // module -> source
};
KernelResult kernel(const ModMorphism& f);

struct CokernelResult {
  FpModule module;  // presentation [target.relations | f.gen_matrix]
  ModMorphism projection;
};
CokernelResult cokernel(const ModMorphism& f);

// Hom(A, B) as a module over the (commutative) base ring, with an actual
// generating set of morphisms in a deterministic lexicographic order.
struct HomGroup {
  FpModule source, target;
  FpModule module;                    // presentation of Hom(A,B)
  std::vector<ModMorphism> generators;
  Matrix gen_columns;                 // vec'd generators, one column each

  // Coordinates of f in the generators, modulo the trivial-morphism lattice.
  std::optional<Matrix> coordinates(const ModMorphism& f) const;
  ModMorphism from_coordinates(const Matrix& z) const;
};
HomGroup hom_group(const FpModule& a, const FpModule& b);

FpModule tensor(const FpModule& a, const FpModule& b);

struct DirectSum {
  FpModule module;
  ModMorphism in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FpModule& a, const FpModule& b);

// n-ary biproduct with generator offsets per part.
struct MultiSum {
  FpModule module;
  std::vector<FpModule> parts;
  std::vector<Index> gen_offset;  // size parts + 1
  ModMorphism injection(std::size_t i) const;
  ModMorphism projection(std::size_t i) const;
};
MultiSum direct_sum_many(Ring ring, std::vector<FpModule> parts);

// psi with f o psi = phi, for phi into f's target; absent when no lift exists.
std::optional<ModMorphism> lift_through(const ModMorphism& f,
                                        const ModMorphism& phi);
std::optional<ModMorphism> retraction_of(const ModMorphism& f);  // r o f = id
std::optional<ModMorphism> section_of(const ModMorphism& f);     // f o s = id
std::optional<ModMorphism> inverse_of(const ModMorphism& f);
bool is_isomorphism(const ModMorphism& f);

// (im numer + rel) / (im denom + rel) inside ambient, presented on the
// numerator columns. denom must land in the numerator sublattice.
struct Subquotient {
  FpModule ambient;
  Matrix numer, denom;
  FpModule module;
  // Coordinates of ambient elements (columns) in the numerator generators.
  std::optional<Matrix> coordinates(const Matrix& elements) const;
};
Subquotient subquotient(const FpModule& ambient, Matrix numer, Matrix denom);

// Map on subquotients induced by f : sq.ambient -> sq2.ambient.
ModMorphism induced_map(const Subquotient& sq, const Subquotient& sq2,
                        const ModMorphism& f);

// Postcomposition Hom(P,X) -> Hom(P,Y) with g : X -> Y.
ModMorphism hom_post(const HomGroup& src, const HomGroup& dst,
                     const ModMorphism& g);
// Precomposition Hom(Y,B) -> Hom(X,B) with g : X -> Y.
ModMorphism hom_pre(const HomGroup& src, const HomGroup& dst,
                    const ModMorphism& g);

}  // namespace homalg
