#pragma once

#include <map>
#include <optional>
#include <vector>

#include "homalg/projclass.hpp"

namespace homalg {

// Bounded chain complex of presented modules; differentials lower degree.
// End modules with no generators are trimmed, so the support [lo, hi] is
// tight; the zero complex has hi < lo.
class ChainComplex {
 public:
  // modules[i] sits in degree lo + i; differentials[i] : modules[i+1] ->
  // modules[i]. Checks d o d = 0.
  ChainComplex(Ring ring, int lo, std::vector<FpModule> modules,
               std::vector<ModMorphism> differentials);
  static ChainComplex zero(Ring ring);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(modules_.size()) - 1; }
  bool is_zero_complex() const { return modules_.empty(); }

  FpModule module_at(int n) const;         // zero module outside support
  ModMorphism differential_at(int n) const;  // d_n : X_n -> X_{n-1}

  std::string fingerprint() const;
  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<FpModule> modules_;
  std::vector<ModMorphism> diffs_;
};

class ChainComplexBuilder {
 public:
  explicit ChainComplexBuilder(Ring ring) : ring_(std::move(ring)) {}
  void set_module(int degree, FpModule m);
  void set_differential(int degree, ModMorphism d);  // d_n : X_n -> X_{n-1}
  ChainComplex build() const;  // missing differentials default to zero

 private:
  Ring ring_;
  std::map<int, FpModule> modules_;
  std::map<int, ModMorphism> diffs_;
};

// Degree-zero chain map; commuting with the differentials is checked.
class ChainMap {
 public:
  ChainMap(ChainComplex source, ChainComplex target,
           std::map<int, ModMorphism> components);
  static ChainMap zero(ChainComplex source, ChainComplex target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  const Ring& ring() const { return source_.ring(); }
  ModMorphism component_at(int n) const;

 private:
  ChainComplex source_, target_;
  std::map<int, ModMorphism> components_;
};

ChainMap identity_chain_map(const ChainComplex& x);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator+(const ChainMap& f, const ChainMap& g);
ChainMap operator-(const ChainMap& f, const ChainMap& g);
bool eq(const ChainMap& f, const ChainMap& g);
bool is_zero(const ChainMap& f);

// h_n : X_n -> Y_{n+1} with f - g = d h + h d, checked on construction.
class ChainHomotopy {
 public:
  ChainHomotopy(ChainMap f, ChainMap g, std::map<int, ModMorphism> components);
  const ChainMap& from() const { return f_; }
  const ChainMap& to() const { return g_; }
  ModMorphism component_at(int n) const;

 private:
  ChainMap f_, g_;
  std::map<int, ModMorphism> components_;
};

AbGroupShape homology(const ChainComplex& x, int n);
// ker(d_n)/im(d_{n+1}) as a subquotient of X_n, for induced-map work.
Subquotient homology_subquotient(const ChainComplex& x, int n);
ModMorphism induced_on_homology(const ChainMap& f, int n);

ChainComplex sphere(const FpModule& a, int n);  // A concentrated in degree n
ChainComplex disk(const FpModule& a, int n);    // A in degrees n, n-1, d = id
ChainMap sphere_to_disk(const FpModule& a, int n);  // sphere(a, n-1) -> disk(a, n)

ChainComplex suspend(const ChainComplex& x);  // degree shift, negated d
ChainComplex loop_complex(const ChainComplex& x);
ChainMap suspend(const ChainMap& f);

struct Triangle {
  ChainComplex cone;  // N_n = M_n (+) L_{n-1}, d(m,l) = (dm + fl, -dl)
  ChainMap include;   // M -> N
  ChainMap project;   // N -> suspend(L)
};
Triangle standard_triangle(const ChainMap& f);

struct ComplexSum {
  ChainComplex sum;
  ChainMap in1, in2, pr1, pr2;
};
ComplexSum direct_sum_complex(const ChainComplex& x, const ChainComplex& y);
ChainMap pair_into_product(const ComplexSum& s, const ChainMap& f,
                           const ChainMap& g);
ChainMap copair_from_coproduct(const ComplexSum& s, const ChainMap& f,
                               const ChainMap& g);

struct PathObject {
  ChainComplex path;     // N_n (+) N_{n+1} (+) N_n in degree n
  ChainComplex product;  // N x N
  ChainMap alpha;        // n -> (n, 0, n); chain homotopy equivalence
  ChainMap beta;         // (n, nbar, n') -> (n, n'); degreewise split epi
  ChainMap alpha_inverse;
  ChainHomotopy alpha_homotopy;  // alpha o alpha_inverse ~ id
  std::vector<std::pair<int, ModMorphism>> beta_sections;  // per degree
};
PathObject path_object(const ChainComplex& n);

struct CylinderObject {
  ChainComplex cylinder;  // M_n (+) M_{n-1} (+) M_n in degree n
  ChainComplex coproduct;  // M (+) M
  ChainMap include;        // end inclusions M (+) M -> cylinder
  ChainMap fold;           // (m, mbar, m') -> m + m'; homotopy equivalence
  ChainMap section;        // m -> (m, 0, 0)
  ChainHomotopy fold_homotopy;  // section o fold ~ id
};
CylinderObject cylinder_object(const ChainComplex& m);

std::optional<ChainHomotopy> find_chain_homotopy(const ChainMap& f,
                                                 const ChainMap& g);

// Complex of Q-elements Hom(Q, X_n) with the induced differentials.
struct HomComplex {
  ChainComplex complex;
  std::map<int, HomGroup> homs;  // per degree of X's support
};
HomComplex hom_complex(const FpModule& q, const ChainComplex& x);
ChainMap hom_chain_map(const ChainMap& f, const HomComplex& hx,
                       const HomComplex& hy);

bool is_weak_equivalence(const ProjectiveClass& pc, const ChainMap& f);
bool is_fibration(const ProjectiveClass& pc, const ChainMap& f);
// Bounded-below form: degreewise split-monic with P-projective cokernels.
bool is_cofibration(const ProjectiveClass& pc, const ChainMap& f);

// Generators of the group of chain maps X -> Y, living in the direct sum of
// the degreewise Hom modules.
struct ChainMapGroup {
  ChainComplex source, target;
  std::vector<int> degrees;      // one entry per ambient block
  std::vector<HomGroup> homs;    // Hom(X_n, Y_n) per block
  MultiSum ambient;
  Matrix generator_coords;       // columns: generators in ambient coordinates
  std::vector<ChainMap> generators;

  ChainMap from_coords(const Matrix& z) const;
  std::optional<Matrix> coords_of(const ChainMap& f) const;
};
ChainMapGroup chain_map_group(const ChainComplex& x, const ChainComplex& y);

// Chain maps X -> Y modulo the null-homotopic ones.
AbGroupShape homotopy_class_group(const ChainComplex& x, const ChainComplex& y);

}  // namespace homalg
