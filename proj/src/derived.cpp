#include "homalg/derived.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "homalg/linsys.hpp"

namespace homalg {

namespace {

std::mutex cache_mutex;
std::map<std::string, Resolution>& cache() {
  static std::map<std::string, Resolution> c;
  return c;
}

// Refuses pure-class-over-Z queries outside the declared torsion range.
void check_torsion_bound(const ProjectiveClass& pc, const FpModule& m) {
  if (pc.torsion_bound() == 0) return;
  Int e = m.shape().torsion_exponent();
  if (pc.torsion_bound() % e != 0)
    throw TorsionBoundError("module torsion exponent " + e.get_str() +
                            " does not divide the declared bound " +
                            pc.torsion_bound().get_str());
}

Resolution build_resolution(const ProjectiveClass& pc, const FpModule& a,
                            int length) {
  const Ring& ring = pc.ring();
  if (is_p_projective(pc, a)) {
    // length-0 fast path: the module resolves itself
    ChainComplex cx = sphere(a, 0);
    return {pc, a, cx, identity_morphism(a), 0, true};
  }
  std::vector<FpModule> modules;
  std::vector<ModMorphism> diffs;
  Envelope env = p_envelope(pc, a);
  modules.push_back(env.module);
  ModMorphism aug = env.eps;
  KernelResult k = kernel(env.eps);
  bool exact = k.module.is_zero_module();
  for (int i = 1; i <= length && !exact; ++i) {
    Envelope next = p_envelope(pc, k.module);
    modules.push_back(next.module);
    diffs.push_back(compose(k.inclusion, next.eps));
    k = kernel(next.eps);
    exact = k.module.is_zero_module();
  }
  ChainComplex cx(ring, 0, modules, diffs);
  Resolution res{pc, a, cx, aug,
                 static_cast<int>(modules.size()) - 1, exact};
  // resolution contract: P-projective terms, P-exact at every joint
  for (int i = 0; i <= res.length; ++i)
    if (!is_p_projective(pc, cx.module_at(i)))
      throw std::logic_error("p_resolution: term is not P-projective");
  if (res.length >= 1 && !is_p_exact(pc, cx.differential_at(1), aug))
    throw std::logic_error("p_resolution: not P-exact at degree 0");
  for (int i = 1; i < res.length; ++i)
    if (!is_p_exact(pc, cx.differential_at(i + 1), cx.differential_at(i)))
      throw std::logic_error("p_resolution: not P-exact at degree " +
                             std::to_string(i));
  return res;
}

struct ExtData {
  ExtResult result;
  Resolution res;
  HomGroup hom_n;        // Hom(P_n, B)
  Subquotient cohomology;
};

ExtData ext_internal(const ProjectiveClass& pc, const FpModule& a,
                     const FpModule& b, int n) {
  if (n < 0) throw std::invalid_argument("ext: degree must be >= 0");
  check_torsion_bound(pc, a);
  check_torsion_bound(pc, b);
  Resolution res = p_resolution(pc, a, n + 1);
  const ChainComplex& cx = res.complex;
  HomGroup hn = hom_group(cx.module_at(n), b);
  Matrix numer = Matrix::identity(b.ring(), hn.module.gens());
  if (n < res.length) {
    HomGroup hn1 = hom_group(cx.module_at(n + 1), b);
    ModMorphism delta_n = hom_pre(hn, hn1, cx.differential_at(n + 1));
    numer = kernel(delta_n).inclusion.gen_matrix();
  }
  Matrix denom = Matrix::zero(b.ring(), hn.module.gens(), 0);
  if (n >= 1) {
    HomGroup hprev = hom_group(cx.module_at(n - 1), b);
    denom = hom_pre(hprev, hn, cx.differential_at(n)).gen_matrix();
  }
  Subquotient sq = subquotient(hn.module, std::move(numer), std::move(denom));
  bool certified = res.exact || res.length >= n + 1;
  return {ExtResult{sq.module.shape(), n, certified}, std::move(res),
          std::move(hn), std::move(sq)};
}

}  // namespace

Resolution p_resolution(const ProjectiveClass& pc, const FpModule& a,
                        int length) {
  if (length < 0)
    throw std::invalid_argument("p_resolution: length must be >= 0");
  const std::string key = pc.fingerprint() + "&" + a.fingerprint();
  {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end() &&
        (it->second.exact || it->second.length >= length))
      return it->second;
  }
  Resolution res = build_resolution(pc, a, length);
  {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache().find(key);
    if (it == cache().end() || it->second.length < res.length)
      cache().insert_or_assign(key, res);
  }
  return res;
}

void clear_resolution_cache() {
  std::lock_guard<std::mutex> lk(cache_mutex);
  cache().clear();
}

ExtResult ext(const ProjectiveClass& pc, const FpModule& a, const FpModule& b,
              int n) {
  return ext_internal(pc, a, b, n).result;
}

ExtComparison ext_comparison(const FpModule& a, const FpModule& b, int n,
                             const Int& torsion_bound) {
  const Ring& ring = a.ring();
  ProjectiveClass pure = pure_class(ring, torsion_bound);
  ProjectiveClass cat = categorical_class(ring);
  ExtData pd = ext_internal(pure, a, b, n);
  ExtData cd = ext_internal(cat, a, b, n);
  const ChainComplex& rp = pd.res.complex;
  const ChainComplex& rc = cd.res.complex;

  // chain map over id_A from the categorical resolution to the pure one,
  // built degreewise; each lift exists because categorical projectives are
  // pure projective and the pure resolution is pure-exact
  std::vector<ModMorphism> psi;
  {
    auto psi0 = lift_through(pd.res.augmentation, cd.res.augmentation);
    if (!psi0) throw std::logic_error("ext_comparison: base lift failed");
    psi.push_back(*psi0);
  }
  for (int i = 1; i <= n + 1; ++i) {
    const FpModule src = rc.module_at(i);
    const FpModule tgt = rp.module_at(i);
    if (src.gens() == 0 || tgt.gens() == 0) {
      psi.push_back(zero_morphism(src, tgt));
      continue;
    }
    ModMorphism rhs = compose(psi.back(), rc.differential_at(i));
    BlockSystem sys(ring);
    int u = sys.add_unknown(tgt.gens(), src.gens());
    int w = sys.add_unknown(tgt.relations().cols(), src.relations().cols());
    int corr = sys.add_unknown(rp.module_at(i - 1).relations().cols(), src.gens());
    int e1 = sys.add_equation(rhs.gen_matrix());
    sys.add_term(e1, u, rp.differential_at(i).gen_matrix(),
                 Matrix::identity(ring, src.gens()));
    sys.add_term(e1, corr, rp.module_at(i - 1).relations(),
                 Matrix::identity(ring, src.gens()));
    int e2 = sys.add_equation(
        Matrix::zero(ring, tgt.gens(), src.relations().cols()));
    sys.add_term(e2, u, Matrix::identity(ring, tgt.gens()), src.relations());
    sys.add_term(e2, w, -tgt.relations(),
                 Matrix::identity(ring, src.relations().cols()));
    auto sol = sys.solve_all();
    if (!sol) throw std::logic_error("ext_comparison: comparison lift failed");
    psi.push_back(make_morphism(src, tgt, (*sol)[0]));
  }
  for (int i = 1; i <= n + 1; ++i) {
    ModMorphism lhs = compose(rp.differential_at(i), psi[static_cast<std::size_t>(i)]);
    ModMorphism rhs = compose(psi[static_cast<std::size_t>(i - 1)],
                              rc.differential_at(i));
    if (!eq(lhs, rhs))
      throw std::logic_error("ext_comparison: lifted map is not a chain map");
  }

  // induced map on degree-n cohomology by precomposition with psi_n
  Matrix map = Matrix::zero(ring, cd.cohomology.module.gens(),
                            pd.cohomology.module.gens());
  if (pd.cohomology.module.gens() > 0) {
    ModMorphism pre = hom_pre(pd.hom_n, cd.hom_n, psi[static_cast<std::size_t>(n)]);
    Matrix images = pre.gen_matrix() * pd.cohomology.numer;
    auto coords = cd.cohomology.coordinates(images);
    if (!coords)
      throw std::logic_error("ext_comparison: image misses the cohomology");
    map = *coords;
  }
  std::string desc;
  if (pd.result.shape.trivial())
    desc = "zero map from the trivial group";
  else if (cd.result.shape.trivial())
    desc = "zero map to the trivial group";
  else
    desc = "matrix " + map.to_string() + " on cohomology generators";
  return {pd.result, cd.result, std::move(map), std::move(desc)};
}

}  // namespace homalg
