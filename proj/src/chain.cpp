#include "homalg/chain.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "homalg/linsys.hpp"
#include "homalg/parallel.hpp"

namespace homalg {

int thread_cap() {
  if (const char* env = std::getenv("HOMALG_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(n, thread_cap());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<FpModule> modules,
                           std::vector<ModMorphism> differentials)
    : ring_(std::move(ring)), lo_(lo), modules_(std::move(modules)),
      diffs_(std::move(differentials)) {
  if (!modules_.empty() && diffs_.size() != modules_.size() - 1)
    throw std::invalid_argument("ChainComplex: need one differential per adjacent pair");
  for (const FpModule& m : modules_)
    if (m.ring() != ring_)
      throw std::invalid_argument("ChainComplex: module ring mismatch");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].source() != modules_[i + 1] || diffs_[i].target() != modules_[i])
      throw std::invalid_argument("ChainComplex: differential endpoints mismatch");
  }
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!is_zero(compose(diffs_[i], diffs_[i + 1])))
      throw std::invalid_argument("ChainComplex: d o d is nonzero");
  // tight support
  while (!modules_.empty() && modules_.back().gens() == 0) {
    modules_.pop_back();
    if (!diffs_.empty()) diffs_.pop_back();
  }
  while (!modules_.empty() && modules_.front().gens() == 0) {
    modules_.erase(modules_.begin());
    if (!diffs_.empty()) diffs_.erase(diffs_.begin());
    ++lo_;
  }
  if (modules_.empty()) lo_ = 0;
}

ChainComplex ChainComplex::zero(Ring ring) {
  return ChainComplex(std::move(ring), 0, {}, {});
}

FpModule ChainComplex::module_at(int n) const {
  if (modules_.empty() || n < lo_ || n > hi()) return FpModule::zero(ring_);
  return modules_[static_cast<std::size_t>(n - lo_)];
}

ModMorphism ChainComplex::differential_at(int n) const {
  if (!modules_.empty() && n > lo_ && n <= hi())
    return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
  return zero_morphism(module_at(n), module_at(n - 1));
}

std::string ChainComplex::fingerprint() const {
  std::string fp = ring_.name() + "!" + std::to_string(lo_);
  for (const FpModule& m : modules_) fp += "!" + m.fingerprint();
  for (const ModMorphism& d : diffs_) fp += "!" + d.gen_matrix().to_string();
  return fp;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring_ != b.ring_ || a.lo_ != b.lo_ ||
      a.modules_.size() != b.modules_.size())
    return false;
  for (std::size_t i = 0; i < a.modules_.size(); ++i)
    if (a.modules_[i] != b.modules_[i]) return false;
  for (std::size_t i = 0; i < a.diffs_.size(); ++i)
    if (a.diffs_[i].gen_matrix() != b.diffs_[i].gen_matrix()) return false;
  return true;
}

void ChainComplexBuilder::set_module(int degree, FpModule m) {
  modules_.insert_or_assign(degree, std::move(m));
}

void ChainComplexBuilder::set_differential(int degree, ModMorphism d) {
  diffs_.insert_or_assign(degree, std::move(d));
}

ChainComplex ChainComplexBuilder::build() const {
  if (modules_.empty()) return ChainComplex::zero(ring_);
  const int lo = modules_.begin()->first;
  const int hi = modules_.rbegin()->first;
  std::vector<FpModule> mods;
  for (int n = lo; n <= hi; ++n) {
    auto it = modules_.find(n);
    mods.push_back(it != modules_.end() ? it->second : FpModule::zero(ring_));
  }
  std::vector<ModMorphism> ds;
  for (int n = lo + 1; n <= hi; ++n) {
    auto it = diffs_.find(n);
    if (it != diffs_.end())
      ds.push_back(it->second);
    else
      ds.push_back(zero_morphism(mods[static_cast<std::size_t>(n - lo)],
                                 mods[static_cast<std::size_t>(n - lo - 1)]));
  }
  return ChainComplex(ring_, lo, std::move(mods), std::move(ds));
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   std::map<int, ModMorphism> components)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.ring() != target_.ring())
    throw std::invalid_argument("ChainMap: ring mismatch");
  for (auto& [n, c] : components) {
    if (c.source() != source_.module_at(n) || c.target() != target_.module_at(n))
      throw std::invalid_argument("ChainMap: component endpoints mismatch");
    if (c.gen_matrix().rows() > 0 && c.gen_matrix().cols() > 0)
      components_.emplace(n, std::move(c));
  }
  const int lo = std::min(source_.lo(), target_.lo());
  const int hi = std::max(source_.hi(), target_.hi());
  for (int n = lo; n <= hi + 1; ++n) {
    ModMorphism lhs = compose(target_.differential_at(n), component_at(n));
    ModMorphism rhs = compose(component_at(n - 1), source_.differential_at(n));
    if (!eq(lhs, rhs))
      throw std::invalid_argument("ChainMap: does not commute with differentials");
  }
}

ChainMap ChainMap::zero(ChainComplex source, ChainComplex target) {
  return ChainMap(std::move(source), std::move(target), {});
}

ModMorphism ChainMap::component_at(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return zero_morphism(source_.module_at(n), target_.module_at(n));
}

ChainMap identity_chain_map(const ChainComplex& x) {
  std::map<int, ModMorphism> comps;
  for (int n = x.lo(); n <= x.hi(); ++n)
    comps.emplace(n, identity_morphism(x.module_at(n)));
  return ChainMap(x, x, std::move(comps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (f.target() != g.source())
    throw std::invalid_argument("compose: chain maps not composable");
  std::map<int, ModMorphism> comps;
  const int lo = std::min(f.source().lo(), g.target().lo());
  const int hi = std::max(f.source().hi(), g.target().hi());
  for (int n = lo; n <= hi; ++n)
    comps.emplace(n, compose(g.component_at(n), f.component_at(n)));
  return ChainMap(f.source(), g.target(), std::move(comps));
}

ChainMap operator+(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("chain map +: shape mismatch");
  std::map<int, ModMorphism> comps;
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int n = lo; n <= hi; ++n)
    comps.emplace(n, f.component_at(n) + g.component_at(n));
  return ChainMap(f.source(), f.target(), std::move(comps));
}

ChainMap operator-(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("chain map -: shape mismatch");
  std::map<int, ModMorphism> comps;
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int n = lo; n <= hi; ++n)
    comps.emplace(n, f.component_at(n) - g.component_at(n));
  return ChainMap(f.source(), f.target(), std::move(comps));
}

bool eq(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("chain map eq: shape mismatch");
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int n = lo; n <= hi; ++n)
    if (!eq(f.component_at(n), g.component_at(n))) return false;
  return true;
}

bool is_zero(const ChainMap& f) {
  const int lo = f.source().lo();
  const int hi = f.source().hi();
  for (int n = lo; n <= hi; ++n)
    if (!is_zero(f.component_at(n))) return false;
  return true;
}

ChainHomotopy::ChainHomotopy(ChainMap f, ChainMap g,
                             std::map<int, ModMorphism> components)
    : f_(std::move(f)), g_(std::move(g)) {
  if (f_.source() != g_.source() || f_.target() != g_.target())
    throw std::invalid_argument("ChainHomotopy: maps have different shapes");
  const ChainComplex& x = f_.source();
  const ChainComplex& y = f_.target();
  for (auto& [n, h] : components) {
    if (h.source() != x.module_at(n) || h.target() != y.module_at(n + 1))
      throw std::invalid_argument("ChainHomotopy: component endpoints mismatch");
    if (h.gen_matrix().rows() > 0 && h.gen_matrix().cols() > 0)
      components_.emplace(n, std::move(h));
  }
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi());
  for (int n = lo; n <= hi; ++n) {
    ModMorphism want = f_.component_at(n) - g_.component_at(n);
    ModMorphism have = compose(y.differential_at(n + 1), component_at(n)) +
                       compose(component_at(n - 1), x.differential_at(n));
    if (!eq(want, have))
      throw std::invalid_argument("ChainHomotopy: f - g != dh + hd");
  }
}

ModMorphism ChainHomotopy::component_at(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return zero_morphism(f_.source().module_at(n), f_.target().module_at(n + 1));
}

Subquotient homology_subquotient(const ChainComplex& x, int n) {
  KernelResult k = kernel(x.differential_at(n));
  return subquotient(x.module_at(n), k.inclusion.gen_matrix(),
                     x.differential_at(n + 1).gen_matrix());
}

AbGroupShape homology(const ChainComplex& x, int n) {
  return homology_subquotient(x, n).module.shape();
}

ModMorphism induced_on_homology(const ChainMap& f, int n) {
  return induced_map(homology_subquotient(f.source(), n),
                     homology_subquotient(f.target(), n), f.component_at(n));
}

ChainComplex sphere(const FpModule& a, int n) {
  ChainComplexBuilder b(a.ring());
  b.set_module(n, a);
  return b.build();
}

ChainComplex disk(const FpModule& a, int n) {
  ChainComplexBuilder b(a.ring());
  b.set_module(n, a);
  b.set_module(n - 1, a);
  b.set_differential(n, identity_morphism(a));
  return b.build();
}

ChainMap sphere_to_disk(const FpModule& a, int n) {
  ChainComplex s = sphere(a, n - 1);
  ChainComplex d = disk(a, n);
  std::map<int, ModMorphism> comps;
  if (a.gens() > 0) comps.emplace(n - 1, identity_morphism(a));
  return ChainMap(std::move(s), std::move(d), std::move(comps));
}

ChainComplex suspend(const ChainComplex& x) {
  std::vector<FpModule> mods;
  std::vector<ModMorphism> ds;
  for (int n = x.lo(); n <= x.hi(); ++n) mods.push_back(x.module_at(n));
  for (int n = x.lo() + 1; n <= x.hi(); ++n) ds.push_back(-x.differential_at(n));
  return ChainComplex(x.ring(), x.lo() + 1, std::move(mods), std::move(ds));
}

ChainComplex loop_complex(const ChainComplex& x) {
  std::vector<FpModule> mods;
  std::vector<ModMorphism> ds;
  for (int n = x.lo(); n <= x.hi(); ++n) mods.push_back(x.module_at(n));
  for (int n = x.lo() + 1; n <= x.hi(); ++n) ds.push_back(-x.differential_at(n));
  return ChainComplex(x.ring(), x.lo() - 1, std::move(mods), std::move(ds));
}

ChainMap suspend(const ChainMap& f) {
  std::map<int, ModMorphism> comps;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n)
    comps.emplace(n + 1, f.component_at(n));
  return ChainMap(suspend(f.source()), suspend(f.target()), std::move(comps));
}

Triangle standard_triangle(const ChainMap& f) {
  const ChainComplex& l = f.source();
  const ChainComplex& m = f.target();
  const Ring& ring = f.ring();
  const int lo = std::min(m.lo(), l.lo() + 1);
  const int hi = std::max(m.hi(), l.hi() + 1);
  ChainComplexBuilder cb(ring);
  std::map<int, MultiSum> sums;
  for (int n = lo; n <= hi; ++n) {
    sums.emplace(n, direct_sum_many(ring, {m.module_at(n), l.module_at(n - 1)}));
    cb.set_module(n, sums.at(n).module);
  }
  for (int n = lo + 1; n <= hi; ++n) {
    const FpModule& src = sums.at(n).module;
    const FpModule& tgt = sums.at(n - 1).module;
    const Index mg1 = m.module_at(n - 1).gens();
    IntMat g(tgt.gens(), src.gens());
    g.setZero();
    const Matrix& dm = m.differential_at(n).gen_matrix();
    const Matrix& fl = f.component_at(n - 1).gen_matrix();
    const Matrix& dl = l.differential_at(n - 1).gen_matrix();
    g.block(0, 0, dm.rows(), dm.cols()) = dm.raw();
    g.block(0, dm.cols(), fl.rows(), fl.cols()) = fl.raw();
    g.block(mg1, dm.cols(), dl.rows(), dl.cols()) = (-dl).raw();
    cb.set_differential(n, make_morphism(src, tgt, Matrix(ring, std::move(g))));
  }
  ChainComplex cone = cb.build();
  ChainComplex sl = suspend(l);
  std::map<int, ModMorphism> inc, prj;
  for (int n = lo; n <= hi; ++n) {
    const MultiSum& s = sums.at(n);
    if (m.module_at(n).gens() > 0)
      inc.emplace(n, make_morphism(m.module_at(n), cone.module_at(n),
                                   s.injection(0).gen_matrix()));
    if (l.module_at(n - 1).gens() > 0)
      prj.emplace(n, make_morphism(cone.module_at(n), sl.module_at(n),
                                   s.projection(1).gen_matrix()));
  }
  return {cone, ChainMap(m, cone, std::move(inc)),
          ChainMap(cone, std::move(sl), std::move(prj))};
}

ComplexSum direct_sum_complex(const ChainComplex& x, const ChainComplex& y) {
  if (x.ring() != y.ring())
    throw std::invalid_argument("direct_sum_complex: ring mismatch");
  const Ring& ring = x.ring();
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi());
  ChainComplexBuilder cb(ring);
  std::map<int, MultiSum> sums;
  for (int n = lo; n <= hi; ++n) {
    sums.emplace(n, direct_sum_many(ring, {x.module_at(n), y.module_at(n)}));
    cb.set_module(n, sums.at(n).module);
  }
  for (int n = lo + 1; n <= hi; ++n) {
    const FpModule& src = sums.at(n).module;
    const FpModule& tgt = sums.at(n - 1).module;
    IntMat g(tgt.gens(), src.gens());
    g.setZero();
    const Matrix& dx = x.differential_at(n).gen_matrix();
    const Matrix& dy = y.differential_at(n).gen_matrix();
    const Index rx = x.module_at(n - 1).gens();
    const Index cx = x.module_at(n).gens();
    g.block(0, 0, dx.rows(), dx.cols()) = dx.raw();
    g.block(rx, cx, dy.rows(), dy.cols()) = dy.raw();
    cb.set_differential(n, make_morphism(src, tgt, Matrix(ring, std::move(g))));
  }
  ChainComplex sum = cb.build();
  std::map<int, ModMorphism> i1, i2, p1, p2;
  for (int n = lo; n <= hi; ++n) {
    const MultiSum& s = sums.at(n);
    if (x.module_at(n).gens() > 0) {
      i1.emplace(n, make_morphism(x.module_at(n), sum.module_at(n),
                                  s.injection(0).gen_matrix()));
      p1.emplace(n, make_morphism(sum.module_at(n), x.module_at(n),
                                  s.projection(0).gen_matrix()));
    }
    if (y.module_at(n).gens() > 0) {
      i2.emplace(n, make_morphism(y.module_at(n), sum.module_at(n),
                                  s.injection(1).gen_matrix()));
      p2.emplace(n, make_morphism(sum.module_at(n), y.module_at(n),
                                  s.projection(1).gen_matrix()));
    }
  }
  return {sum, ChainMap(x, sum, std::move(i1)), ChainMap(y, sum, std::move(i2)),
          ChainMap(sum, x, std::move(p1)), ChainMap(sum, y, std::move(p2))};
}

ChainMap pair_into_product(const ComplexSum& s, const ChainMap& f,
                           const ChainMap& g) {
  return compose(s.in1, f) + compose(s.in2, g);
}

ChainMap copair_from_coproduct(const ComplexSum& s, const ChainMap& f,
                               const ChainMap& g) {
  return compose(f, s.pr1) + compose(g, s.pr2);
}

PathObject path_object(const ChainComplex& n) {
  const Ring& ring = n.ring();
  const int lo = n.lo() - 1;
  const int hi = n.hi();
  ChainComplexBuilder cb(ring);
  std::map<int, MultiSum> sums;
  for (int m = lo; m <= hi; ++m) {
    sums.emplace(m, direct_sum_many(
                        ring, {n.module_at(m), n.module_at(m + 1), n.module_at(m)}));
    cb.set_module(m, sums.at(m).module);
  }
  for (int m = lo + 1; m <= hi; ++m) {
    const FpModule& src = sums.at(m).module;
    const FpModule& tgt = sums.at(m - 1).module;
    const Index g0 = n.module_at(m).gens();      // outer slots at degree m
    const Index t0 = n.module_at(m - 1).gens();  // outer slots at degree m-1
    const Matrix& d = n.differential_at(m).gen_matrix();
    const Matrix& dmid = n.differential_at(m + 1).gen_matrix();
    IntMat mat(tgt.gens(), src.gens());
    mat.setZero();
    // (x, y, x') |-> (dx, x - x' - dy, dx')
    mat.block(0, 0, d.rows(), d.cols()) = d.raw();
    for (Index i = 0; i < g0; ++i) {
      mat(t0 + i, i) = 1;
      mat(t0 + i, g0 + n.module_at(m + 1).gens() + i) = -1;
    }
    mat.block(t0, g0, dmid.rows(), dmid.cols()) = (-dmid).raw();
    mat.block(t0 + g0, g0 + dmid.cols(), d.rows(), d.cols()) = d.raw();
    cb.set_differential(m, make_morphism(src, tgt, Matrix(ring, std::move(mat))));
  }
  ChainComplex path = cb.build();
  ComplexSum prod = direct_sum_complex(n, n);
  std::map<int, ModMorphism> av, bv, pv;
  std::vector<std::pair<int, ModMorphism>> sections;
  for (int m = lo; m <= hi; ++m) {
    const Index g = n.module_at(m).gens();
    const Index gmid = n.module_at(m + 1).gens();
    if (g > 0) {
      IntMat a(2 * g + gmid, g);
      a.setZero();
      for (Index i = 0; i < g; ++i) {
        a(i, i) = 1;
        a(g + gmid + i, i) = 1;
      }
      av.emplace(m, make_morphism(n.module_at(m), path.module_at(m),
                                  Matrix(ring, std::move(a))));
      IntMat p(g, 2 * g + gmid);
      p.setZero();
      for (Index i = 0; i < g; ++i) p(i, i) = 1;
      pv.emplace(m, make_morphism(path.module_at(m), n.module_at(m),
                                  Matrix(ring, std::move(p))));
    }
    if (2 * g + gmid > 0) {
      IntMat b(2 * g, 2 * g + gmid);
      b.setZero();
      for (Index i = 0; i < g; ++i) {
        b(i, i) = 1;
        b(g + i, g + gmid + i) = 1;
      }
      bv.emplace(m, make_morphism(path.module_at(m), prod.sum.module_at(m),
                                  Matrix(ring, std::move(b))));
      IntMat s(2 * g + gmid, 2 * g);
      s.setZero();
      for (Index i = 0; i < g; ++i) {
        s(i, i) = 1;
        s(g + gmid + i, g + i) = 1;
      }
      sections.emplace_back(m, make_morphism(prod.sum.module_at(m),
                                             path.module_at(m),
                                             Matrix(ring, std::move(s))));
    }
  }
  ChainMap alpha(n, path, std::move(av));
  ChainMap beta(path, prod.sum, std::move(bv));
  ChainMap alpha_inv(path, n, std::move(pv));
  if (!eq(compose(alpha_inv, alpha), identity_chain_map(n)))
    throw std::logic_error("path_object: projection o alpha != id");
  auto htpy =
      find_chain_homotopy(compose(alpha, alpha_inv), identity_chain_map(path));
  if (!htpy) throw std::logic_error("path_object: alpha is not an equivalence");
  return {path,      prod.sum,  std::move(alpha), std::move(beta),
          std::move(alpha_inv), std::move(*htpy), std::move(sections)};
}

CylinderObject cylinder_object(const ChainComplex& m) {
  const Ring& ring = m.ring();
  const int lo = m.lo();
  const int hi = m.hi() + 1;
  ChainComplexBuilder cb(ring);
  std::map<int, MultiSum> sums;
  for (int n = lo; n <= hi; ++n) {
    sums.emplace(n, direct_sum_many(
                        ring, {m.module_at(n), m.module_at(n - 1), m.module_at(n)}));
    cb.set_module(n, sums.at(n).module);
  }
  for (int n = lo + 1; n <= hi; ++n) {
    const FpModule& src = sums.at(n).module;
    const FpModule& tgt = sums.at(n - 1).module;
    const Index g0 = m.module_at(n).gens();
    const Index gm1 = m.module_at(n - 1).gens();
    const Matrix& d = m.differential_at(n).gen_matrix();
    const Matrix& dm1 = m.differential_at(n - 1).gen_matrix();
    IntMat mat(tgt.gens(), src.gens());
    mat.setZero();
    // (x, y, x') |-> (dx + y, -dy, dx' - y)
    mat.block(0, 0, d.rows(), d.cols()) = d.raw();
    for (Index i = 0; i < gm1; ++i) {
      mat(i, g0 + i) = 1;
      mat(gm1 + m.module_at(n - 2).gens() + i, g0 + i) = -1;
    }
    mat.block(gm1, g0, dm1.rows(), dm1.cols()) = (-dm1).raw();
    mat.block(gm1 + dm1.rows(), g0 + gm1, d.rows(), d.cols()) = d.raw();
    cb.set_differential(n, make_morphism(src, tgt, Matrix(ring, std::move(mat))));
  }
  ChainComplex cyl = cb.build();
  ComplexSum cop = direct_sum_complex(m, m);
  std::map<int, ModMorphism> iv, fv, sv;
  for (int n = lo; n <= hi; ++n) {
    const Index g = m.module_at(n).gens();
    const Index gm1 = m.module_at(n - 1).gens();
    if (2 * g > 0) {
      IntMat i(2 * g + gm1, 2 * g);
      i.setZero();
      for (Index k = 0; k < g; ++k) {
        i(k, k) = 1;
        i(g + gm1 + k, g + k) = 1;
      }
      iv.emplace(n, make_morphism(cop.sum.module_at(n), cyl.module_at(n),
                                  Matrix(ring, std::move(i))));
    }
    if (g > 0) {
      IntMat f(g, 2 * g + gm1);
      f.setZero();
      for (Index k = 0; k < g; ++k) {
        f(k, k) = 1;
        f(k, g + gm1 + k) = 1;
      }
      fv.emplace(n, make_morphism(cyl.module_at(n), m.module_at(n),
                                  Matrix(ring, std::move(f))));
      IntMat s(2 * g + gm1, g);
      s.setZero();
      for (Index k = 0; k < g; ++k) s(k, k) = 1;
      sv.emplace(n, make_morphism(m.module_at(n), cyl.module_at(n),
                                  Matrix(ring, std::move(s))));
    }
  }
  ChainMap include(cop.sum, cyl, std::move(iv));
  ChainMap fold(cyl, m, std::move(fv));
  ChainMap section(m, cyl, std::move(sv));
  ChainMap codiag = copair_from_coproduct(cop, identity_chain_map(m),
                                          identity_chain_map(m));
  if (!eq(compose(fold, include), codiag))
    throw std::logic_error("cylinder_object: fold o include != codiagonal");
  if (!eq(compose(fold, section), identity_chain_map(m)))
    throw std::logic_error("cylinder_object: fold o section != id");
  auto htpy =
      find_chain_homotopy(compose(section, fold), identity_chain_map(cyl));
  if (!htpy)
    throw std::logic_error("cylinder_object: fold is not an equivalence");
  return {cyl,      cop.sum,  std::move(include),
          std::move(fold), std::move(section), std::move(*htpy)};
}

std::optional<ChainHomotopy> find_chain_homotopy(const ChainMap& f,
                                                 const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("find_chain_homotopy: shape mismatch");
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const Ring& ring = f.ring();
  BlockSystem sys(ring);
  std::map<int, int> hidx;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const FpModule xn = x.module_at(n);
    const FpModule yn1 = y.module_at(n + 1);
    if (xn.gens() == 0 || yn1.gens() == 0) continue;
    int h = sys.add_unknown(yn1.gens(), xn.gens());
    hidx[n] = h;
    // well-definedness of h_n
    int w = sys.add_unknown(yn1.relations().cols(), xn.relations().cols());
    int e = sys.add_equation(
        Matrix::zero(ring, yn1.gens(), xn.relations().cols()));
    sys.add_term(e, h, Matrix::identity(ring, yn1.gens()), xn.relations());
    sys.add_term(e, w, -yn1.relations(),
                 Matrix::identity(ring, xn.relations().cols()));
  }
  for (int n = std::min(x.lo(), y.lo()); n <= std::max(x.hi(), y.hi()); ++n) {
    const FpModule xn = x.module_at(n);
    const FpModule yn = y.module_at(n);
    if (xn.gens() == 0 || yn.gens() == 0) continue;
    int e = sys.add_equation(f.component_at(n).gen_matrix() -
                             g.component_at(n).gen_matrix());
    auto up = hidx.find(n);
    if (up != hidx.end())
      sys.add_term(e, up->second, y.differential_at(n + 1).gen_matrix(),
                   Matrix::identity(ring, xn.gens()));
    auto down = hidx.find(n - 1);
    if (down != hidx.end())
      sys.add_term(e, down->second, Matrix::identity(ring, yn.gens()),
                   x.differential_at(n).gen_matrix());
    int w = sys.add_unknown(yn.relations().cols(), xn.gens());
    sys.add_term(e, w, yn.relations(), Matrix::identity(ring, xn.gens()));
  }
  auto sol = sys.solve_all();
  if (!sol) return std::nullopt;
  std::map<int, ModMorphism> comps;
  for (auto [n, idx] : hidx)
    comps.emplace(n, make_morphism(x.module_at(n), y.module_at(n + 1),
                                   (*sol)[static_cast<std::size_t>(idx)]));
  return ChainHomotopy(f, g, std::move(comps));
}

HomComplex hom_complex(const FpModule& q, const ChainComplex& x) {
  ChainComplexBuilder cb(x.ring());
  std::map<int, HomGroup> homs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    homs.emplace(n, hom_group(q, x.module_at(n)));
    cb.set_module(n, homs.at(n).module);
  }
  for (int n = x.lo() + 1; n <= x.hi(); ++n)
    cb.set_differential(
        n, hom_post(homs.at(n), homs.at(n - 1), x.differential_at(n)));
  return {cb.build(), std::move(homs)};
}

ChainMap hom_chain_map(const ChainMap& f, const HomComplex& hx,
                       const HomComplex& hy) {
  std::map<int, ModMorphism> comps;
  for (const auto& [n, hgx] : hx.homs) {
    auto it = hy.homs.find(n);
    if (it == hy.homs.end()) continue;
    comps.emplace(n, hom_post(hgx, it->second, f.component_at(n)));
  }
  // components where one side has no hom data are zero
  std::map<int, ModMorphism> filtered;
  for (auto& [n, c] : comps)
    if (c.source() == hx.complex.module_at(n) &&
        c.target() == hy.complex.module_at(n))
      filtered.emplace(n, std::move(c));
  return ChainMap(hx.complex, hy.complex, std::move(filtered));
}

bool is_weak_equivalence(const ProjectiveClass& pc, const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi());
  std::atomic<bool> ok{true};
  const auto& tests = pc.test_set();
  parallel_for(static_cast<int>(tests.size()), [&](int qi) {
    if (!ok.load()) return;
    HomComplex hx = hom_complex(tests[static_cast<std::size_t>(qi)], x);
    HomComplex hy = hom_complex(tests[static_cast<std::size_t>(qi)], y);
    ChainMap ff = hom_chain_map(f, hx, hy);
    for (int n = lo; n <= hi && ok.load(); ++n)
      if (!is_isomorphism(induced_on_homology(ff, n))) ok = false;
  });
  return ok.load();
}

bool is_fibration(const ProjectiveClass& pc, const ChainMap& f) {
  const ChainComplex& y = f.target();
  for (int n = y.lo(); n <= y.hi(); ++n)
    if (!is_p_epi(pc, f.component_at(n))) return false;
  return true;
}

bool is_cofibration(const ProjectiveClass& pc, const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi());
  for (int n = lo; n <= hi; ++n) {
    ModMorphism fn = f.component_at(n);
    if (!retraction_of(fn)) return false;
    if (!is_p_projective(pc, cokernel(fn).module)) return false;
  }
  return true;
}

ChainMapGroup chain_map_group(const ChainComplex& x, const ChainComplex& y) {
  if (x.ring() != y.ring())
    throw std::invalid_argument("chain_map_group: ring mismatch");
  const Ring& ring = x.ring();
  std::vector<int> degrees;
  std::vector<HomGroup> homs;
  std::vector<FpModule> blocks;
  for (int n = std::max(x.lo(), y.lo()); n <= std::min(x.hi(), y.hi()); ++n) {
    if (x.module_at(n).gens() == 0 || y.module_at(n).gens() == 0) continue;
    degrees.push_back(n);
    homs.push_back(hom_group(x.module_at(n), y.module_at(n)));
    blocks.push_back(homs.back().module);
  }
  MultiSum ambient = direct_sum_many(ring, blocks);

  std::vector<int> cdeg;
  std::vector<HomGroup> choms;
  std::vector<FpModule> cblocks;
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    if (x.module_at(n).gens() == 0 || y.module_at(n - 1).gens() == 0) continue;
    cdeg.push_back(n);
    choms.push_back(hom_group(x.module_at(n), y.module_at(n - 1)));
    cblocks.push_back(choms.back().module);
  }
  MultiSum codomain = direct_sum_many(ring, cblocks);

  auto block_of = [&](int n) -> int {
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] == n) return static_cast<int>(i);
    return -1;
  };
  IntMat big(codomain.module.gens(), ambient.module.gens());
  big.setZero();
  for (std::size_t c = 0; c < cdeg.size(); ++c) {
    const int n = cdeg[c];
    const Index r0 = codomain.gen_offset[c];
    int bi = block_of(n);
    if (bi >= 0) {
      Matrix t = hom_post(homs[static_cast<std::size_t>(bi)], choms[c],
                          y.differential_at(n))
                     .gen_matrix();
      big.block(r0, ambient.gen_offset[static_cast<std::size_t>(bi)], t.rows(),
                t.cols()) = t.raw();
    }
    int bj = block_of(n - 1);
    if (bj >= 0) {
      Matrix t = hom_pre(homs[static_cast<std::size_t>(bj)], choms[c],
                         x.differential_at(n))
                     .gen_matrix();
      big.block(r0, ambient.gen_offset[static_cast<std::size_t>(bj)], t.rows(),
                t.cols()) -= t.raw();
    }
  }
  ModMorphism constraint = make_morphism(ambient.module, codomain.module,
                                         Matrix(ring, std::move(big)));
  KernelResult k = kernel(constraint);
  ChainMapGroup g{x, y, std::move(degrees), std::move(homs), std::move(ambient),
                  k.inclusion.gen_matrix(), {}};
  for (Index j = 0; j < g.generator_coords.cols(); ++j)
    g.generators.push_back(g.from_coords(g.generator_coords.col(j)));
  return g;
}

ChainMap ChainMapGroup::from_coords(const Matrix& z) const {
  std::map<int, ModMorphism> comps;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Matrix slice = z.block(ambient.gen_offset[i], 0,
                           homs[i].module.gens(), 1);
    comps.emplace(degrees[i], homs[i].from_coordinates(slice));
  }
  return ChainMap(source, target, std::move(comps));
}

std::optional<Matrix> ChainMapGroup::coords_of(const ChainMap& f) const {
  Matrix out = Matrix::zero(source.ring(), ambient.module.gens(), 1);
  IntMat col(ambient.module.gens(), 1);
  col.setZero();
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    auto c = homs[i].coordinates(f.component_at(degrees[i]));
    if (!c) return std::nullopt;
    for (Index r = 0; r < c->rows(); ++r)
      col(ambient.gen_offset[i] + r, 0) = (*c)(r, 0);
  }
  return Matrix(source.ring(), std::move(col));
}

AbGroupShape homotopy_class_group(const ChainComplex& x,
                                  const ChainComplex& y) {
  ChainMapGroup cmg = chain_map_group(x, y);
  const Ring& ring = x.ring();
  Matrix denom = Matrix::zero(ring, cmg.ambient.module.gens(), 0);
  for (int m = x.lo(); m <= x.hi(); ++m) {
    if (x.module_at(m).gens() == 0 || y.module_at(m + 1).gens() == 0) continue;
    HomGroup hg = hom_group(x.module_at(m), y.module_at(m + 1));
    for (const ModMorphism& h : hg.generators) {
      std::map<int, ModMorphism> comps;
      ModMorphism at_m = compose(y.differential_at(m + 1), h);
      if (at_m.gen_matrix().rows() > 0) comps.emplace(m, at_m);
      ModMorphism at_m1 = compose(h, x.differential_at(m + 1));
      if (at_m1.gen_matrix().rows() > 0 && x.module_at(m + 1).gens() > 0)
        comps.emplace(m + 1, at_m1);
      ChainMap null_map(x, y, std::move(comps));
      auto coords = cmg.coords_of(null_map);
      if (!coords)
        throw std::logic_error("homotopy_class_group: coordinates failed");
      denom = hcat(denom, *coords);
    }
  }
  return subquotient(cmg.ambient.module, cmg.generator_coords, denom)
      .module.shape();
}

}  // namespace homalg
