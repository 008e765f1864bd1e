#include "homalg/fpmod.hpp"

#include <algorithm>
#include <stdexcept>

#include "homalg/linsys.hpp"

namespace homalg {

FpModule::FpModule(Ring ring, Index gens, Matrix relations)
    : ring_(std::move(ring)), gens_(gens), relations_(std::move(relations)) {
  if (relations_.ring() != ring_)
    throw std::invalid_argument("FpModule: relations ring mismatch");
  if (relations_.rows() != gens_)
    throw std::invalid_argument("FpModule: relations must have one row per generator");
}

FpModule FpModule::zero(Ring ring) {
  return FpModule(ring, 0, Matrix::zero(ring, 0, 0));
}

FpModule FpModule::free(Ring ring, Index rank) {
  return FpModule(ring, rank, Matrix::zero(ring, rank, 0));
}

FpModule FpModule::cyclic(Ring ring, const Int& d) {
  Int c = ring.canon(d);
  if (c == 0) return free(ring, 1);
  IntMat rel(1, 1);
  rel(0, 0) = c;
  return FpModule(ring, 1, Matrix(ring, std::move(rel)));
}

std::string FpModule::fingerprint() const {
  return ring_.name() + "#" + std::to_string(gens_) + "#" +
         relations_.to_string();
}

std::optional<ModMorphism> try_make_morphism(const FpModule& src,
                                             const FpModule& tgt,
                                             Matrix gen_matrix) {
  if (src.ring() != tgt.ring() || gen_matrix.ring() != src.ring())
    throw std::invalid_argument("morphism: ring mismatch");
  if (gen_matrix.rows() != tgt.gens() || gen_matrix.cols() != src.gens())
    throw std::invalid_argument("morphism: gen_matrix must be target.gens x source.gens");
  auto witness = solve(tgt.relations(), gen_matrix * src.relations());
  if (!witness) return std::nullopt;
  return ModMorphism(src, tgt, std::move(gen_matrix), std::move(*witness));
}

ModMorphism make_morphism(const FpModule& src, const FpModule& tgt,
                          Matrix gen_matrix) {
  auto f = try_make_morphism(src, tgt, std::move(gen_matrix));
  if (!f)
    throw IllDefinedMorphism("gen_matrix does not respect the source relations");
  return *f;
}

ModMorphism zero_morphism(const FpModule& src, const FpModule& tgt) {
  return make_morphism(src, tgt, Matrix::zero(src.ring(), tgt.gens(), src.gens()));
}

ModMorphism identity_morphism(const FpModule& m) {
  return make_morphism(m, m, Matrix::identity(m.ring(), m.gens()));
}

ModMorphism compose(const ModMorphism& g, const ModMorphism& f) {
  if (f.target() != g.source())
    throw std::invalid_argument("compose: target/source mismatch");
  return make_morphism(f.source(), g.target(), g.gen_matrix() * f.gen_matrix());
}

ModMorphism operator+(const ModMorphism& f, const ModMorphism& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("morphism +: shape mismatch");
  return make_morphism(f.source(), f.target(), f.gen_matrix() + g.gen_matrix());
}

ModMorphism operator-(const ModMorphism& f, const ModMorphism& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("morphism -: shape mismatch");
  return make_morphism(f.source(), f.target(), f.gen_matrix() - g.gen_matrix());
}

ModMorphism operator-(const ModMorphism& f) {
  return make_morphism(f.source(), f.target(), -f.gen_matrix());
}

ModMorphism scale(const Int& c, const ModMorphism& f) {
  return make_morphism(f.source(), f.target(), scale(c, f.gen_matrix()));
}

bool eq(const ModMorphism& f, const ModMorphism& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw std::invalid_argument("morphism eq: shape mismatch");
  return solve(f.target().relations(), f.gen_matrix() - g.gen_matrix())
      .has_value();
}

bool is_zero(const ModMorphism& f) {
  return solve(f.target().relations(), f.gen_matrix()).has_value();
}

namespace {

// Columns of `cols` that are nonzero modulo im(rel); order preserved.
Matrix prune_columns_mod(const Matrix& cols, const Matrix& rel) {
  Matrix out = Matrix::zero(cols.ring(), cols.rows(), 0);
  for (Index j = 0; j < cols.cols(); ++j) {
    Matrix c = cols.col(j);
    if (!solve(rel, c).has_value()) out = hcat(out, c);
  }
  return out;
}

// {z : lattice * z lies in im(rel)} presented as a relation matrix on the
// lattice columns.
Matrix relations_for_lattice(const Matrix& lattice, const Matrix& rel) {
  Matrix kb = kernel_basis(hcat(lattice, rel));
  return kb.block(0, 0, lattice.cols(), kb.cols());
}

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Index i = 0; i < a.rows(); ++i) {
    if (a(i, 0) != b(i, 0)) return a(i, 0) < b(i, 0);
  }
  return false;
}

}  // namespace

KernelResult kernel(const ModMorphism& f) {
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  Matrix kb = kernel_basis(hcat(f.gen_matrix(), b.relations()));
  Matrix lattice = kb.block(0, 0, a.gens(), kb.cols());
  lattice = prune_columns_mod(lattice, a.relations());
  FpModule k(a.ring(), lattice.cols(),
             relations_for_lattice(lattice, a.relations()));
  return {k, make_morphism(k, a, lattice)};
}

CokernelResult cokernel(const ModMorphism& f) {
  const FpModule& b = f.target();
  FpModule c(b.ring(), b.gens(), hcat(b.relations(), f.gen_matrix()));
  return {c, make_morphism(b, c, Matrix::identity(b.ring(), b.gens()))};
}

HomGroup hom_group(const FpModule& a, const FpModule& b) {
  if (a.ring() != b.ring())
    throw std::invalid_argument("hom_group: ring mismatch");
  const Ring& ring = a.ring();
  const Index ag = a.gens(), ar = a.relations().cols();
  const Index bg = b.gens(), br = b.relations().cols();
  // F * a.rel = b.rel * W, linearized in (vec F, vec W).
  Matrix m = hcat(kron(a.relations().transposed(), Matrix::identity(ring, bg)),
                  -kron(Matrix::identity(ring, ar), b.relations()));
  Matrix kb = kernel_basis(m);
  std::vector<Matrix> cols;
  for (Index j = 0; j < kb.cols(); ++j) {
    Matrix fcol = kb.block(0, j, bg * ag, 1);
    auto mor = try_make_morphism(a, b, unvec(fcol, bg, ag));
    if (!mor) throw std::logic_error("hom_group: kernel column ill-defined");
    if (!is_zero(*mor)) cols.push_back(fcol);
  }
  std::sort(cols.begin(), cols.end(), lex_less);
  cols.erase(std::unique(cols.begin(), cols.end(),
                         [](const Matrix& x, const Matrix& y) { return x == y; }),
             cols.end());
  Matrix h = Matrix::zero(ring, bg * ag, 0);
  for (const Matrix& c : cols) h = hcat(h, c);
  Matrix trivial = kron(Matrix::identity(ring, ag), b.relations());
  FpModule module(ring, h.cols(), relations_for_lattice(h, trivial));
  std::vector<ModMorphism> gens;
  for (Index j = 0; j < h.cols(); ++j)
    gens.push_back(make_morphism(a, b, unvec(h.col(j), bg, ag)));
  return {a, b, module, std::move(gens), std::move(h)};
}

std::optional<Matrix> HomGroup::coordinates(const ModMorphism& f) const {
  if (f.source() != source || f.target() != target)
    throw std::invalid_argument("HomGroup::coordinates: wrong hom set");
  const Ring& ring = source.ring();
  Matrix trivial =
      kron(Matrix::identity(ring, source.gens()), target.relations());
  auto z = solve(hcat(gen_columns, trivial), vec(f.gen_matrix()));
  if (!z) return std::nullopt;
  return z->block(0, 0, gen_columns.cols(), 1);
}

ModMorphism HomGroup::from_coordinates(const Matrix& z) const {
  if (z.cols() != 1 || z.rows() != gen_columns.cols())
    throw std::invalid_argument("HomGroup::from_coordinates: bad coordinate size");
  return make_morphism(source, target,
                       unvec(gen_columns * z, target.gens(), source.gens()));
}

FpModule tensor(const FpModule& a, const FpModule& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("tensor: ring mismatch");
  const Ring& ring = a.ring();
  Matrix rel =
      hcat(kron(a.relations(), Matrix::identity(ring, b.gens())),
           kron(Matrix::identity(ring, a.gens()), b.relations()));
  return FpModule(ring, a.gens() * b.gens(), rel);
}

DirectSum direct_sum(const FpModule& a, const FpModule& b) {
  MultiSum s = direct_sum_many(a.ring(), {a, b});
  return {s.module, s.injection(0), s.injection(1), s.projection(0),
          s.projection(1)};
}

MultiSum direct_sum_many(Ring ring, std::vector<FpModule> parts) {
  std::vector<Index> off(1, 0);
  Index total = 0, rel_total = 0;
  for (const FpModule& p : parts) {
    if (p.ring() != ring)
      throw std::invalid_argument("direct_sum_many: ring mismatch");
    total += p.gens();
    rel_total += p.relations().cols();
    off.push_back(total);
  }
  IntMat rel(total, rel_total);
  rel.setZero();
  Index c0 = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Matrix& r = parts[i].relations();
    rel.block(off[i], c0, r.rows(), r.cols()) = r.raw();
    c0 += r.cols();
  }
  return {FpModule(ring, total, Matrix(ring, std::move(rel))),
          std::move(parts), std::move(off)};
}

ModMorphism MultiSum::injection(std::size_t i) const {
  const FpModule& p = parts.at(i);
  IntMat g(module.gens(), p.gens());
  g.setZero();
  for (Index k = 0; k < p.gens(); ++k) g(gen_offset[i] + k, k) = 1;
  return make_morphism(p, module, Matrix(module.ring(), std::move(g)));
}

ModMorphism MultiSum::projection(std::size_t i) const {
  const FpModule& p = parts.at(i);
  IntMat g(p.gens(), module.gens());
  g.setZero();
  for (Index k = 0; k < p.gens(); ++k) g(k, gen_offset[i] + k) = 1;
  return make_morphism(module, p, Matrix(module.ring(), std::move(g)));
}

std::optional<ModMorphism> lift_through(const ModMorphism& f,
                                        const ModMorphism& phi) {
  if (f.target() != phi.target())
    throw std::invalid_argument("lift_through: targets differ");
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  const FpModule& t = phi.source();
  const Ring& ring = a.ring();
  BlockSystem sys(ring);
  int psi = sys.add_unknown(a.gens(), t.gens());
  int weq = sys.add_unknown(b.relations().cols(), t.gens());
  int wwd = sys.add_unknown(a.relations().cols(), t.relations().cols());
  int e1 = sys.add_equation(phi.gen_matrix());
  sys.add_term(e1, psi, f.gen_matrix(), Matrix::identity(ring, t.gens()));
  sys.add_term(e1, weq, b.relations(), Matrix::identity(ring, t.gens()));
  int e2 = sys.add_equation(
      Matrix::zero(ring, a.gens(), t.relations().cols()));
  sys.add_term(e2, psi, Matrix::identity(ring, a.gens()), t.relations());
  sys.add_term(e2, wwd, -a.relations(),
               Matrix::identity(ring, t.relations().cols()));
  auto sol = sys.solve_all();
  if (!sol) return std::nullopt;
  return make_morphism(t, a, (*sol)[0]);
}

std::optional<ModMorphism> retraction_of(const ModMorphism& f) {
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  const Ring& ring = a.ring();
  BlockSystem sys(ring);
  int r = sys.add_unknown(a.gens(), b.gens());
  int weq = sys.add_unknown(a.relations().cols(), a.gens());
  int wwd = sys.add_unknown(a.relations().cols(), b.relations().cols());
  int e1 = sys.add_equation(Matrix::identity(ring, a.gens()));
  sys.add_term(e1, r, Matrix::identity(ring, a.gens()), f.gen_matrix());
  sys.add_term(e1, weq, a.relations(), Matrix::identity(ring, a.gens()));
  int e2 = sys.add_equation(
      Matrix::zero(ring, a.gens(), b.relations().cols()));
  sys.add_term(e2, r, Matrix::identity(ring, a.gens()), b.relations());
  sys.add_term(e2, wwd, -a.relations(),
               Matrix::identity(ring, b.relations().cols()));
  auto sol = sys.solve_all();
  if (!sol) return std::nullopt;
  return make_morphism(b, a, (*sol)[0]);
}

std::optional<ModMorphism> section_of(const ModMorphism& f) {
  return lift_through(f, identity_morphism(f.target()));
}

std::optional<ModMorphism> inverse_of(const ModMorphism& f) {
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  const Ring& ring = a.ring();
  BlockSystem sys(ring);
  int g = sys.add_unknown(a.gens(), b.gens());
  int wwd = sys.add_unknown(a.relations().cols(), b.relations().cols());
  int wl = sys.add_unknown(a.relations().cols(), a.gens());
  int wr = sys.add_unknown(b.relations().cols(), b.gens());
  int ewd = sys.add_equation(
      Matrix::zero(ring, a.gens(), b.relations().cols()));
  sys.add_term(ewd, g, Matrix::identity(ring, a.gens()), b.relations());
  sys.add_term(ewd, wwd, -a.relations(),
               Matrix::identity(ring, b.relations().cols()));
  int el = sys.add_equation(Matrix::identity(ring, a.gens()));
  sys.add_term(el, g, Matrix::identity(ring, a.gens()), f.gen_matrix());
  sys.add_term(el, wl, a.relations(), Matrix::identity(ring, a.gens()));
  int er = sys.add_equation(Matrix::identity(ring, b.gens()));
  sys.add_term(er, g, f.gen_matrix(), Matrix::identity(ring, b.gens()));
  sys.add_term(er, wr, b.relations(), Matrix::identity(ring, b.gens()));
  auto sol = sys.solve_all();
  if (!sol) return std::nullopt;
  return make_morphism(b, a, (*sol)[0]);
}

bool is_isomorphism(const ModMorphism& f) { return inverse_of(f).has_value(); }

Subquotient subquotient(const FpModule& ambient, Matrix numer, Matrix denom) {
  if (numer.rows() != ambient.gens() || denom.rows() != ambient.gens())
    throw std::invalid_argument("subquotient: generator rows mismatch");
  Matrix span = hcat(denom, ambient.relations());
  Matrix rels = kernel_basis(hcat(numer, span));
  FpModule module(ambient.ring(), numer.cols(),
                  rels.block(0, 0, numer.cols(), rels.cols()));
  return {ambient, std::move(numer), std::move(denom), std::move(module)};
}

std::optional<Matrix> Subquotient::coordinates(const Matrix& elements) const {
  auto z = solve(hcat(numer, hcat(denom, ambient.relations())), elements);
  if (!z) return std::nullopt;
  return z->block(0, 0, numer.cols(), elements.cols());
}

ModMorphism induced_map(const Subquotient& sq, const Subquotient& sq2,
                        const ModMorphism& f) {
  if (f.source() != sq.ambient || f.target() != sq2.ambient)
    throw std::invalid_argument("induced_map: ambient mismatch");
  auto coords = sq2.coordinates(f.gen_matrix() * sq.numer);
  if (!coords)
    throw std::logic_error("induced_map: image leaves the target subquotient");
  return make_morphism(sq.module, sq2.module, *coords);
}

ModMorphism hom_post(const HomGroup& src, const HomGroup& dst,
                     const ModMorphism& g) {
  if (src.source != dst.source || g.source() != src.target ||
      g.target() != dst.target)
    throw std::invalid_argument("hom_post: shape mismatch");
  Matrix m = Matrix::zero(g.ring(), dst.module.gens(), 0);
  for (const ModMorphism& h : src.generators) {
    auto c = dst.coordinates(compose(g, h));
    if (!c) throw std::logic_error("hom_post: composite has no coordinates");
    m = hcat(m, *c);
  }
  return make_morphism(src.module, dst.module, m);
}

ModMorphism hom_pre(const HomGroup& src, const HomGroup& dst,
                    const ModMorphism& g) {
  if (src.target != dst.target || g.target() != src.source ||
      g.source() != dst.source)
    throw std::invalid_argument("hom_pre: shape mismatch");
  Matrix m = Matrix::zero(g.ring(), dst.module.gens(), 0);
  for (const ModMorphism& h : src.generators) {
    auto c = dst.coordinates(compose(h, g));
    if (!c) throw std::logic_error("hom_pre: composite has no coordinates");
    m = hcat(m, *c);
  }
  return make_morphism(src.module, dst.module, m);
}

}  // namespace homalg
