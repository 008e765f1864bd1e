#include "homalg/smith.hpp"

#include <algorithm>
#include <stdexcept>

namespace homalg {

namespace {

Int abs_int(const Int& x) {
  Int a;
  mpz_abs(a.get_mpz_t(), x.get_mpz_t());
  return a;
}

// Smallest nonzero absolute value in d[s:, s:], ties broken by lowest row,
// then lowest column.
bool find_pivot(const IntMat& d, Index s, Index& pi, Index& pj) {
  bool found = false;
  Int best;
  for (Index i = s; i < d.rows(); ++i)
    for (Index j = s; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int a = abs_int(d(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

struct IntSmith {
  IntMat u, d, v;  // u * a * v = d over Z, det(u), det(v) = +-1
};

IntSmith smith_integer(IntMat d) {
  const Index m = d.rows(), k = d.cols();
  IntMat u(m, m), v(k, k);
  u.setZero();
  v.setZero();
  for (Index i = 0; i < m; ++i) u(i, i) = 1;
  for (Index j = 0; j < k; ++j) v(j, j) = 1;
  const Index limit = std::min(m, k);
  for (Index s = 0; s < limit; ++s) {
    Index pi = s, pj = s;
    if (!find_pivot(d, s, pi, pj)) break;  // remaining block is zero
    for (;;) {
      if (pi != s) {
        d.row(s).swap(d.row(pi));
        u.row(s).swap(u.row(pi));
      }
      if (pj != s) {
        d.col(s).swap(d.col(pj));
        v.col(s).swap(v.col(pj));
      }
      // Clear column s and row s by truncated division; leftover remainders
      // are strictly smaller than the pivot, so re-pivoting descends.
      bool residue = false;
      for (Index i = s + 1; i < m; ++i) {
        if (d(i, s) == 0) continue;
        Int q = d(i, s) / d(s, s);
        if (q != 0) {
          d.row(i) -= q * d.row(s);
          u.row(i) -= q * u.row(s);
        }
        if (d(i, s) != 0) residue = true;
      }
      for (Index j = s + 1; j < k; ++j) {
        if (d(s, j) == 0) continue;
        Int q = d(s, j) / d(s, s);
        if (q != 0) {
          d.col(j) -= q * d.col(s);
          v.col(j) -= q * v.col(s);
        }
        if (d(s, j) != 0) residue = true;
      }
      if (residue) {
        find_pivot(d, s, pi, pj);
        continue;
      }
      // Lone pivot; pull in a row whose entries it does not divide, if any.
      bool fixed = false;
      for (Index i = s + 1; i < m && !fixed; ++i)
        for (Index j = s + 1; j < k && !fixed; ++j)
          if (d(i, j) % d(s, s) != 0) {
            d.row(s) += d.row(i);
            u.row(s) += u.row(i);
            fixed = true;
          }
      if (!fixed) break;
      find_pivot(d, s, pi, pj);
    }
    if (d(s, s) < 0) {
      d.row(s) = -d.row(s);
      u.row(s) = -u.row(s);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

}  // namespace

SmithForm smith(const Matrix& a) {
  const Ring& ring = a.ring();
  IntSmith s = smith_integer(a.raw());
  const Index limit = std::min(a.rows(), a.cols());
  std::vector<Int> divisors;
  divisors.reserve(static_cast<std::size_t>(limit));
  if (!ring.is_modular()) {
    for (Index i = 0; i < limit; ++i) divisors.push_back(s.d(i, i));
    return {Matrix(ring, std::move(s.u)), Matrix(ring, std::move(s.d)),
            Matrix(ring, std::move(s.v)), std::move(divisors)};
  }
  // Over Z/n rescale each diagonal entry by a unit to the canonical
  // representative gcd(d, n) of its ideal; 0 stands for the zero ideal.
  const Int& n = ring.modulus();
  for (Index i = 0; i < limit; ++i) {
    Int d = s.d(i, i);
    Int g = gcd_int(d, n);
    if (g == n) {
      s.d(i, i) = 0;
      divisors.push_back(0);
      continue;
    }
    if (d != g) {
      Int dbar = d / g;
      Int m = n / g;
      auto u0 = invert_mod(dbar % m, m);
      if (!u0) throw std::logic_error("smith: unit lift failed");
      Int u = *u0;
      while (gcd_int(u, n) != 1) u += m;  // terminates within g steps
      s.u.row(i) *= u;
      s.d(i, i) = g;
    }
    divisors.push_back(g);
  }
  return {Matrix(ring, std::move(s.u)), Matrix(ring, std::move(s.d)),
          Matrix(ring, std::move(s.v)), std::move(divisors)};
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "solve");
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve: A and B must have equal row counts");
  const Ring& ring = a.ring();
  SmithForm sf = smith(a);
  Matrix y = sf.u * b;
  const Index limit = std::min(a.rows(), a.cols());
  IntMat z(a.cols(), b.cols());
  z.setZero();
  for (Index i = 0; i < a.rows(); ++i) {
    const Int d = i < limit ? sf.divisors[static_cast<std::size_t>(i)] : Int(0);
    for (Index j = 0; j < b.cols(); ++j) {
      const Int& rhs = y(i, j);
      if (d == 0) {
        if (rhs != 0) return std::nullopt;  // entries are ring-canonical
      } else {
        if (rhs % d != 0) return std::nullopt;
        if (i < a.cols()) z(i, j) = rhs / d;
      }
    }
  }
  return sf.v * Matrix(ring, std::move(z));
}

Matrix kernel_basis(const Matrix& a) {
  const Ring& ring = a.ring();
  SmithForm sf = smith(a);
  const Index limit = std::min(a.rows(), a.cols());
  std::vector<Matrix> cols;
  for (Index j = 0; j < a.cols(); ++j) {
    if (j >= limit) {
      cols.push_back(sf.v.col(j));
      continue;
    }
    const Int& g = sf.divisors[static_cast<std::size_t>(j)];
    if (g == 0) {
      cols.push_back(sf.v.col(j));
    } else if (ring.is_modular() && g != 1) {
      cols.push_back(scale(ring.modulus() / g, sf.v.col(j)));
    }
    // over Z a nonzero divisor pins the coordinate to 0; over Z/n a unit
    // divisor does the same
  }
  Matrix out = Matrix::zero(ring, a.cols(), 0);
  for (const Matrix& c : cols)
    if (!c.is_zero()) out = hcat(out, c);
  return out;
}

AbGroupShape cokernel_divisors(const Matrix& a) {
  const Ring& ring = a.ring();
  SmithForm sf = smith(a);
  const Index limit = std::min(a.rows(), a.cols());
  std::vector<Int> ds;
  for (Index i = 0; i < a.rows(); ++i) {
    Int d = i < limit ? sf.divisors[static_cast<std::size_t>(i)] : Int(0);
    if (ring.is_modular() && d == 0) d = ring.modulus();
    ds.push_back(std::move(d));
  }
  return AbGroupShape::from_divisors(std::move(ds));
}

}  // namespace homalg
