#include "homalg/matrix.hpp"

#include <stdexcept>

namespace homalg {

namespace {

IntMat canonicalize(const Ring& ring, IntMat m) {
  if (ring.is_modular()) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = ring.canon(m(i, j));
  }
  return m;
}

}  // namespace

Matrix::Matrix(Ring ring, IntMat entries)
    : ring_(std::move(ring)), m_(canonicalize(ring_, std::move(entries))) {}

Matrix Matrix::zero(Ring ring, Index rows, Index cols) {
  IntMat m(rows, cols);
  m.setZero();
  return Matrix(std::move(ring), std::move(m));
}

Matrix Matrix::identity(Ring ring, Index n) {
  IntMat m(n, n);
  m.setZero();
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return Matrix(std::move(ring), std::move(m));
}

Matrix Matrix::diagonal(Ring ring, const std::vector<Int>& diag) {
  const Index n = static_cast<Index>(diag.size());
  IntMat m(n, n);
  m.setZero();
  for (Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return Matrix(std::move(ring), std::move(m));
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<Int>>& rows) {
  const Index r = static_cast<Index>(rows.size());
  Index c = 0;
  if (r > 0) c = static_cast<Index>(rows[0].size());
  IntMat m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != c)
      throw std::invalid_argument("Matrix::from_rows: ragged row lengths");
    for (Index j = 0; j < c; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return Matrix(std::move(ring), std::move(m));
}

Matrix Matrix::block(Index i, Index j, Index r, Index c) const {
  return Matrix(ring_, IntMat(m_.block(i, j, r, c)));
}

bool Matrix::is_zero() const { return int_mat_is_zero(m_); }

std::string Matrix::to_string() const {
  std::string s = "[";
  for (Index i = 0; i < rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (Index j = 0; j < cols(); ++j) {
      if (j) s += ",";
      s += m_(i, j).get_str();
    }
    s += "]";
  }
  s += "]";
  return s;
}

void require_same_ring(const Matrix& a, const Matrix& b, const char* where) {
  if (a.ring() != b.ring())
    throw std::invalid_argument(std::string(where) + ": ring mismatch");
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "operator*");
  if (a.cols() != b.rows())
    throw std::invalid_argument("operator*: dimension mismatch");
  return Matrix(a.ring(), IntMat(a.raw() * b.raw()));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "operator+");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("operator+: dimension mismatch");
  return Matrix(a.ring(), IntMat(a.raw() + b.raw()));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "operator-");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("operator-: dimension mismatch");
  return Matrix(a.ring(), IntMat(a.raw() - b.raw()));
}

Matrix operator-(const Matrix& a) { return Matrix(a.ring(), IntMat(-a.raw())); }

Matrix scale(const Int& c, const Matrix& a) {
  IntMat m = a.raw();
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) m(i, j) *= c;
  return Matrix(a.ring(), std::move(m));
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring() == b.ring() && int_mat_equal(a.raw(), b.raw());
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "hcat");
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  IntMat m(a.rows(), a.cols() + b.cols());
  m.block(0, 0, a.rows(), a.cols()) = a.raw();
  m.block(0, a.cols(), b.rows(), b.cols()) = b.raw();
  return Matrix(a.ring(), std::move(m));
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "vcat");
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
  IntMat m(a.rows() + b.rows(), a.cols());
  m.block(0, 0, a.rows(), a.cols()) = a.raw();
  m.block(a.rows(), 0, b.rows(), b.cols()) = b.raw();
  return Matrix(a.ring(), std::move(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "kron");
  IntMat m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setZero();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index p = 0; p < b.rows(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          m(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return Matrix(a.ring(), std::move(m));
}

Matrix vec(const Matrix& a) {
  IntMat v(a.rows() * a.cols(), 1);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
  return Matrix(a.ring(), std::move(v));
}

Matrix unvec(const Matrix& v, Index rows, Index cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw std::invalid_argument("unvec: size mismatch");
  IntMat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = v(j * rows + i, 0);
  return Matrix(v.ring(), std::move(m));
}

bool int_mat_equal(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool int_mat_is_zero(const IntMat& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) return false;
  return true;
}

// Fraction-free Gaussian elimination; every division is exact.
Int det_integer(const IntMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: not square");
  const Index n = a.rows();
  if (n == 0) return 1;
  IntMat m = a;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index piv = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

}  // namespace homalg
