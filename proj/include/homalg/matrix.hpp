#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <vector>

#include "homalg/ring.hpp"

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 60
  };
};

}  // namespace Eigen

namespace homalg {

using IntMat = Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

// Dense exact matrix tagged with its ring; entries are canonical residues
// for Z/n. Immutable after construction.
class Matrix {
 public:
  Matrix(Ring ring, IntMat entries);
  static Matrix zero(Ring ring, Index rows, Index cols);
  static Matrix identity(Ring ring, Index n);
  static Matrix diagonal(Ring ring, const std::vector<Int>& diag);
  // Row-major entry list, as in the CLI literal [[a,b],[c,d]].
  static Matrix from_rows(Ring ring, const std::vector<std::vector<Int>>& rows);

  const Ring& ring() const { return ring_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  const Int& operator()(Index i, Index j) const { return m_(i, j); }
  const IntMat& raw() const { return m_; }

  Matrix block(Index i, Index j, Index r, Index c) const;
  Matrix col(Index j) const { return block(0, j, rows(), 1); }
  Matrix row(Index i) const { return block(i, 0, 1, cols()); }
  Matrix transposed() const { return Matrix(ring_, IntMat(m_.transpose())); }

  bool is_zero() const;
  std::string to_string() const;  // [[a,b],[c,d]]

 private:
  Ring ring_;
  IntMat m_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix scale(const Int& c, const Matrix& a);
bool operator==(const Matrix& a, const Matrix& b);
inline bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix vec(const Matrix& a);                            // column-major stacking
Matrix unvec(const Matrix& v, Index rows, Index cols);  // inverse of vec

bool int_mat_equal(const IntMat& a, const IntMat& b);
bool int_mat_is_zero(const IntMat& a);
Int det_integer(const IntMat& a);  // exact, Bareiss elimination

void require_same_ring(const Matrix& a, const Matrix& b, const char* where);

}  // namespace homalg
