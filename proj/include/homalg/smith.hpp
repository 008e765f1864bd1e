#pragma once

#include <optional>
#include <vector>

#include "homalg/matrix.hpp"
#include "homalg/shape.hpp"

namespace homalg {

// U * A * V = D with U, V invertible over the ring and D diagonal, each
// diagonal entry dividing the next. Over Z the divisors are non-negative;
// over Z/n they are the canonical residues gcd(d, n) with 0 standing for
// the zero ideal.
struct SmithForm {
  Matrix u, d, v;
  std::vector<Int> divisors;  // length min(rows, cols)
};

SmithForm smith(const Matrix& a);

// Solves A * X = B over the ring; absent exactly when no solution exists.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Columns generate {x : A x = 0} over the ring.
Matrix kernel_basis(const Matrix& a);

// Elementary-divisor shape of coker(A : R^cols -> R^rows).
AbGroupShape cokernel_divisors(const Matrix& a);

}  // namespace homalg
