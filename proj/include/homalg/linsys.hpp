#pragma once

#include <optional>
#include <vector>

#include "homalg/matrix.hpp"
#include "homalg/smith.hpp"

namespace homalg {

// Joint linear system in matrix unknowns: each equation reads
//   sum over terms of  L * X_k * R  =  C
// with all unknowns shared across equations. Vectorized via
// vec(L X R) = (R^T (x) L) vec(X) and solved in one Smith computation.
class BlockSystem {
 public:
  explicit BlockSystem(Ring ring) : ring_(std::move(ring)) {}

  int add_unknown(Index rows, Index cols);
  int add_equation(Matrix rhs);
  void add_term(int equation, int unknown, Matrix left, Matrix right);

  // Values for all unknowns, or absent when the system has no solution.
  std::optional<std::vector<Matrix>> solve_all() const;

 private:
  struct Unknown {
    Index rows, cols;
  };
  struct Term {
    int equation, unknown;
    Matrix left, right;
  };
  Ring ring_;
  std::vector<Unknown> unknowns_;
  std::vector<Matrix> rhs_;
  std::vector<Term> terms_;
};

}  // namespace homalg
