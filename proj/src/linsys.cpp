#include "homalg/linsys.hpp"

#include <stdexcept>

namespace homalg {

int BlockSystem::add_unknown(Index rows, Index cols) {
  unknowns_.push_back({rows, cols});
  return static_cast<int>(unknowns_.size()) - 1;
}

int BlockSystem::add_equation(Matrix rhs) {
  if (rhs.ring() != ring_)
    throw std::invalid_argument("BlockSystem: rhs ring mismatch");
  rhs_.push_back(std::move(rhs));
  return static_cast<int>(rhs_.size()) - 1;
}

void BlockSystem::add_term(int equation, int unknown, Matrix left,
                           Matrix right) {
  const Unknown& x = unknowns_.at(static_cast<std::size_t>(unknown));
  const Matrix& c = rhs_.at(static_cast<std::size_t>(equation));
  if (left.rows() != c.rows() || right.cols() != c.cols() ||
      left.cols() != x.rows || right.rows() != x.cols)
    throw std::invalid_argument("BlockSystem: term dimension mismatch");
  terms_.push_back({equation, unknown, std::move(left), std::move(right)});
}

std::optional<std::vector<Matrix>> BlockSystem::solve_all() const {
  std::vector<Index> xoff(unknowns_.size() + 1, 0);
  for (std::size_t k = 0; k < unknowns_.size(); ++k)
    xoff[k + 1] = xoff[k] + unknowns_[k].rows * unknowns_[k].cols;
  std::vector<Index> eoff(rhs_.size() + 1, 0);
  for (std::size_t e = 0; e < rhs_.size(); ++e)
    eoff[e + 1] = eoff[e] + rhs_[e].rows() * rhs_[e].cols();

  IntMat big(eoff.back(), xoff.back());
  big.setZero();
  IntMat rhs(eoff.back(), 1);
  rhs.setZero();
  for (std::size_t e = 0; e < rhs_.size(); ++e) {
    Matrix v = vec(rhs_[e]);
    for (Index i = 0; i < v.rows(); ++i) rhs(eoff[e] + i, 0) = v(i, 0);
  }
  for (const Term& t : terms_) {
    Matrix block = kron(t.right.transposed(), t.left);
    const Index r0 = eoff[static_cast<std::size_t>(t.equation)];
    const Index c0 = xoff[static_cast<std::size_t>(t.unknown)];
    for (Index i = 0; i < block.rows(); ++i)
      for (Index j = 0; j < block.cols(); ++j) big(r0 + i, c0 + j) += block(i, j);
  }

  auto x = solve(Matrix(ring_, std::move(big)), Matrix(ring_, std::move(rhs)));
  if (!x) return std::nullopt;
  std::vector<Matrix> out;
  out.reserve(unknowns_.size());
  for (std::size_t k = 0; k < unknowns_.size(); ++k) {
    Matrix piece = x->block(xoff[k], 0, xoff[k + 1] - xoff[k], 1);
    out.push_back(unvec(piece, unknowns_[k].rows, unknowns_[k].cols));
  }
  return out;
}

}  // namespace homalg
