#pragma once

#include <string>
#include <vector>

#include "homalg/ring.hpp"

namespace homalg {

// Isomorphism type of a finitely generated module as an elementary-divisor
// chain: unit divisors dropped, nonzero divisors >= 2 with d_i | d_{i+1},
// zeros (free summands) last. Over Z/n free summands are reported as the
// explicit divisor n, so shapes over Z/n never contain 0.
class AbGroupShape {
 public:
  AbGroupShape() = default;
  // Canonicalizes an arbitrary multiset of non-negative divisors.
  static AbGroupShape from_divisors(std::vector<Int> divisors);

  const std::vector<Int>& divisors() const { return divisors_; }
  bool trivial() const { return divisors_.empty(); }
  int free_rank() const;
  // Exponent of the torsion part (1 if torsion-free).
  Int torsion_exponent() const;

  std::string to_string() const;  // "0", "Z", "Z^2 + Z/6", "Z/2 + Z/4"

  friend bool operator==(const AbGroupShape& a, const AbGroupShape& b) {
    return a.divisors_ == b.divisors_;
  }
  friend bool operator!=(const AbGroupShape& a, const AbGroupShape& b) {
    return !(a == b);
  }

 private:
  std::vector<Int> divisors_;
};

}  // namespace homalg
