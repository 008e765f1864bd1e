#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace homalg {

using Int = mpz_class;

// Base ring: Z, or Z/n with n >= 2. All matrix entries over Z/n are kept as
// canonical residues in [0, n).
class Ring {
 public:
  static Ring integers() { return Ring(0); }
  static Ring integers_mod(const Int& n);

  bool is_modular() const { return n_ != 0; }
  const Int& modulus() const { return n_; }  // 0 for Z

  Int canon(const Int& x) const;
  bool is_unit(const Int& x) const;
  bool is_zero(const Int& x) const { return canon(x) == 0; }

  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  explicit Ring(Int n) : n_(std::move(n)) {}
  Int n_;
};

Int gcd_int(const Int& a, const Int& b);
Int lcm_int(const Int& a, const Int& b);
std::optional<Int> invert_mod(const Int& a, const Int& m);

}  // namespace homalg
