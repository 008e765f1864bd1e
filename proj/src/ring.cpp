#include "homalg/ring.hpp"

#include <stdexcept>

namespace homalg {

Ring Ring::integers_mod(const Int& n) {
  if (n < 2) throw std::invalid_argument("Ring: modulus must be >= 2");
  return Ring(n);
}

Int Ring::canon(const Int& x) const {
  if (!is_modular()) return x;
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), n_.get_mpz_t());  // result in [0, n)
  return r;
}

bool Ring::is_unit(const Int& x) const {
  if (!is_modular()) return x == 1 || x == -1;
  return gcd_int(x, n_) == 1;
}

std::string Ring::name() const {
  if (!is_modular()) return "Z";
  return "Z/" + n_.get_str();
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

std::optional<Int> invert_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    return std::nullopt;
  return r;
}

}  // namespace homalg
