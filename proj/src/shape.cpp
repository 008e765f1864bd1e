#include "homalg/shape.hpp"

#include <algorithm>

namespace homalg {

AbGroupShape AbGroupShape::from_divisors(std::vector<Int> divisors) {
  for (Int& d : divisors) {
    Int a;
    mpz_abs(a.get_mpz_t(), d.get_mpz_t());
    d = a;
  }
  // Pairwise gcd/lcm refinement yields the divisor chain; gcd(a,0) = a and
  // lcm(a,0) = 0 push free summands to the end.
  const std::size_t n = divisors.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Int g = gcd_int(divisors[i], divisors[j]);
      Int l = lcm_int(divisors[i], divisors[j]);
      divisors[i] = g;
      divisors[j] = l;
    }
  AbGroupShape s;
  for (Int& d : divisors)
    if (d != 1) s.divisors_.push_back(std::move(d));
  return s;
}

int AbGroupShape::free_rank() const {
  return static_cast<int>(
      std::count(divisors_.begin(), divisors_.end(), Int(0)));
}

Int AbGroupShape::torsion_exponent() const {
  Int e = 1;
  for (const Int& d : divisors_)
    if (d != 0) e = d;  // chain order: the last nonzero is the exponent
  return e;
}

std::string AbGroupShape::to_string() const {
  if (divisors_.empty()) return "0";
  std::string out;
  const int r = free_rank();
  if (r == 1) out = "Z";
  if (r > 1) out = "Z^" + std::to_string(r);
  for (const Int& d : divisors_) {
    if (d == 0) continue;
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

}  // namespace homalg
