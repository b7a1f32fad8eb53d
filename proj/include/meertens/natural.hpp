#ifndef MEERTENS_NATURAL_HPP
#define MEERTENS_NATURAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace meertens {

// All exact integer arithmetic runs on GMP. Floating point appears only in
// chebyshev_theta, lambert_w and zero_lower_bound.
using Natural = mpz_class;

// Thrown when a request would exhaust memory or addressable table space
// (e.g. asking for primes beyond the sieve ceiling, or materializing a
// number with billions of bits).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline bool fits_u64(const Natural& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline uint64_t to_u64(const Natural& n) {
  uint64_t lo = mpz_getlimbn(n.get_mpz_t(), 0);
  return mpz_size(n.get_mpz_t()) == 0 ? 0 : lo;
}

inline Natural pow_natural(const Natural& base, uint64_t exp) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// Natural log of a positive integer, accurate to ~1e-15 relative.
inline double log_natural(const Natural& n) {
  signed long int exp2;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453;
}

inline size_t bit_size(const Natural& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace meertens

#endif  // MEERTENS_NATURAL_HPP
