#ifndef MEERTENS_BIGMATH_HPP
#define MEERTENS_BIGMATH_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "meertens/natural.hpp"

namespace meertens {

// Append-only table of primes backed by a segmented sieve. The table grows
// geometrically on demand; snapshots are immutable so concurrent readers are
// never invalidated by growth.
class PrimeTable {
 public:
  using Snapshot = std::shared_ptr<const std::vector<uint64_t>>;

  static PrimeTable& instance();

  // 1-indexed: nth(1) == 2.
  uint64_t nth(uint64_t i);

  // Snapshot containing at least the first n primes (may contain more).
  Snapshot with_count(uint64_t n);
  // Snapshot containing every prime <= x.
  Snapshot with_limit(uint64_t x);

  // Index i with nth(i) == p, or 0 if p is not prime.
  uint64_t index_of(uint64_t p);

  uint64_t sieved_limit() const;

 private:
  PrimeTable();
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

uint64_t nth_prime(uint64_t n);

// Exact product of the first n primes; primorial(0) == 1.
Natural primorial(uint64_t n);

// Sum of natural logs of primes <= x.
double chebyshev_theta(double x);

// Principal branch of w * e^w = x for x >= 0. Bracketed bisection plus a
// Newton polish; no closed-form seed is trusted.
double lambert_w(double x);

struct Factorization {
  // Sorted by prime, exponents >= 1. Empty for n == 1.
  std::vector<std::pair<Natural, uint64_t>> factors;
  Natural value;
  // False when a factor's primality rests on Miller-Rabin rounds rather than
  // the deterministic 64-bit witness set.
  bool certified = true;

  Natural reconstruct() const;
};

bool is_prime_u64(uint64_t n);
bool is_prime(const Natural& n);

// Complete factorization of n >= 1. Trial division over the prime table up
// to 10^6, then Brent's rho with deterministic certification for 64-bit
// cofactors (Miller-Rabin 64 rounds above that, flagged via `certified`).
Factorization factorize(const Natural& n);

// All divisors of n strictly greater than t, ascending.
std::vector<Natural> divisors_above(const Natural& n, const Natural& t);

}  // namespace meertens

#endif  // MEERTENS_BIGMATH_HPP
