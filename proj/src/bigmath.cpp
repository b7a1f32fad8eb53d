#include "meertens/bigmath.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

namespace meertens {

namespace {

// Sieve growth is capped; number-theoretic work here never needs primes
// beyond this, and requests past it are a usage error, not a search state.
constexpr uint64_t kMaxSieveLimit = uint64_t{1} << 31;

}  // namespace

struct PrimeTable::Impl {
  std::mutex mu;
  Snapshot primes;
  uint64_t limit = 0;

  // Sieve (old_limit, new_limit] with the base primes already in the table
  // and publish a fresh snapshot. Existing entries never move or change.
  void extend_locked(uint64_t new_limit) {
    if (new_limit <= limit) return;
    if (new_limit > kMaxSieveLimit)
      throw CapacityError("prime table limit " + std::to_string(new_limit) +
                          " exceeds sieve ceiling");
    const uint64_t lo = limit + 1;
    std::vector<bool> composite(new_limit - lo + 1, false);
    for (uint64_t p = 2; p * p <= new_limit; ++p) {
      // Base primes are all <= old limit once the table is warm; bootstrap
      // with a direct scan for the very first segment.
      bool p_prime;
      if (p <= limit) {
        p_prime = std::binary_search(primes->begin(), primes->end(), p);
      } else {
        p_prime = true;
        for (uint64_t q = 2; q * q <= p; ++q)
          if (p % q == 0) { p_prime = false; break; }
      }
      if (!p_prime) continue;
      uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (uint64_t x = start; x <= new_limit; x += p)
        composite[x - lo] = true;
    }
    auto next = std::make_shared<std::vector<uint64_t>>(*primes);
    for (uint64_t x = std::max<uint64_t>(lo, 2); x <= new_limit; ++x)
      if (!composite[x - lo]) next->push_back(x);
    primes = std::move(next);
    limit = new_limit;
  }

  void ensure_limit(uint64_t x) {
    std::lock_guard<std::mutex> lock(mu);
    if (x <= limit) return;
    if (x > kMaxSieveLimit)
      throw CapacityError("cannot sieve to " + std::to_string(x));
    uint64_t target = std::max<uint64_t>(1024, limit * 2);
    while (target < x) target *= 2;
    extend_locked(std::min(target, kMaxSieveLimit));
  }

  void ensure_count(uint64_t n) {
    for (;;) {
      {
        std::lock_guard<std::mutex> lock(mu);
        if (primes->size() >= n) return;
      }
      // p_n < n (ln n + ln ln n) for n >= 6.
      double nd = std::max<double>(n, 6);
      uint64_t guess = static_cast<uint64_t>(
          nd * (std::log(nd) + std::log(std::log(nd))) + 16);
      uint64_t current;
      {
        std::lock_guard<std::mutex> lock(mu);
        current = limit;
      }
      ensure_limit(std::max(guess, current * 2 + 1024));
    }
  }

  Snapshot snapshot() {
    std::lock_guard<std::mutex> lock(mu);
    return primes;
  }
};

PrimeTable::PrimeTable() : impl_(std::make_shared<Impl>()) {
  impl_->primes = std::make_shared<std::vector<uint64_t>>();
  impl_->limit = 1;
}

PrimeTable& PrimeTable::instance() {
  static PrimeTable table;
  return table;
}

uint64_t PrimeTable::nth(uint64_t i) {
  if (i == 0) throw std::invalid_argument("prime index is 1-based");
  impl_->ensure_count(i);
  return (*impl_->snapshot())[i - 1];
}

PrimeTable::Snapshot PrimeTable::with_count(uint64_t n) {
  impl_->ensure_count(n);
  return impl_->snapshot();
}

PrimeTable::Snapshot PrimeTable::with_limit(uint64_t x) {
  impl_->ensure_limit(std::max<uint64_t>(x, 2));
  return impl_->snapshot();
}

uint64_t PrimeTable::index_of(uint64_t p) {
  auto snap = with_limit(p);
  auto it = std::lower_bound(snap->begin(), snap->end(), p);
  if (it == snap->end() || *it != p) return 0;
  return static_cast<uint64_t>(it - snap->begin()) + 1;
}

uint64_t PrimeTable::sieved_limit() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->limit;
}

uint64_t nth_prime(uint64_t n) { return PrimeTable::instance().nth(n); }

Natural primorial(uint64_t n) {
  Natural r = 1;
  if (n == 0) return r;
  auto snap = PrimeTable::instance().with_count(n);
  for (uint64_t i = 0; i < n; ++i)
    mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), (*snap)[i]);
  return r;
}

double chebyshev_theta(double x) {
  if (x < 0) throw std::domain_error("chebyshev_theta: x < 0");
  if (x < 2) return 0.0;
  auto snap = PrimeTable::instance().with_limit(static_cast<uint64_t>(x));
  long double sum = 0.0L;
  for (uint64_t p : *snap) {
    if (static_cast<double>(p) > x) break;
    sum += logl(static_cast<long double>(p));
  }
  return static_cast<double>(sum);
}

double lambert_w(double x) {
  if (x < 0) throw std::domain_error("lambert_w: negative argument");
  if (x == 0) return 0.0;
  long double lo = 0.0L, hi = 1.0L + log1pl(x);
  auto f = [&](long double w) { return w * expl(w) - (long double)x; };
  for (int i = 0; i < 200 && hi - lo > 1e-18L * std::max(1.0L, hi); ++i) {
    long double mid = 0.5L * (lo + hi);
    if (f(mid) < 0) lo = mid; else hi = mid;
  }
  long double w = 0.5L * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    long double ew = expl(w);
    long double denom = ew * (w + 1.0L);
    if (denom == 0.0L) break;
    w -= (w * ew - (long double)x) / denom;
    if (w < 0) w = 0;
  }
  return static_cast<double>(w);
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit inputs with the first-twelve-primes base set.
bool miller_rabin_u64(uint64_t n) {
  static constexpr uint64_t kBases[] = {2, 3, 5, 7, 11, 13,
                                        17, 19, 23, 29, 31, 37};
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : kBases) {
    if (a % n == 0) continue;
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) { uint64_t t = a % b; a = b; b = t; }
  return a;
}

// Brent's cycle variant of Pollard rho; n must be odd composite with no
// small factors. Deterministic retry schedule keeps factorize reproducible.
uint64_t brent_rho_u64(uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto step = [&](uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    uint64_t y = 2, g = 1, q = 1, x = 0, ys = 0;
    constexpr uint64_t kBatch = 128;
    for (uint64_t r = 1; g == 1; r *= 2) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = step(y);
      for (uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        uint64_t steps = std::min(kBatch, r - k);
        for (uint64_t i = 0; i < steps; ++i) {
          y = step(y);
          uint64_t diff = x > y ? x - y : y - x;
          if (diff) q = mulmod_u64(q, diff, n);
        }
        g = gcd_u64(q, n);
      }
    }
    if (g == n) {
      // The batch swallowed a factor; replay from the saved point.
      do {
        ys = step(ys);
        uint64_t diff = x > ys ? x - ys : ys - x;
        g = diff ? gcd_u64(diff, n) : n;
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64_into(uint64_t n, std::vector<std::pair<uint64_t, uint64_t>>* out) {
  if (n == 1) return;
  if (is_prime_u64(n)) { out->emplace_back(n, 1); return; }
  uint64_t d = brent_rho_u64(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

// Trial-division ceiling mandated for factorize.
constexpr uint64_t kTrialLimit = 1000000;

// Pollard rho on mpz for composites that survive trial division and exceed
// 64 bits. Primality above 64 bits is probabilistic (64 rounds).
Natural rho_mpz(const Natural& n) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x6d656572u);  // fixed: reproducible factorizations
  for (unsigned c = 1;; ++c) {
    Natural x = rng.get_z_range(n - 2) + 2, y = x, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Natural diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_mpz_into(const Natural& n, Factorization* out);

void push_factor(Factorization* out, const Natural& p, uint64_t e) {
  out->factors.emplace_back(p, e);
}

void factor_mpz_into(const Natural& n, Factorization* out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::vector<std::pair<uint64_t, uint64_t>> fs;
    factor_u64_into(to_u64(n), &fs);
    std::sort(fs.begin(), fs.end());
    for (auto& [p, e] : fs) push_factor(out, Natural(static_cast<unsigned long>(p)), e);
    return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 64) > 0) {
    out->certified = false;
    push_factor(out, n, 1);
    return;
  }
  Natural d = rho_mpz(n);
  factor_mpz_into(d, out);
  factor_mpz_into(n / d, out);
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  return miller_rabin_u64(n);
}

bool is_prime(const Natural& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

Natural Factorization::reconstruct() const {
  Natural r = 1;
  for (const auto& [p, e] : factors) r *= pow_natural(p, e);
  return r;
}

Factorization factorize(const Natural& n) {
  if (sgn(n) <= 0) throw std::domain_error("factorize: n must be >= 1");
  Factorization result;
  result.value = n;
  if (n == 1) return result;

  Natural rest = n;
  auto primes = PrimeTable::instance().with_limit(
      std::min<uint64_t>(kTrialLimit,
                         fits_u64(n) ? to_u64(n) : kTrialLimit));
  for (uint64_t p : *primes) {
    if (p > kTrialLimit) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      uint64_t e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      push_factor(&result, Natural(static_cast<unsigned long>(p)), e);
    }
    if (rest == 1) break;
    // Everything below p^2 remaining is prime.
    if (fits_u64(rest) && to_u64(rest) < p * p) {
      push_factor(&result, rest, 1);
      rest = 1;
      break;
    }
  }
  if (rest != 1) {
    Factorization tail;
    factor_mpz_into(rest, &tail);
    std::sort(tail.factors.begin(), tail.factors.end());
    // Merge equal primes from recursive splits.
    for (auto& [p, e] : tail.factors) {
      if (!result.factors.empty() && result.factors.back().first == p)
        result.factors.back().second += e;
      else
        result.factors.emplace_back(p, e);
    }
    result.certified = result.certified && tail.certified;
  }
  return result;
}

std::vector<Natural> divisors_above(const Natural& n, const Natural& t) {
  Factorization f = factorize(n);
  std::vector<Natural> divisors{Natural(1)};
  for (const auto& [p, e] : f.factors) {
    size_t old_size = divisors.size();
    if (old_size * (e + 1) > 10000000)
      throw CapacityError("divisor count too large to enumerate");
    Natural pk = 1;
    for (uint64_t k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < old_size; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  std::vector<Natural> result;
  for (auto& d : divisors)
    if (d > t) result.push_back(std::move(d));
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace meertens
