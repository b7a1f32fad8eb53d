#include <algorithm>

#include "meertens/bigmath.hpp"
#include "meertens/search.hpp"

namespace meertens {

namespace {

struct ScanResult {
  uint64_t value = 0;
  bool exact = true;  // false: scan short-circuited, true bound >= value
};

// Largest k with b^k > factor * p_k#, or 0 if none. The ratio rises while
// p_k < b and falls monotonically once p_k >= b, so the scan is safe to stop
// at the first failure past that point. cap_at short-circuits as soon as
// k = cap_at qualifies: the caller then only learns that the bound is at
// least cap_at, which is all it needs when another cap is already tighter.
ScanResult largest_power_vs_primorial(const Natural& base, unsigned factor,
                                      std::optional<uint64_t> cap_at) {
  Natural power = 1;       // b^k
  Natural bound = factor;  // factor * p_k#
  uint64_t best = 0;
  for (uint64_t k = 1;; ++k) {
    uint64_t pk = nth_prime(k);
    power *= base;
    mpz_mul_ui(bound.get_mpz_t(), bound.get_mpz_t(), pk);
    if (power > bound) {
      best = k;
      if (cap_at && k >= *cap_at) return {*cap_at, false};
    } else if (base <= pk) {
      return {best, true};
    }
  }
}

}  // namespace

uint64_t compute_k_star(const Natural& base) {
  if (base < 2) throw std::invalid_argument("compute_k_star: base >= 2");
  return largest_power_vs_primorial(base, 2, std::nullopt).value;
}

uint64_t compute_l_star(const Natural& base) {
  if (base < 2) throw std::invalid_argument("compute_l_star: base >= 2");
  return largest_power_vs_primorial(base, 1, std::nullopt).value;
}

std::optional<uint64_t> zeroless_digit_cap(const Natural& base) {
  if (base < 2) throw std::invalid_argument("zeroless_digit_cap: base >= 2");
  Factorization f = factorize(base);
  for (const auto& [p, e] : f.factors)
    if (e > 1) return std::nullopt;
  const Natural& largest = f.factors.back().first;
  if (!fits_u64(largest))
    throw CapacityError("zeroless cap: largest prime factor beyond table");
  uint64_t u = PrimeTable::instance().index_of(to_u64(largest));
  return u - 1;
}

std::string cap_source_name(CapSource s) {
  switch (s) {
    case CapSource::KStar: return "KStar";
    case CapSource::LStar: return "LStar";
    case CapSource::Squarefree: return "Squarefree";
    case CapSource::UserLimit: return "UserLimit";
  }
  return "?";
}

namespace {

// Number of digits of the largest base-b value <= limit.
uint64_t digit_cap_from_value_limit(const Natural& base, const Natural& limit) {
  if (limit < 1) return 0;
  uint64_t digits = 0;
  Natural power = 1;
  while (power <= limit) {
    power *= base;
    ++digits;
  }
  return digits;
}

}  // namespace

BoundReport resolve_bounds(const SearchSpec& spec) {
  if (spec.base < 2) throw SearchConfigError("search base must be >= 2");
  BoundReport report;
  report.base = spec.base;

  const bool prime_f1 = spec.variant.f1 == IndexMap::NthPrime;
  const bool alpha_like = prime_f1 && spec.variant.f2 == DigitMap::Successor;

  std::optional<uint64_t> user;
  if (spec.max_digits) user = spec.max_digits;
  if (spec.value_limit) {
    uint64_t from_limit =
        digit_cap_from_value_limit(spec.base, *spec.value_limit);
    if (!user || from_limit < *user) user = from_limit;
  }

  // Tightest bound seen so far; proven scans below short-circuit against it.
  std::optional<uint64_t> applied = user;
  CapSource source = CapSource::UserLimit;

  auto offer = [&](uint64_t cap, CapSource s) {
    if (!applied || cap < *applied ||
        (cap == *applied && source == CapSource::UserLimit)) {
      applied = cap;
      source = s;
    }
  };

  if (spec.zeroless && prime_f1) {
    report.squarefree_cap = zeroless_digit_cap(spec.base);
    if (report.squarefree_cap) offer(*report.squarefree_cap, CapSource::Squarefree);
  }
  if (alpha_like) {
    ScanResult ks = largest_power_vs_primorial(spec.base, 2, applied);
    if (ks.exact) {
      report.k_star = ks.value;
      offer(ks.value, CapSource::KStar);
    }
  }
  if (spec.zeroless && prime_f1) {
    ScanResult ls = largest_power_vs_primorial(spec.base, 1, applied);
    if (ls.exact) {
      report.l_star = ls.value;
      offer(ls.value, CapSource::LStar);
    }
  }

  if (!applied)
    throw SearchConfigError(
        "no proven digit bound for this variant; --max-digits or --limit "
        "is required");

  report.applied_digit_cap = *applied;
  report.cap_source = source;
  return report;
}

}  // namespace meertens
