#include "meertens/families.hpp"

#include <algorithm>
#include <cmath>

#include "meertens/bigmath.hpp"

namespace meertens {

namespace {

// Bit ceiling for temporary big-int computation inside generators. Values
// beyond kMaterializationBits are not stored in witnesses, but verification
// still runs on real integers up to this much larger ceiling; past it the
// generators fall back to pure exponent arithmetic.
constexpr uint64_t kComputeBits = uint64_t{1} << 22;

Natural pow2(uint64_t e) { return pow_natural(Natural(2), e); }
Natural pow3(uint64_t e) { return pow_natural(Natural(3), e); }

std::string pow_form(const std::string& base, const Natural& exp) {
  return base + "^" + exp.get_str();
}

// Fills value/base or just the expression forms, runs is_fixed_point when
// both integers are materialized, and flags the result.
void finalize(FamilyWitness* w, const Natural& value, const Natural& base,
              bool structurally_ok) {
  if (w->value_form.empty()) w->value_form = value.get_str();
  if (w->base_form.empty()) w->base_form = base.get_str();
  // The threshold is the value 2^kMaterializationBits itself, inclusive.
  if (bit_size(value) <= kMaterializationBits + 1 &&
      bit_size(base) <= kMaterializationBits + 1) {
    w->value = value;
    w->base = base;
    w->verified = structurally_ok && is_fixed_point(value, base, w->variant);
  } else {
    w->symbolic = true;
    w->verified = structurally_ok;
  }
}

// Structural proof for a two-digit witness: value = d1 * base + d2 with
// 1 <= d1 < base, 0 <= d2 < base, and the encoded product equal to value by
// exponent identity. Works at any size the integers can be computed at.
bool two_digit_witness_ok(const Natural& value, const Natural& base,
                          const Natural& d1, const Natural& d2) {
  if (base < 2 || d1 < 1 || d1 >= base || sgn(d2) < 0 || d2 >= base)
    return false;
  return value == d1 * base + d2;
}

}  // namespace

std::vector<FamilyWitness> family_1024_3c(uint64_t c_max) {
  std::vector<FamilyWitness> out;
  Natural value = 1024;  // 1024 * 3^c
  for (uint64_t c = 0; c <= c_max; ++c, value *= 3) {
    if (bit_size(value) > kComputeBits)
      throw CapacityError("family_1024_3c: c too large to compute");
    Natural shifted = value - static_cast<unsigned long>(c);
    if (shifted % 10 != 0) continue;
    FamilyWitness w;
    w.family = "1024_3c";
    w.params["c"] = c;
    w.variant = EncodingVariant::standard();
    Natural base = shifted / 10;
    // Digits are [10, c]; the encoded product 2^10 * 3^c is the value by
    // construction, so digit validity is the whole proof.
    bool ok = two_digit_witness_ok(value, base, 10, c);
    if (!ok) {
      w.skipped = true;
      w.skip_reason = "digits [10, c] invalid in derived base";
      out.push_back(std::move(w));
      continue;
    }
    finalize(&w, value, base, true);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<FamilyWitness> family_pow2(uint64_t a) {
  if (a < 3) throw std::invalid_argument("family_pow2: a >= 3");
  if (a > 64) throw CapacityError("family_pow2: a > 64 not materializable");
  std::vector<FamilyWitness> out;
  Natural n = pow2(a) - a;  // bases are 2^k for divisors k > a
  for (const Natural& k : divisors_above(n, a)) {
    FamilyWitness w;
    w.family = "pow2";
    w.params["a"] = a;
    w.params["k"] = k;
    w.variant = EncodingVariant::standard();
    w.value_form = pow_form("2", pow2(a));
    w.base_form = pow_form("2", k);
    uint64_t ku = to_u64(k);
    // Digit pattern: the single digit 2^(2^a mod k) = 2^a followed by zeros;
    // k | 2^a - a with a < k makes the residue exactly a.
    bool ok = pow2(a) % k == a && Natural(a) < k;
    if (a <= 12 && ku <= kMaterializationBits) {
      finalize(&w, pow2(to_u64(pow2(a))), pow2(ku), ok);
    } else {
      w.symbolic = true;
      w.verified = ok;
    }
    out.push_back(std::move(w));
  }
  return out;
}

uint64_t family_pow2_count(uint64_t a) {
  if (a < 3) throw std::invalid_argument("family_pow2_count: a >= 3");
  Natural n = pow2(a) - a;
  return divisors_above(n, a).size();
}

TowerResult family_tower(uint64_t t) {
  if (t <= 2) throw std::invalid_argument("family_tower: t > 2");
  if (t > 20) throw CapacityError("family_tower: t > 20 not materializable");
  TowerResult result;
  Natural big = pow2(uint64_t{1} << t) - pow2(t);  // 2^(2^t) - 2^t
  for (uint64_t k = 0; k <= t; ++k) {
    Natural divisor = pow2((uint64_t{1} << t) - k) - pow2(t - k);
    if (!mpz_divisible_p(big.get_mpz_t(), divisor.get_mpz_t()))
      throw std::logic_error("family_tower: divisibility failed");
    result.base_exponents.push_back(divisor);

    FamilyWitness w;
    w.family = "tower";
    w.params["t"] = t;
    w.params["k"] = k;
    w.params["base_exponent"] = divisor;
    w.variant = EncodingVariant::standard();
    w.value_form = pow_form("2", pow2(uint64_t{1} << t));
    w.base_form = pow_form("2", divisor);
    // Same residue argument as family_pow2 with a' = 2^t, k' = divisor.
    bool ok = pow2(uint64_t{1} << t) % divisor == pow2(t) && pow2(t) < divisor;
    if (t <= 3) {
      finalize(&w, pow2(to_u64(pow2(uint64_t{1} << t))),
               pow2(to_u64(divisor)), ok);
    } else {
      w.symbolic = true;
      w.verified = ok;
    }
    result.witnesses.push_back(std::move(w));
  }
  return result;
}

namespace {

FamilyWitness two_digit_family(const std::string& family, const char* which,
                               uint64_t n, uint64_t m, const Natural& value,
                               const Natural& base, const Natural& d1,
                               const Natural& d2, const EncodingVariant& v) {
  FamilyWitness w;
  w.family = family;
  w.params["n"] = n;
  w.params["m"] = m;
  w.params["form"] = Natural(which[0] - '0');
  w.variant = v;
  if (!two_digit_witness_ok(value, base, d1, d2)) {
    w.skipped = true;
    w.skip_reason = std::string("form ") + which +
                    ": digits invalid or base < 2 for these parameters";
    return w;
  }
  finalize(&w, value, base, true);
  return w;
}

void check_exponent_budget(uint64_t n, uint64_t m, double log2_of_base) {
  // Largest exponent is 3^m or 2^m; keep the computed integers bounded.
  double bits = std::pow(2.0, (double)m) * log2_of_base * 2 + 64;
  if (m > 40 || bits > (double)kComputeBits)
    throw CapacityError("two-digit family: parameters too large to compute");
}

}  // namespace

std::vector<FamilyWitness> family_thm23(uint64_t n, uint64_t m) {
  if (m < n) throw std::invalid_argument("family_thm23: require m >= n");
  check_exponent_budget(n, m, 1.585);
  std::vector<FamilyWitness> out;
  const auto standard = EncodingVariant::standard();
  {
    // 2 * 3^n with digits [1, n] in base 2 * 3^n - n.
    Natural value = 2 * pow3(n);
    out.push_back(two_digit_family("thm23", "1", n, m, value, value - n, 1, n,
                                   standard));
  }
  {
    // 2^(2^n) * 3^(2^m) with digits [2^n, 2^m].
    Natural value = pow2(to_u64(pow2(n))) * pow3(to_u64(pow2(m)));
    Natural base = pow2(to_u64(pow2(n)) - n) * pow3(to_u64(pow2(m))) -
                   pow2(m - n);
    out.push_back(two_digit_family("thm23", "2", n, m, value, base, pow2(n),
                                   pow2(m), standard));
  }
  {
    // 2^(3^n) * 3^(3^m) with digits [3^n, 3^m].
    Natural value = pow2(to_u64(pow3(n))) * pow3(to_u64(pow3(m)));
    Natural base = pow2(to_u64(pow3(n))) * pow3(to_u64(pow3(m)) - n) -
                   pow3(m - n);
    out.push_back(two_digit_family("thm23", "3", n, m, value, base, pow3(n),
                                   pow3(m), standard));
  }
  return out;
}

std::vector<FamilyWitness> family_thm23_reverse(uint64_t n, uint64_t m) {
  if (m < n) throw std::invalid_argument("family_thm23_reverse: m >= n");
  check_exponent_budget(n, m, 1.585);
  std::vector<FamilyWitness> out;
  const auto reverse = EncodingVariant::reverse();
  {
    // 3 * 2^n with digits [1, n] in base 3 * 2^n - n.
    Natural value = 3 * pow2(n);
    out.push_back(two_digit_family("thm23_reverse", "1", n, m, value,
                                   value - n, 1, n, reverse));
  }
  {
    // 2^(2^m) * 3^(2^n) with digits [2^n, 2^m].
    Natural value = pow2(to_u64(pow2(m))) * pow3(to_u64(pow2(n)));
    Natural base = pow2(to_u64(pow2(m)) - n) * pow3(to_u64(pow2(n))) -
                   pow2(m - n);
    out.push_back(two_digit_family("thm23_reverse", "2", n, m, value, base,
                                   pow2(n), pow2(m), reverse));
  }
  {
    // 2^(3^m) * 3^(3^n) with digits [3^n, 3^m].
    Natural value = pow2(to_u64(pow3(m))) * pow3(to_u64(pow3(n)));
    Natural base = pow2(to_u64(pow3(m))) * pow3(to_u64(pow3(n)) - n) -
                   pow3(m - n);
    out.push_back(two_digit_family("thm23_reverse", "3", n, m, value, base,
                                   pow3(n), pow3(m), reverse));
  }
  return out;
}

FamilyWitness family_alpha(uint64_t t) {
  FamilyWitness w;
  w.family = "alpha";
  w.params["t"] = t;
  w.variant = EncodingVariant::alpha();
  if (t > 40 || (uint64_t{1} << t) > kComputeBits - 64)
    throw CapacityError("family_alpha: t too large to compute");
  uint64_t e = uint64_t{1} << t;  // 2^t
  Natural value = 3 * pow2(e + 1);
  Natural base = 3 * pow2(e - t + 1);
  // Digits are [2^t, 0]: value = 2^t * base exactly.
  bool ok = pow2(t) < base && value == pow2(t) * base;
  finalize(&w, value, base, ok);
  return w;
}

std::vector<FamilyWitness> family_rmn(uint64_t r_max) {
  if (r_max < 1) throw std::invalid_argument("family_rmn: r_max >= 1");
  std::vector<FamilyWitness> out;
  for (uint64_t r = 1; r <= r_max; ++r) {
    uint64_t p = nth_prime(r + 1);
    if ((p - 1) % r != 0) continue;
    uint64_t i = (p - 1) / r;
    FamilyWitness w;
    w.family = "rmn";
    w.params["r"] = r;
    w.params["p"] = p;
    w.params["i"] = i;
    w.variant = EncodingVariant::reverse();
    w.value_form = std::to_string(p) + "^" + std::to_string(p);
    w.base_form = std::to_string(p) + "^" + std::to_string(i);
    // Digit pattern [p, 0 x r]: p^p = p * (p^i)^r needs p = i*r + 1 (true by
    // construction) and digit p below the base p^i, i.e. i >= 2.
    bool ok = i >= 2 && p == i * r + 1;
    double bits = (double)p * std::log2((double)p);
    if (bits <= (double)kComputeBits) {
      Natural pz(static_cast<unsigned long>(p));
      finalize(&w, pow_natural(pz, p), pow_natural(pz, i), ok);
    } else {
      w.symbolic = true;
      w.verified = ok;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace meertens
