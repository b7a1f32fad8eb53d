#include "meertens/encoding.hpp"

#include <algorithm>
#include <cmath>

namespace meertens {

EncodingVariant EncodingVariant::standard() {
  return {VariantKind::Standard, IndexMap::NthPrime, DigitMap::Identity, false};
}
EncodingVariant EncodingVariant::alpha() {
  return {VariantKind::Alpha, IndexMap::NthPrime, DigitMap::Successor, false};
}
EncodingVariant EncodingVariant::reverse() {
  return {VariantKind::Reverse, IndexMap::NthPrime, DigitMap::Identity, true};
}
EncodingVariant EncodingVariant::generalized(IndexMap f1, DigitMap f2,
                                             bool reversed) {
  return {VariantKind::Generalized, f1, f2, reversed};
}

Natural f1_value(IndexMap f1, uint64_t i) {
  return Natural(static_cast<unsigned long>(f1_value_u64(f1, i)));
}

uint64_t f1_value_u64(IndexMap f1, uint64_t i) {
  switch (f1) {
    case IndexMap::NthPrime: return nth_prime(i);
    case IndexMap::Identity: return i;
  }
  throw std::logic_error("unknown index map");
}

Natural f2_value(DigitMap f2, const Natural& d) {
  switch (f2) {
    case DigitMap::Identity: return d;
    case DigitMap::Successor: return d + 1;
  }
  throw std::logic_error("unknown digit map");
}

uint64_t f2_value_u64(DigitMap f2, uint64_t d) {
  return f2 == DigitMap::Identity ? d : d + 1;
}

std::string variant_name(const EncodingVariant& v) {
  switch (v.kind) {
    case VariantKind::Standard: return "standard";
    case VariantKind::Alpha: return "alpha";
    case VariantKind::Reverse: return "reverse";
    case VariantKind::Generalized: return v.reversed ? "grmn" : "gmn";
  }
  return "?";
}

std::optional<EncodingVariant> variant_from_name(const std::string& name) {
  if (name == "standard") return EncodingVariant::standard();
  if (name == "alpha") return EncodingVariant::alpha();
  if (name == "reverse") return EncodingVariant::reverse();
  if (name == "gmn")
    return EncodingVariant::generalized(IndexMap::Identity, DigitMap::Identity,
                                        false);
  if (name == "grmn")
    return EncodingVariant::generalized(IndexMap::Identity, DigitMap::Identity,
                                        true);
  return std::nullopt;
}

RadixRep to_radix(const Natural& m, const Natural& base) {
  if (base < 2) throw std::invalid_argument("to_radix: base must be >= 2");
  if (sgn(m) < 0) throw std::invalid_argument("to_radix: negative value");
  RadixRep rep;
  rep.base = base;
  if (m == 0) {
    rep.digits.assign(1, Natural(0));
    return rep;
  }
  Natural rest = m, digit;
  while (rest != 0) {
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(),
                base.get_mpz_t());
    rep.digits.push_back(digit);
  }
  std::reverse(rep.digits.begin(), rep.digits.end());
  return rep;
}

Natural from_radix(const RadixRep& rep) {
  if (rep.base < 2) throw std::invalid_argument("from_radix: base must be >= 2");
  Natural value = 0;
  for (const Natural& d : rep.digits) {
    if (sgn(d) < 0 || d >= rep.base)
      throw std::invalid_argument("from_radix: digit out of range");
    value = value * rep.base + d;
  }
  return value;
}

namespace {

// Exponent of f1(position) for the digit at `digit_idx` (0-based from the
// most significant end) in a sequence of n digits.
size_t digit_index_for_position(size_t position, size_t n, bool reversed) {
  return reversed ? n - position : position - 1;  // position is 1-based
}

}  // namespace

Natural encode(const RadixRep& rep, const EncodingVariant& variant) {
  const size_t n = rep.digits.size();
  Natural product = 1;
  for (size_t pos = 1; pos <= n; ++pos) {
    const Natural& d = rep.digits[digit_index_for_position(pos, n, variant.reversed)];
    if (sgn(d) < 0 || d >= rep.base)
      throw std::invalid_argument("encode: digit out of range");
    Natural e = f2_value(variant.f2, d);
    if (e == 0) continue;
    Natural f = f1_value(variant.f1, pos);
    if (f == 1) continue;
    if (!fits_u64(e) || to_u64(e) > (uint64_t{1} << 32))
      throw CapacityError("encode: digit exponent too large to materialize");
    product *= pow_natural(f, to_u64(e));
  }
  return product;
}

ZeroStats zero_digit_stats(const RadixRep& rep) {
  ZeroStats stats;
  for (const Natural& d : rep.digits)
    if (d == 0) ++stats.zero_digits;
  for (auto it = rep.digits.rbegin(); it != rep.digits.rend() && *it == 0; ++it)
    ++stats.trailing_zeros;
  return stats;
}

namespace {

// Fast path: m and base fit in 64 bits. Any overflow in the running product
// means it already exceeds m, so overflow doubles as the early abort.
bool is_fixed_point_u64(uint64_t m, uint64_t base, const EncodingVariant& v) {
  // A 64-bit value has at most 64 digits, so one snapshot covers every call.
  static thread_local PrimeTable::Snapshot primes =
      PrimeTable::instance().with_count(64);
  uint64_t digits[64];
  int n = 0;
  uint64_t rest = m;
  while (rest) { digits[n++] = rest % base; rest /= base; }
  // digits[] is least significant first here.
  uint64_t product = 1;
  for (int pos = 1; pos <= n; ++pos) {
    uint64_t d = v.reversed ? digits[pos - 1] : digits[n - pos];
    uint64_t e = f2_value_u64(v.f2, d);
    if (e == 0) continue;
    uint64_t f = v.f1 == IndexMap::NthPrime ? (*primes)[pos - 1]
                                            : static_cast<uint64_t>(pos);
    if (f == 1) continue;
    // product *= f^e with overflow-as-abort.
    uint64_t pw = 1, sq = f;
    for (;;) {
      if (e & 1) {
        if (__builtin_mul_overflow(pw, sq, &pw)) return false;
        if (pw > m) return false;
      }
      e >>= 1;
      if (!e) break;
      if (__builtin_mul_overflow(sq, sq, &sq)) {
        // sq only matters if more bits of e are set.
        if (e) return false;
        break;
      }
    }
    if (__builtin_mul_overflow(product, pw, &product) || product > m)
      return false;
  }
  return product == m;
}

}  // namespace

bool is_fixed_point(const Natural& m, const Natural& base,
                    const EncodingVariant& variant) {
  if (sgn(m) <= 0) throw std::invalid_argument("is_fixed_point: m must be >= 1");
  if (base < 2) throw std::invalid_argument("is_fixed_point: base must be >= 2");
  if (fits_u64(m) && fits_u64(base))
    return is_fixed_point_u64(to_u64(m), to_u64(base), variant);

  RadixRep rep = to_radix(m, base);
  const size_t n = rep.digits.size();
  const size_t m_bits = bit_size(m);
  Natural product = 1;
  for (size_t pos = 1; pos <= n; ++pos) {
    const Natural& d =
        rep.digits[digit_index_for_position(pos, n, variant.reversed)];
    Natural e = f2_value(variant.f2, d);
    if (e == 0) continue;
    Natural f = f1_value(variant.f1, pos);
    if (f == 1) continue;
    // d can be near the base, which may be astronomically large; bail out on
    // a size estimate before materializing the power.
    if (!fits_u64(e)) return false;
    uint64_t eu = to_u64(e);
    size_t f_bits = bit_size(f);
    if (eu > (m_bits / std::max<size_t>(f_bits - 1, 1)) + 2) return false;
    product *= pow_natural(f, eu);
    if (product > m) return false;
  }
  return product == m;
}

std::optional<Finding> check_fixed_point(const Natural& m, const Natural& base,
                                         const EncodingVariant& variant) {
  if (!is_fixed_point(m, base, variant)) return std::nullopt;
  Finding f;
  f.value = m;
  f.base = base;
  f.variant = variant;
  f.digits = to_radix(m, base);
  f.factorization = factorize(m);
  ZeroStats stats = zero_digit_stats(f.digits);
  f.zero_digits = stats.zero_digits;
  f.trailing_zeros = stats.trailing_zeros;
  return f;
}

double zero_lower_bound(const Natural& base, uint64_t digit_count) {
  if (base < 2) throw std::invalid_argument("zero_lower_bound: base >= 2");
  if (digit_count < 1)
    throw std::invalid_argument("zero_lower_bound: digit count >= 1");
  double u = static_cast<double>(digit_count);
  double raw = u - std::exp(lambert_w(1.675 * u * log_natural(base)));
  return raw > 0 ? raw : 0.0;
}

std::string render_digits(const RadixRep& rep) {
  std::string out;
  for (const Natural& d : rep.digits) {
    if (d < 10) {
      out += static_cast<char>('0' + to_u64(d));
    } else if (d < 36) {
      out += static_cast<char>('A' + (to_u64(d) - 10));
    } else {
      out += '[';
      out += d.get_str();
      out += ']';
    }
  }
  return out;
}

}  // namespace meertens
