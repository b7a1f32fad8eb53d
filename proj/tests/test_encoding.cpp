#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "meertens/encoding.hpp"
#include "oracles.hpp"

using namespace meertens;

namespace {

RadixRep rep(uint64_t base, std::vector<uint64_t> digits) {
  RadixRep r;
  r.base = base;
  for (uint64_t d : digits) r.digits.emplace_back(static_cast<unsigned long>(d));
  return r;
}

std::vector<uint64_t> digit_values(const RadixRep& r) {
  std::vector<uint64_t> out;
  for (const Natural& d : r.digits) out.push_back(to_u64(d));
  return out;
}

}  // namespace

TEST_CASE("to_radix canonical digits") {
  CHECK(digit_values(to_radix(81312000, 10)) ==
        std::vector<uint64_t>{8, 1, 3, 1, 2, 0, 0, 0});
  CHECK(digit_values(to_radix(0, 7)) == std::vector<uint64_t>{0});
  CHECK(digit_values(to_radix(82944, 8294)) == std::vector<uint64_t>{10, 4});
  CHECK_THROWS_AS(to_radix(5, 1), std::invalid_argument);
}

TEST_CASE("from_radix inverts to_radix") {
  CHECK(from_radix(rep(5, {1, 1})) == 6);
  CHECK(from_radix(rep(2, {0})) == 0);
  CHECK(from_radix(rep(8294, {10, 4})) == 82944);
  CHECK_THROWS_AS(from_radix(rep(5, {5, 0})), std::invalid_argument);

  for (uint64_t base : {2, 3, 10, 16, 257}) {
    for (uint64_t m = 0; m <= 100000; m += 7) {
      RadixRep r = to_radix(m, base);
      CHECK(from_radix(r) == m);
      // Canonical: no leading zero unless the value is zero.
      if (m > 0) CHECK(r.digits.front() != 0);
    }
  }
}

TEST_CASE("encode across variants") {
  CHECK(encode(rep(10, {8, 1, 3, 1, 2, 0, 0, 0}), EncodingVariant::standard()) ==
        81312000);
  CHECK(encode(rep(10, {1, 0}), EncodingVariant::standard()) == 2);
  CHECK(encode(rep(12, {1, 0}), EncodingVariant::alpha()) == 12);
  CHECK(encode(rep(10, {1, 2}), EncodingVariant::reverse()) == 12);
  CHECK(encode(rep(10, {3, 2, 4}),
               EncodingVariant::generalized(IndexMap::Identity,
                                            DigitMap::Identity, false)) == 324);
  // f1 = identity maps position 1 to 1; positive exponents there are legal
  // and contribute nothing.
  CHECK(encode(rep(10, {5, 1}),
               EncodingVariant::generalized(IndexMap::Identity,
                                            DigitMap::Identity, false)) == 2);
}

TEST_CASE("standard map is not injective: M(10^k) = 2") {
  for (int k = 0; k <= 9; ++k) {
    std::vector<uint64_t> digits(k + 1, 0);
    digits[0] = 1;
    CHECK(encode(rep(10, digits), EncodingVariant::standard()) == 2);
  }
}

TEST_CASE("alpha and reverse encodings are injective") {
  for (uint64_t base : {10, 12}) {
    for (auto variant : {EncodingVariant::alpha(), EncodingVariant::reverse()}) {
      std::set<Natural> seen;
      for (uint64_t m = 1; m <= 10000; ++m) {
        Natural e = encode(to_radix(m, base), variant);
        CHECK(seen.insert(e).second);
      }
    }
  }
}

TEST_CASE("reverse encoding ignores leading zeros") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    uint64_t base = 2 + rng() % 50;
    uint64_t m = 1 + rng() % 1000000;
    RadixRep r = to_radix(m, base);
    Natural e = encode(r, EncodingVariant::reverse());
    RadixRep padded = r;
    for (int pad = 1 + trial % 3; pad-- > 0;)
      padded.digits.insert(padded.digits.begin(), Natural(0));
    CHECK(encode(padded, EncodingVariant::reverse()) == e);
  }
}

TEST_CASE("fixed point checks") {
  CHECK(is_fixed_point(81312000, 10, EncodingVariant::standard()));
  CHECK_FALSE(is_fixed_point(81312001, 10, EncodingVariant::standard()));
  CHECK(is_fixed_point(64, 10,
                       EncodingVariant::generalized(IndexMap::Identity,
                                                    DigitMap::Identity, true)));
  CHECK(is_fixed_point(Natural("4294967296"), 512, EncodingVariant::standard()));
  CHECK_THROWS_AS(is_fixed_point(0, 10, EncodingVariant::standard()),
                  std::invalid_argument);
}

TEST_CASE("fixed point findings are self-contained") {
  auto f = check_fixed_point(81312000, 10, EncodingVariant::standard());
  REQUIRE(f.has_value());
  CHECK(encode(f->digits, f->variant) == f->value);
  CHECK(from_radix(f->digits) == f->value);
  CHECK(f->factorization.reconstruct() == f->value);
  CHECK(f->zero_digits == 3);
  CHECK(f->trailing_zeros == 3);
  // Trailing zeros are min(first digit, third digit) in base 10.
  CHECK(f->trailing_zeros ==
        std::min(to_u64(f->digits.digits[0]), to_u64(f->digits.digits[2])));
}

TEST_CASE("palindromic fixed points are also reverse fixed points") {
  const std::pair<uint64_t, uint64_t> cases[] = {
      {6, 5}, {100, 7}, {36, 17}, {1296, 323}};
  for (auto [value, base] : cases) {
    CHECK(is_fixed_point(value, base, EncodingVariant::standard()));
    CHECK(is_fixed_point(value, base, EncodingVariant::reverse()));
    RadixRep r = to_radix(value, base);
    std::vector<Natural> reversed(r.digits.rbegin(), r.digits.rend());
    CHECK(r.digits == reversed);
  }
}

TEST_CASE("zero digit statistics") {
  auto s = zero_digit_stats(rep(10, {8, 1, 3, 1, 2, 0, 0, 0}));
  CHECK(s.zero_digits == 3);
  CHECK(s.trailing_zeros == 3);
  s = zero_digit_stats(rep(5, {1, 1}));
  CHECK(s.zero_digits == 0);
  CHECK(s.trailing_zeros == 0);
  s = zero_digit_stats(rep(10, {1, 0}));
  CHECK(s.zero_digits == 1);
  CHECK(s.trailing_zeros == 1);
  s = zero_digit_stats(rep(10, {1, 0, 2, 0}));
  CHECK(s.zero_digits == 2);
  CHECK(s.trailing_zeros == 1);
}

TEST_CASE("zero digit lower bound") {
  // Raw bound is negative for both published-scale cases; clamped at zero.
  double w = oracles::lambert_w_bisect(1.675 * 8 * std::log(10.0));
  CHECK(8.0 - std::exp(w) < 0);
  CHECK(zero_lower_bound(10, 8) == 0.0);
  CHECK(zero_lower_bound(2, 1) == 0.0);
  // Raw bound decreases in b, so the clamped bound is monotone nonincreasing.
  double prev = zero_lower_bound(2, 30);
  for (uint64_t b = 3; b <= 64; ++b) {
    double cur = zero_lower_bound(b, 30);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  // For fixed b the bound grows without limit in u, so it is eventually > 0.
  CHECK(zero_lower_bound(2, 1000) > 0.0);
}

TEST_CASE("digit rendering") {
  CHECK(render_digits(to_radix(82944, 8294)) == "A4");
  CHECK(render_digits(to_radix(81312000, 10)) == "81312000");
  CHECK(render_digits(rep(100, {36, 99})) == "[36][99]");
  CHECK(render_digits(rep(40, {35, 1})) == "Z1");
  CHECK(render_digits(to_radix(0, 9)) == "0");
}

TEST_CASE("variant names round-trip") {
  for (const char* name : {"standard", "alpha", "reverse", "gmn", "grmn"}) {
    auto v = variant_from_name(name);
    REQUIRE(v.has_value());
    CHECK(variant_name(*v) == name);
  }
  CHECK_FALSE(variant_from_name("bogus").has_value());
  // The named kinds pin down (f1, f2, direction).
  CHECK(EncodingVariant::standard().f1 == IndexMap::NthPrime);
  CHECK(EncodingVariant::standard().f2 == DigitMap::Identity);
  CHECK_FALSE(EncodingVariant::standard().reversed);
  CHECK(EncodingVariant::alpha().f2 == DigitMap::Successor);
  CHECK(EncodingVariant::reverse().reversed);
}
