#ifndef MEERTENS_FAMILIES_HPP
#define MEERTENS_FAMILIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meertens/encoding.hpp"
#include "meertens/natural.hpp"

namespace meertens {

// A (value, base, variant) instance produced by a constructive family.
// Witnesses below the materialization threshold carry the integers and are
// re-verified through is_fixed_point; larger ones keep expression forms plus
// a digit-pattern check done purely on exponents.
struct FamilyWitness {
  std::string family;
  std::map<std::string, Natural> params;
  std::optional<Natural> value;
  std::optional<Natural> base;
  std::string value_form;  // e.g. "2^256"
  std::string base_form;
  EncodingVariant variant;
  bool symbolic = false;
  bool verified = false;
  bool skipped = false;
  std::string skip_reason;
};

// Values with more than this many bits are not materialized (default 2^12
// bits, i.e. threshold 2^4096).
constexpr uint64_t kMaterializationBits = 4096;

// 1024 * 3^c in base (1024 * 3^c - c) / 10 for each c <= c_max with
// 10 | 1024 * 3^c - c. Two-digit standard witnesses [10, c].
std::vector<FamilyWitness> family_1024_3c(uint64_t c_max);

// 2^(2^a) in base 2^k for every divisor k > a of 2^a - a.
std::vector<FamilyWitness> family_pow2(uint64_t a);

// Number of divisors of 2^a - a exceeding a (bases for 2^(2^a)).
uint64_t family_pow2_count(uint64_t a);

struct TowerResult {
  std::vector<Natural> base_exponents;  // t+1 verified divisors of 2^(2^t) - 2^t
  std::vector<FamilyWitness> witnesses;
};
// 2^(2^(2^t)) in base 2^(2^(2^t - k) - 2^(t - k)) for k = 0..t; the exponent
// divisibility is checked exactly.
TowerResult family_tower(uint64_t t);

// The three two-digit standard families: 2*3^n, 2^(2^n) 3^(2^m),
// 2^(3^n) 3^(3^m). Degenerate (n, m) produce skip records, never silence.
std::vector<FamilyWitness> family_thm23(uint64_t n, uint64_t m);

// Reverse counterparts: 3*2^n, 2^(2^m) 3^(2^n), 2^(3^m) 3^(3^n).
std::vector<FamilyWitness> family_thm23_reverse(uint64_t n, uint64_t m);

// 3 * 2^(2^t + 1), an alpha fixed point in base 3 * 2^(2^t - t + 1).
FamilyWitness family_alpha(uint64_t t);

// p^p in base p^((p-1)/r) for p = p_{r+1} whenever r divides p - 1;
// reverse witnesses with digit pattern [p, 0 x r].
std::vector<FamilyWitness> family_rmn(uint64_t r_max);

}  // namespace meertens

#endif  // MEERTENS_FAMILIES_HPP
