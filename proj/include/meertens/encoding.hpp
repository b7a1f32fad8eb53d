#ifndef MEERTENS_ENCODING_HPP
#define MEERTENS_ENCODING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meertens/bigmath.hpp"
#include "meertens/natural.hpp"

namespace meertens {

// Base-b positional representation, most significant digit first.
// Canonical form has no leading zero except for the value 0 itself.
struct RadixRep {
  Natural base;
  std::vector<Natural> digits;
};

enum class VariantKind { Standard, Alpha, Reverse, Generalized };

// The prime-position map f1 and digit-exponent map f2 are restricted to the
// named builtins; new maps are added here in code, not through the CLI.
enum class IndexMap { NthPrime, Identity };
enum class DigitMap { Identity, Successor };

struct EncodingVariant {
  VariantKind kind = VariantKind::Standard;
  IndexMap f1 = IndexMap::NthPrime;
  DigitMap f2 = DigitMap::Identity;
  // True when the least significant digit is paired with f1(1).
  bool reversed = false;

  static EncodingVariant standard();
  static EncodingVariant alpha();
  static EncodingVariant reverse();
  static EncodingVariant generalized(IndexMap f1, DigitMap f2, bool reversed);

  bool operator==(const EncodingVariant&) const = default;
};

// f1(i) for 1-based position i.
Natural f1_value(IndexMap f1, uint64_t i);
uint64_t f1_value_u64(IndexMap f1, uint64_t i);
// f2(d) for a digit d.
Natural f2_value(DigitMap f2, const Natural& d);
uint64_t f2_value_u64(DigitMap f2, uint64_t d);

std::string variant_name(const EncodingVariant& v);
std::optional<EncodingVariant> variant_from_name(const std::string& name);

RadixRep to_radix(const Natural& m, const Natural& base);
Natural from_radix(const RadixRep& rep);

// Exact encoded value of the digit sequence under the variant. For reversed
// variants leading zeros in `rep` do not change the result.
Natural encode(const RadixRep& rep, const EncodingVariant& variant);

struct ZeroStats {
  uint64_t zero_digits = 0;
  uint64_t trailing_zeros = 0;
};
ZeroStats zero_digit_stats(const RadixRep& rep);

// A verified fixed point. `digits`/`factorization` make the record
// self-contained: encode(digits, variant) == value == from_radix(digits).
struct Finding {
  Natural value;
  Natural base;
  EncodingVariant variant;
  RadixRep digits;
  Factorization factorization;
  uint64_t zero_digits = 0;
  uint64_t trailing_zeros = 0;
};

// True iff encode(to_radix(m, b), variant) == m. The product is accumulated
// lazily and abandoned as soon as it exceeds m, so huge-base witnesses stay
// cheap to check.
bool is_fixed_point(const Natural& m, const Natural& base,
                    const EncodingVariant& variant);
std::optional<Finding> check_fixed_point(const Natural& m, const Natural& base,
                                         const EncodingVariant& variant);

// max(0, u - e^{W(1.675 u ln b)}): lower bound on the number of zero digits
// of a u-digit fixed point of the standard or reverse map in base b. The raw
// bound can be negative, hence the clamp.
double zero_lower_bound(const Natural& base, uint64_t digit_count);

// Digit rendering for reports: 0-9, A-Z for 10..35, then "[123]" per digit.
std::string render_digits(const RadixRep& rep);

}  // namespace meertens

#endif  // MEERTENS_ENCODING_HPP
