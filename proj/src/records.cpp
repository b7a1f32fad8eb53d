#include "meertens/records.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace meertens {

namespace {

Json variant_json(const EncodingVariant& v) {
  Json j;
  j["name"] = variant_name(v);
  j["f1"] = v.f1 == IndexMap::NthPrime ? "nth-prime" : "identity";
  j["f2"] = v.f2 == DigitMap::Identity ? "identity" : "successor";
  j["reversed"] = v.reversed;
  return j;
}

std::string factorization_string(const Factorization& f) {
  if (f.factors.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : f.factors) {
    if (!s.empty()) s += "*";
    s += p.get_str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string natural_to_string(const Natural& n) { return n.get_str(); }

Json finding_record(const Finding& f, bool exhaustive) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "finding";
  j["value"] = f.value.get_str();
  j["base"] = f.base.get_str();
  j["variant"] = variant_json(f.variant);
  Json digits = Json::array();
  for (const Natural& d : f.digits.digits) digits.push_back(d.get_str());
  j["digits"] = digits;
  j["digits_rendered"] = render_digits(f.digits);
  j["factorization"] = factorization_string(f.factorization);
  j["factorization_certified"] = f.factorization.certified;
  j["zero_digits"] = f.zero_digits;
  j["trailing_zeros"] = f.trailing_zeros;
  j["exhaustive"] = exhaustive;
  return j;
}

Json bound_record(const BoundReport& b, uint64_t finding_count,
                  bool exhaustive) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bound";
  j["base"] = b.base.get_str();
  j["k_star"] = b.k_star ? Json(*b.k_star) : Json(nullptr);
  j["l_star"] = b.l_star ? Json(*b.l_star) : Json(nullptr);
  j["l_star_reading"] = BoundReport::kLStarReading;
  j["squarefree_cap"] =
      b.squarefree_cap ? Json(*b.squarefree_cap) : Json(nullptr);
  j["applied_digit_cap"] = b.applied_digit_cap;
  j["cap_source"] = cap_source_name(b.cap_source);
  j["finding_count"] = finding_count;
  j["exhaustive"] = exhaustive;
  return j;
}

Json witness_record(const FamilyWitness& w) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = w.skipped ? "skip" : "witness";
  j["family"] = w.family;
  Json params;
  for (const auto& [name, value] : w.params) params[name] = value.get_str();
  j["params"] = params;
  j["variant"] = variant_json(w.variant);
  if (w.skipped) {
    j["reason"] = w.skip_reason;
    return j;
  }
  j["value"] = w.value ? Json(w.value->get_str()) : Json(nullptr);
  j["base"] = w.base ? Json(w.base->get_str()) : Json(nullptr);
  j["value_form"] = w.value_form;
  j["base_form"] = w.base_form;
  j["symbolic"] = w.symbolic;
  j["verified"] = w.verified;
  return j;
}

Json zero_bound_record(const Natural& base, uint64_t digits, double bound) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bound";
  j["base"] = base.get_str();
  j["digits"] = digits;
  j["zero_lower_bound"] = bound;
  return j;
}

namespace {

constexpr const char* kCsvColumns[] = {
    "kind",         "value",          "base",           "variant",
    "digits",       "factorization",  "zero_digits",    "trailing_zeros",
    "exhaustive",   "k_star",         "l_star",         "squarefree_cap",
    "applied_digit_cap", "cap_source", "finding_count", "family",
    "params",       "value_form",     "base_form",      "symbolic",
    "verified",     "reason",         "digits_rendered", "zero_lower_bound"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

std::string cell_to_string(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array() || v.is_object()) {
    // Nested values (digit lists, params, variants) flatten to compact JSON.
    return v.dump();
  }
  return v.dump();
}

}  // namespace

std::string csv_header() {
  std::string line;
  for (const char* col : kCsvColumns) {
    if (!line.empty()) line += ",";
    line += col;
  }
  return line;
}

std::string csv_row(const Json& record) {
  std::string line;
  bool first = true;
  for (const char* col : kCsvColumns) {
    if (!first) line += ",";
    first = false;
    if (std::string(col) == "variant" && record.contains("variant") &&
        record["variant"].is_object()) {
      line += csv_escape(record["variant"]["name"].get<std::string>());
      continue;
    }
    if (record.contains(col)) line += csv_escape(cell_to_string(record[col]));
  }
  return line;
}

namespace {

// expr  := term ('+' term)*
// term  := power ('*' power)*
// power := atom ('^' power)?          (right associative)
// atom  := [0-9]+ | '(' expr ')'
class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : text_(text) {}

  Natural parse() {
    Natural v = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw std::invalid_argument("expression: trailing characters at '" +
                                  text_.substr(pos_) + "'");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Natural expr() {
    Natural v = term();
    while (eat('+')) v += term();
    return v;
  }

  Natural term() {
    Natural v = power();
    while (eat('*')) v *= power();
    return v;
  }

  Natural power() {
    Natural base = atom();
    if (!eat('^')) return base;
    Natural exp = power();
    if (!fits_u64(exp))
      throw CapacityError("expression: exponent too large");
    uint64_t e = to_u64(exp);
    // Keep the result materializable: bits <= e * bit_size(base).
    if (base > 1 && (e > (uint64_t{1} << 26) ||
                     (double)e * (double)bit_size(base) > (double)(1 << 26)))
      throw CapacityError("expression: result would be astronomically large");
    return pow_natural(base, e);
  }

  Natural atom() {
    skip_ws();
    if (eat('(')) {
      Natural v = expr();
      if (!eat(')')) throw std::invalid_argument("expression: missing ')'");
      return v;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
      ++pos_;
    if (start == pos_)
      throw std::invalid_argument("expression: expected a number at '" +
                                  text_.substr(start) + "'");
    return Natural(text_.substr(start, pos_ - start));
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Natural parse_natural_expression(const std::string& text) {
  return ExpressionParser(text).parse();
}

}  // namespace meertens
