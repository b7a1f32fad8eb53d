#ifndef MEERTENS_RECORDS_HPP
#define MEERTENS_RECORDS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "meertens/encoding.hpp"
#include "meertens/families.hpp"
#include "meertens/search.hpp"

namespace meertens {

using Json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

// Line-delimited machine output: every record is one self-contained object.
Json finding_record(const Finding& f, bool exhaustive);
Json bound_record(const BoundReport& b, uint64_t finding_count,
                  bool exhaustive);
Json witness_record(const FamilyWitness& w);  // kind "witness" or "skip"
Json zero_bound_record(const Natural& base, uint64_t digits, double bound);

// CSV projection of a record stream: fixed column superset, header first.
// jsonl and csv carry identical data.
std::string csv_header();
std::string csv_row(const Json& record);

// Exact big-int evaluation of +, *, ^ (right-associative) over naturals,
// e.g. "2^8*3*5^3". Rejects expressions whose value would exceed the bit
// ceiling. Throws std::invalid_argument on parse failure.
Natural parse_natural_expression(const std::string& text);

std::string natural_to_string(const Natural& n);

}  // namespace meertens

#endif  // MEERTENS_RECORDS_HPP
