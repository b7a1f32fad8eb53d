#include <json.hpp>

#include "meertens/search.hpp"

namespace meertens {

namespace {

using Json = nlohmann::json;

std::string index_map_name(IndexMap m) {
  return m == IndexMap::NthPrime ? "nth-prime" : "identity";
}
std::string digit_map_name(DigitMap m) {
  return m == DigitMap::Identity ? "identity" : "successor";
}

// Canonical spec text, deliberately excluding parallelism: a checkpoint may
// be resumed with any worker count and must produce the same findings.
std::string canonical_spec(const SearchSpec& spec) {
  std::string s = "base=" + spec.base.get_str();
  s += ";f1=" + index_map_name(spec.variant.f1);
  s += ";f2=" + digit_map_name(spec.variant.f2);
  s += ";reversed=" + std::to_string(spec.variant.reversed ? 1 : 0);
  s += ";zeroless=" + std::to_string(spec.zeroless ? 1 : 0);
  s += ";max_digits=";
  if (spec.max_digits) s += std::to_string(*spec.max_digits);
  s += ";value_limit=";
  if (spec.value_limit) s += spec.value_limit->get_str();
  return s;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Json spec_to_json(const SearchSpec& spec) {
  Json j;
  j["base"] = spec.base.get_str();
  j["variant"] = variant_name(spec.variant);
  j["f1"] = index_map_name(spec.variant.f1);
  j["f2"] = digit_map_name(spec.variant.f2);
  j["reversed"] = spec.variant.reversed;
  j["zeroless"] = spec.zeroless;
  j["max_digits"] = spec.max_digits ? Json(*spec.max_digits) : Json(nullptr);
  j["value_limit"] =
      spec.value_limit ? Json(spec.value_limit->get_str()) : Json(nullptr);
  return j;
}

SearchSpec spec_from_json(const Json& j) {
  SearchSpec spec;
  spec.base = Natural(j.at("base").get<std::string>());
  auto variant = variant_from_name(j.at("variant").get<std::string>());
  if (!variant) throw CheckpointError("checkpoint: unknown variant");
  spec.variant = *variant;
  spec.zeroless = j.at("zeroless").get<bool>();
  if (!j.at("max_digits").is_null())
    spec.max_digits = j.at("max_digits").get<uint64_t>();
  if (!j.at("value_limit").is_null())
    spec.value_limit = Natural(j.at("value_limit").get<std::string>());
  return spec;
}

bool same_search(const SearchSpec& a, const SearchSpec& b) {
  return a.base == b.base && a.variant == b.variant &&
         a.zeroless == b.zeroless && a.max_digits == b.max_digits &&
         a.value_limit == b.value_limit;
}

}  // namespace

std::string spec_fingerprint(const SearchSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_spec(spec))));
  return buf;
}

std::string checkpoint_serialize(const SearchState& state) {
  Json j;
  j["schema_version"] = "1";
  j["kind"] = "checkpoint";
  j["spec"] = spec_to_json(state.spec);
  j["fingerprint"] = spec_fingerprint(state.spec);
  j["total_units"] = state.total_units;
  j["completed_units"] = state.completed_units;
  Json values = Json::array();
  for (const Natural& v : state.found_values) values.push_back(v.get_str());
  j["found_values"] = values;
  j["elapsed_seconds"] = state.elapsed_seconds;
  return j.dump(2) + "\n";
}

SearchState checkpoint_parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw CheckpointError(std::string("checkpoint: not parseable: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<std::string>() != "1")
      throw CheckpointError("checkpoint: unsupported schema version");
    if (j.at("kind").get<std::string>() != "checkpoint")
      throw CheckpointError("checkpoint: wrong record kind");
    SearchState state;
    state.spec = spec_from_json(j.at("spec"));
    if (j.at("fingerprint").get<std::string>() != spec_fingerprint(state.spec))
      throw CheckpointError("checkpoint: fingerprint does not match its spec");
    state.bounds = resolve_bounds(state.spec);
    state.total_units = j.at("total_units").get<uint64_t>();
    for (const auto& u : j.at("completed_units"))
      state.completed_units.insert(u.get<uint64_t>());
    for (const auto& v : j.at("found_values"))
      state.found_values.emplace_back(v.get<std::string>());
    state.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return state;
  } catch (const Json::exception& e) {
    throw CheckpointError(std::string("checkpoint: malformed document: ") +
                          e.what());
  }
}

SearchState checkpoint_resume(const std::string& text,
                              const SearchSpec& expected) {
  SearchState state = checkpoint_parse(text);
  if (!same_search(state.spec, expected))
    throw CheckpointError(
        "checkpoint: saved spec does not match the requested search");
  // Carry the caller's worker preference; it is not part of the identity.
  state.spec.parallelism = expected.parallelism;
  SearchState fresh = start_search(state.spec);
  if (fresh.total_units != state.total_units)
    throw CheckpointError("checkpoint: unit count mismatch");
  return state;
}

}  // namespace meertens
