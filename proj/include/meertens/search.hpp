#ifndef MEERTENS_SEARCH_HPP
#define MEERTENS_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meertens/encoding.hpp"
#include "meertens/natural.hpp"

namespace meertens {

class SearchConfigError : public std::invalid_argument {
 public:
  explicit SearchConfigError(const std::string& what)
      : std::invalid_argument(what) {}
};

class CheckpointError : public std::runtime_error {
 public:
  explicit CheckpointError(const std::string& what)
      : std::runtime_error(what) {}
};

// Largest k with b^k > 2 * p_k#. Exact integer comparisons; the scan stops at
// the first failure once p_k >= b, where the ratio becomes monotone
// decreasing. Returns 0 when no k qualifies.
uint64_t compute_k_star(const Natural& base);

// Largest l with b^l > p_l#. Always >= k_star.
uint64_t compute_l_star(const Natural& base);

// u - 1 where p_u is the largest prime dividing b, when b is squarefree;
// absent otherwise. Bounds the digit count of zeroless fixed points under
// prime-valued f1.
std::optional<uint64_t> zeroless_digit_cap(const Natural& base);

enum class CapSource { KStar, LStar, Squarefree, UserLimit };
std::string cap_source_name(CapSource s);

struct BoundReport {
  Natural base;
  std::optional<uint64_t> k_star;
  std::optional<uint64_t> l_star;
  std::optional<uint64_t> squarefree_cap;
  uint64_t applied_digit_cap = 0;
  CapSource cap_source = CapSource::UserLimit;
  // The l-star scan reads the defining inequality as b^l > p_l#; recorded so
  // reports are explicit about it.
  static constexpr const char* kLStarReading = "b^l > p_l#";
};

struct SearchSpec {
  Natural base;
  EncodingVariant variant;
  bool zeroless = false;
  std::optional<uint64_t> max_digits;
  std::optional<Natural> value_limit;
  unsigned parallelism = 1;

  bool operator==(const SearchSpec&) const = default;
};

struct SearchOutcome {
  std::vector<Finding> findings;  // ascending by value
  BoundReport bounds;
  // True when every fixed point of the spec's (base, variant, zeroless)
  // combination is provably inside the searched region.
  bool exhaustive = false;
};

// Digit caps and their provenance for a spec, without running the search.
// Proven caps are computed only when applicable; resolving a spec with no
// proven cap and no user cap throws SearchConfigError.
BoundReport resolve_bounds(const SearchSpec& spec);

// Exhaustive pruned enumeration over digit tuples. The emitted set is
// independent of traversal order and worker count.
SearchOutcome search_fixed_points(const SearchSpec& spec);

// All b in [lo, hi] for which m is a fixed point under the variant.
std::vector<Natural> search_bases(const Natural& m, const Natural& lo,
                                  const Natural& hi,
                                  const EncodingVariant& variant);

// Rough upper estimate of DFS nodes the spec will visit (saturates at 1e18);
// the CLI warns when this passes 1e9 with no value limit set.
double estimate_search_nodes(const SearchSpec& spec, const BoundReport& bounds);

// A search in progress: the work-unit ledger that checkpoints persist.
// Units are subtrees rooted at the first branching digit (first two digits
// when the worker count exceeds the top-level digit span); they are executed
// in a fixed order so resumed runs reproduce uninterrupted ones exactly.
struct SearchState {
  SearchSpec spec;
  BoundReport bounds;
  uint64_t total_units = 0;
  std::set<uint64_t> completed_units;
  std::vector<Natural> found_values;  // canonical: sorted, deduped
  double elapsed_seconds = 0.0;

  bool done() const { return completed_units.size() == total_units; }
};

SearchState start_search(const SearchSpec& spec);

// Runs up to max_units additional units (all remaining if max_units < 0).
// Returns true when the search is complete.
bool advance_search(SearchState& state, int64_t max_units = -1);

// Requires state.done(); builds verified Findings from the collected values.
SearchOutcome finish_search(const SearchState& state);

// Self-describing text document, schema version "1". Round-trips bit-exact.
std::string checkpoint_serialize(const SearchState& state);
SearchState checkpoint_parse(const std::string& text);

// Parses and validates `text` against `expected`; throws CheckpointError on
// schema or spec-fingerprint mismatch.
SearchState checkpoint_resume(const std::string& text,
                              const SearchSpec& expected);

std::string spec_fingerprint(const SearchSpec& spec);

}  // namespace meertens

#endif  // MEERTENS_SEARCH_HPP
