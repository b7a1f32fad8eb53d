#include "meertens/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "meertens/bigmath.hpp"

namespace meertens {

namespace {

using u128 = unsigned __int128;

static_assert(GMP_NUMB_BITS == 64, "limb extraction assumes 64-bit limbs");

constexpr u128 kSat = ~u128{0};

// Saturating arithmetic keeps every prune decision exact on the native path:
// a saturated product compares as "huge", which can only make pruning more
// conservative on the low side and is exact on the high side because window
// tops never exceed 2^120.
inline u128 mul_sat(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

inline u128 pow_sat(u128 base, uint64_t exp) {
  u128 r = 1;
  while (exp) {
    if (exp & 1) r = mul_sat(r, base);
    exp >>= 1;
    if (exp) base = mul_sat(base, base);
  }
  return r;
}

u128 natural_to_u128(const Natural& n) {
  u128 r = 0;
  size_t limbs = mpz_size(n.get_mpz_t());
  if (limbs > 0) r = mpz_getlimbn(n.get_mpz_t(), 0);
  if (limbs > 1) r |= (u128)mpz_getlimbn(n.get_mpz_t(), 1) << 64;
  return r;
}

Natural u128_to_natural(u128 v) {
  Natural hi(static_cast<unsigned long>(v >> 64));
  Natural lo(static_cast<unsigned long>(v & ~uint64_t{0}));
  return (hi << 64) + lo;
}

struct NativeArith {
  using Int = u128;
  static Int one() { return 1; }
  static Int mul(Int a, Int b) { return mul_sat(a, b); }
  static Natural to_natural(Int v) { return u128_to_natural(v); }
};

struct BigArith {
  using Int = Natural;
  static Int one() { return 1; }
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static const Natural& to_natural(const Int& v) { return v; }
};

// One digit position of the tuple being enumerated. Position i pairs with
// f1(i); forward variants read digit i from the most significant end,
// reversed variants from the least significant end.
struct Position {
  uint64_t f = 0;   // f1(index); 0 marks values beyond uint64 (never happens
                    // for the builtin maps)
  bool branch = false;  // f >= 2: this position multiplies into the product
  uint64_t lo = 0;      // smallest admissible digit (1 for MSB / zeroless)
};

// Per-digit-count search configuration shared by both arithmetic paths.
struct Level {
  uint64_t k = 0;
  Natural w_lo;  // b^(k-1)
  Natural w_hi;  // min(b^k, limit + 1)
  std::vector<Position> positions;      // size k, index 0 = position 1
  std::vector<size_t> branch_positions;  // indices into positions
  bool native = false;
};

struct Unit {
  size_t level = 0;                 // index into levels
  std::vector<uint64_t> prefix;     // digits for the first 1..2 branch levels
};

uint64_t max_digit_u64(const Natural& base) {
  // Branch digits are always pruned far below 2^63; an unbounded marker is
  // enough when the base itself is beyond 64 bits.
  if (fits_u64(base)) return to_u64(base) - 1;
  return ~uint64_t{0};
}

// Diagnostic escape hatch: MEERTENS_FORCE_BIG_PATH=1 disables the native
// 128-bit fast path so both arithmetic backends can be tested on the same
// workloads.
bool force_big_path() {
  const char* env = std::getenv("MEERTENS_FORCE_BIG_PATH");
  return env && env[0] == '1';
}

class Engine {
 public:
  Engine(const SearchSpec& spec, const BoundReport& bounds)
      : spec_(spec), base_(spec.base) {
    const uint64_t cap = bounds.applied_digit_cap;
    Natural power = 1;  // b^(k-1)
    for (uint64_t k = 1; k <= cap; ++k) {
      if (k > 1) power *= base_;
      Level level;
      level.k = k;
      level.w_lo = power;
      level.w_hi = power * base_;
      if (spec.value_limit && *spec.value_limit + 1 < level.w_hi)
        level.w_hi = *spec.value_limit + 1;
      if (level.w_lo >= level.w_hi) continue;
      level.native =
          bit_size(level.w_hi) <= 120 && fits_u64(base_) && !force_big_path();
      const size_t msb_position = spec.variant.reversed ? k : 1;
      for (uint64_t i = 1; i <= k; ++i) {
        Position pos;
        pos.f = f1_value_u64(spec.variant.f1, i);
        pos.branch = pos.f >= 2;
        pos.lo = (spec.zeroless || i == msb_position) ? 1 : 0;
        level.positions.push_back(pos);
      }
      for (size_t i = 0; i < level.positions.size(); ++i)
        if (level.positions[i].branch) level.branch_positions.push_back(i);
      levels_.push_back(std::move(level));
    }
    max_digit_ = max_digit_u64(base_);
    build_units();
  }

  const std::vector<Unit>& units() const { return units_; }

  std::vector<Natural> run_unit(const Unit& unit) const {
    const Level& level = levels_[unit.level];
    std::vector<Natural> found;
    if (level.native)
      run_level<NativeArith>(level, unit.prefix, &found);
    else
      run_level<BigArith>(level, unit.prefix, &found);
    return found;
  }

  double estimated_nodes() const {
    double total = 0;
    for (const Level& level : levels_) {
      double nodes = 1;
      // Digit spans live inside the slack between the floor product (every
      // digit at its minimum) and the window top.
      double budget = log_natural(level.w_hi);
      for (size_t bp : level.branch_positions) {
        const Position& pos = level.positions[bp];
        budget -= (double)f2_value_u64(spec_.variant.f2, pos.lo) *
                  std::log((double)pos.f);
      }
      budget = std::max(budget, 0.0);
      for (size_t bp : level.branch_positions) {
        double span = budget / std::log((double)level.positions[bp].f) + 2;
        if (fits_u64(base_))
          span = std::min(span, (double)to_u64(base_));
        nodes = std::min(nodes * span, 1e18);
      }
      total = std::min(total + nodes, 1e18);
    }
    return total;
  }

 private:
  // f2 is one of the unit-step builtins, so walking a digit upward always
  // multiplies the partial product by f exactly once.
  uint64_t f2_lo(const Position& pos) const {
    return f2_value_u64(spec_.variant.f2, pos.lo);
  }

  void build_units() {
    for (size_t li = 0; li < levels_.size(); ++li) {
      const Level& level = levels_[li];
      if (level.branch_positions.empty()) {
        units_.push_back({li, {}});
        continue;
      }
      // Work units split at the first branching digit, one level deeper when
      // its span is too narrow to feed a worker pool. The rule must not read
      // spec.parallelism: unit identity has to survive a resume under a
      // different worker count.
      std::vector<std::vector<uint64_t>> prefixes;
      enumerate_prefix(level, {}, &prefixes);
      bool deepen =
          prefixes.size() < 16 && level.branch_positions.size() >= 2;
      for (const auto& p : prefixes) {
        if (!deepen) {
          units_.push_back({li, p});
          continue;
        }
        std::vector<std::vector<uint64_t>> second;
        enumerate_prefix(level, p, &second);
        for (const auto& q : second) units_.push_back({li, q});
        if (second.empty())
          units_.push_back({li, p});  // subtree dies at depth 2; keep a stub
      }
      if (prefixes.empty()) units_.push_back({li, {}});
    }
  }

  // Digits d at branch depth `prefix.size()` that survive the upper prune,
  // appended to prefix. Mirrors the DFS loop without the lower-bound skip so
  // the unit list is a deterministic function of the spec alone.
  void enumerate_prefix(const Level& level, std::vector<uint64_t> prefix,
                        std::vector<std::vector<uint64_t>>* out) const {
    if (level.native)
      enumerate_prefix_impl<NativeArith>(level, prefix, out);
    else
      enumerate_prefix_impl<BigArith>(level, prefix, out);
  }

  template <class A>
  void enumerate_prefix_impl(const Level& level, std::vector<uint64_t> prefix,
                             std::vector<std::vector<uint64_t>>* out) const {
    auto rests = min_rests<A>(level);
    typename A::Int w_hi = window_hi<A>(level);
    typename A::Int p = A::one();
    for (size_t bi = 0; bi < prefix.size(); ++bi)
      p = A::mul(p, factor_power<A>(level, bi, prefix[bi]));
    size_t bi = prefix.size();
    const Position& pos = level.positions[level.branch_positions[bi]];
    uint64_t d = pos.lo;
    typename A::Int pd = A::mul(p, factor_power<A>(level, bi, d));
    typename A::Int f = factor<A>(level, bi);
    while (d <= max_digit_ && less(A::mul(pd, rests[bi + 1]), w_hi)) {
      auto next = prefix;
      next.push_back(d);
      out->push_back(std::move(next));
      ++d;
      pd = A::mul(pd, f);
    }
  }

  template <class A>
  typename A::Int window_hi(const Level& level) const {
    if constexpr (std::is_same_v<A, NativeArith>)
      return natural_to_u128(level.w_hi);
    else
      return level.w_hi;
  }
  template <class A>
  typename A::Int window_lo(const Level& level) const {
    if constexpr (std::is_same_v<A, NativeArith>)
      return natural_to_u128(level.w_lo);
    else
      return level.w_lo;
  }

  template <class A>
  typename A::Int factor(const Level& level, size_t bi) const {
    return typename A::Int(level.positions[level.branch_positions[bi]].f);
  }

  template <class A>
  typename A::Int factor_power(const Level& level, size_t bi,
                               uint64_t digit) const {
    uint64_t e = f2_value_u64(spec_.variant.f2, digit);
    if constexpr (std::is_same_v<A, NativeArith>) {
      return pow_sat(factor<A>(level, bi), e);
    } else {
      return pow_natural(factor<A>(level, bi), e);
    }
  }

  static bool less(const Natural& a, const Natural& b) { return a < b; }
  static bool less(u128 a, u128 b) { return a < b; }

  // min_rests[j] = exact product of f^(f2 at the digit floor) over branch
  // depths j..nb-1: the smallest multiplier any completion applies.
  template <class A>
  std::vector<typename A::Int> min_rests(const Level& level) const {
    const auto& bps = level.branch_positions;
    std::vector<typename A::Int> rests(bps.size() + 1, A::one());
    for (size_t j = bps.size(); j-- > 0;) {
      const Position& pos = level.positions[bps[j]];
      typename A::Int fp;
      if constexpr (std::is_same_v<A, NativeArith>)
        fp = pow_sat(pos.f, f2_lo(pos));
      else
        fp = pow_natural(Natural(static_cast<unsigned long>(pos.f)), f2_lo(pos));
      rests[j] = A::mul(rests[j + 1], fp);
    }
    return rests;
  }

  // max_rests[j]: the largest completion multiplier, materialized only when
  // modest; an absent entry disables the lower-bound skip, which is merely a
  // walk shortcut and never affects which tuples are accepted.
  template <class A>
  std::vector<std::optional<typename A::Int>> max_rests(const Level& level) const {
    const auto& bps = level.branch_positions;
    std::vector<std::optional<typename A::Int>> rests(bps.size() + 1, A::one());
    if (max_digit_ == ~uint64_t{0}) {
      // Base beyond 64 bits: the top digit exponent alone is astronomical.
      for (size_t j = 0; j < bps.size(); ++j) rests[j] = std::nullopt;
      return rests;
    }
    uint64_t e_hi = f2_value_u64(spec_.variant.f2, max_digit_);
    double bits = 0;
    for (size_t j = bps.size(); j-- > 0;) {
      const Position& pos = level.positions[bps[j]];
      bits += (double)e_hi * std::log2((double)pos.f);
      if (bits > (1 << 20) || !rests[j + 1]) {
        rests[j] = std::nullopt;
        continue;
      }
      if constexpr (std::is_same_v<A, NativeArith>) {
        rests[j] = A::mul(*rests[j + 1], pow_sat(pos.f, e_hi));
      } else {
        rests[j] = A::mul(
            *rests[j + 1],
            pow_natural(Natural(static_cast<unsigned long>(pos.f)), e_hi));
      }
    }
    return rests;
  }

  template <class A>
  struct LevelRun {
    const Engine* engine;
    const Level* level;
    typename A::Int w_lo, w_hi;
    std::vector<typename A::Int> min_rest;
    std::vector<std::optional<typename A::Int>> max_rest;
    std::vector<uint64_t> chosen;  // digit per branch depth
    std::vector<Natural>* out;

    void dfs(size_t bi, typename A::Int p) {
      const auto& bps = level->branch_positions;
      if (bi == bps.size()) {
        leaf(p);
        return;
      }
      const Position& pos = level->positions[bps[bi]];
      uint64_t d = pos.lo;
      typename A::Int f = engine->factor<A>(*level, bi);
      typename A::Int pd = A::mul(p, engine->factor_power<A>(*level, bi, d));
      if (max_rest[bi + 1]) {
        // Skip digits whose entire subtree falls below the window.
        while (d <= engine->max_digit_ &&
               less(A::mul(pd, *max_rest[bi + 1]), w_lo)) {
          ++d;
          pd = A::mul(pd, f);
        }
      }
      while (d <= engine->max_digit_ &&
             less(A::mul(pd, min_rest[bi + 1]), w_hi)) {
        chosen[bi] = d;
        dfs(bi + 1, pd);
        ++d;
        pd = A::mul(pd, f);
      }
    }

    void leaf(typename A::Int p) {
      if (less(p, w_lo) || !less(p, w_hi)) return;
      if constexpr (std::is_same_v<A, NativeArith>)
        engine->accept_native(*level, chosen, p, out);
      else
        engine->accept(*level, chosen, p, out);
    }
  };

  template <class A>
  void run_level(const Level& level, const std::vector<uint64_t>& prefix,
                 std::vector<Natural>* out) const {
    LevelRun<A> run;
    run.engine = this;
    run.level = &level;
    run.w_lo = window_lo<A>(level);
    run.w_hi = window_hi<A>(level);
    run.min_rest = min_rests<A>(level);
    run.max_rest = max_rests<A>(level);
    run.chosen.assign(level.branch_positions.size(), 0);
    run.out = out;
    typename A::Int p = A::one();
    for (size_t bi = 0; bi < prefix.size(); ++bi) {
      run.chosen[bi] = prefix[bi];
      p = A::mul(p, factor_power<A>(level, bi, prefix[bi]));
    }
    // A unit prefix fixes the first digits; re-check its own prune bounds so
    // stub units exit immediately.
    if (!less(A::mul(p, run.min_rest[prefix.size()]), run.w_hi)) return;
    run.dfs(prefix.size(), p);
  }

  // Final acceptance: the digit tuple must be exactly the canonical digits
  // of the product (reversed for reversed variants). Free positions (f1 = 1)
  // take whatever digit the representation carries, subject to the floor.
  void accept(const Level& level, const std::vector<uint64_t>& chosen,
              const Natural& value, std::vector<Natural>* out) const {
    RadixRep rep = to_radix(value, base_);
    if (rep.digits.size() != level.k) return;
    const size_t k = level.k;
    size_t next_branch = 0;
    for (size_t i = 1; i <= k; ++i) {
      const Position& pos = level.positions[i - 1];
      const Natural& digit =
          rep.digits[spec_.variant.reversed ? k - i : i - 1];
      if (pos.branch) {
        uint64_t d = chosen[next_branch++];
        if (!fits_u64(digit) || to_u64(digit) != d) return;
      } else {
        if (digit < pos.lo) return;
      }
    }
    out->push_back(value);
  }

  // Same check without touching GMP; this is the hot leaf path.
  void accept_native(const Level& level, const std::vector<uint64_t>& chosen,
                     u128 value, std::vector<Natural>* out) const {
    const uint64_t base = to_u64(base_);
    uint64_t digits[128];  // w_hi <= 2^120 keeps k <= 120
    size_t n = 0;
    u128 rest = value;
    while (rest) {
      digits[n++] = static_cast<uint64_t>(rest % base);
      rest /= base;
    }
    if (n != level.k) return;
    // digits[] is least significant first.
    size_t next_branch = 0;
    for (size_t i = 1; i <= n; ++i) {
      const Position& pos = level.positions[i - 1];
      uint64_t digit = spec_.variant.reversed ? digits[i - 1] : digits[n - i];
      if (pos.branch) {
        if (digit != chosen[next_branch++]) return;
      } else {
        if (digit < pos.lo) return;
      }
    }
    out->push_back(u128_to_natural(value));
  }

  SearchSpec spec_;
  Natural base_;
  uint64_t max_digit_ = 0;
  std::vector<Level> levels_;
  std::vector<Unit> units_;
};

}  // namespace

SearchState start_search(const SearchSpec& spec) {
  SearchState state;
  state.spec = spec;
  state.bounds = resolve_bounds(spec);
  Engine engine(spec, state.bounds);
  state.total_units = engine.units().size();
  return state;
}

bool advance_search(SearchState& state, int64_t max_units) {
  if (state.done()) return true;
  auto t0 = std::chrono::steady_clock::now();
  Engine engine(state.spec, state.bounds);
  const auto& units = engine.units();

  std::vector<uint64_t> pending;
  for (uint64_t i = 0; i < units.size(); ++i)
    if (!state.completed_units.count(i)) pending.push_back(i);
  if (max_units >= 0 && (uint64_t)max_units < pending.size())
    pending.resize(max_units);

  std::vector<std::vector<Natural>> results(pending.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      size_t slot = cursor.fetch_add(1);
      if (slot >= pending.size()) return;
      results[slot] = engine.run_unit(units[pending[slot]]);
    }
  };
  unsigned jobs = std::max(1u, state.spec.parallelism);
  jobs = std::min<unsigned>(jobs, std::max<size_t>(pending.size(), 1));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  for (size_t slot = 0; slot < pending.size(); ++slot) {
    state.completed_units.insert(pending[slot]);
    for (auto& v : results[slot]) state.found_values.push_back(std::move(v));
  }
  std::sort(state.found_values.begin(), state.found_values.end());
  state.found_values.erase(
      std::unique(state.found_values.begin(), state.found_values.end()),
      state.found_values.end());
  state.elapsed_seconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return state.done();
}

SearchOutcome finish_search(const SearchState& state) {
  if (!state.done())
    throw std::logic_error("finish_search: search is not complete");
  SearchOutcome outcome;
  outcome.bounds = state.bounds;
  outcome.exhaustive = state.bounds.cap_source != CapSource::UserLimit;
  if (outcome.exhaustive && state.spec.value_limit) {
    Natural top = pow_natural(state.spec.base, state.bounds.applied_digit_cap);
    if (*state.spec.value_limit + 1 < top) outcome.exhaustive = false;
  }
  for (const Natural& v : state.found_values) {
    auto finding = check_fixed_point(v, state.spec.base, state.spec.variant);
    if (!finding)
      throw std::logic_error("search emitted a value that fails verification");
    outcome.findings.push_back(std::move(*finding));
  }
  return outcome;
}

SearchOutcome search_fixed_points(const SearchSpec& spec) {
  SearchState state = start_search(spec);
  advance_search(state, -1);
  return finish_search(state);
}

std::vector<Natural> search_bases(const Natural& m, const Natural& lo,
                                  const Natural& hi,
                                  const EncodingVariant& variant) {
  if (m < 1) throw std::invalid_argument("search_bases: m >= 1");
  if (lo < 2 || hi < lo) throw std::invalid_argument("search_bases: bad range");
  std::vector<Natural> bases;
  for (Natural b = lo; b <= hi; ++b)
    if (is_fixed_point(m, b, variant)) bases.push_back(b);
  return bases;
}

double estimate_search_nodes(const SearchSpec& spec, const BoundReport& bounds) {
  return Engine(spec, bounds).estimated_nodes();
}

}  // namespace meertens
