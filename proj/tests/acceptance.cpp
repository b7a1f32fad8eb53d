// Acceptance suite: one check per published claim the toolkit must
// reproduce, each printed as a single PASS/FAIL line with its runtime.
// Returns the number of failed criteria.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "meertens/bigmath.hpp"
#include "meertens/encoding.hpp"
#include "meertens/families.hpp"
#include "meertens/records.hpp"
#include "meertens/search.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace meertens;

namespace {

struct Ctx {
  int checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

int run_cli_status(const std::string& args) {
  std::string cmd = std::string(MEERTENS_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::vector<uint64_t> search_values(uint64_t base, EncodingVariant variant,
                                    std::optional<uint64_t> max_digits = {},
                                    std::optional<uint64_t> limit = {},
                                    bool zeroless = false,
                                    bool* exhaustive = nullptr) {
  SearchSpec spec;
  spec.base = base;
  spec.variant = variant;
  spec.zeroless = zeroless;
  if (max_digits) spec.max_digits = *max_digits;
  if (limit) spec.value_limit = Natural(static_cast<unsigned long>(*limit));
  spec.parallelism = 2;
  auto outcome = search_fixed_points(spec);
  if (exhaustive) *exhaustive = outcome.exhaustive;
  std::vector<uint64_t> values;
  for (const Finding& f : outcome.findings) values.push_back(to_u64(f.value));
  return values;
}

unsigned hw_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? std::min(n + 1, 4u) : 2;
}

// ---------------------------------------------------------------- criteria

// Every (base, value) pair of the standard-map table verifies, through the
// CLI so the expression form is exercised too.
void criterion1(Ctx& c) {
  for (const auto& row : fixtures::table1()) {
    for (uint64_t value : row.values) {
      c.expect(is_fixed_point(value, row.base, EncodingVariant::standard()),
               "table1 verify failed: " + std::to_string(value) + " base " +
                   std::to_string(row.base));
    }
  }
  // CLI spot checks including expression input for power-shaped entries.
  c.expect(run_cli_status("verify --value 4294967296 --base 512") == 0,
           "cli verify 4294967296 base 512");
  c.expect(run_cli_status("verify --value 2^2^4 --base 64") == 0,
           "cli verify 2^16 base 64 via expression");
  c.expect(run_cli_status("verify --value 2^2^4 --base 4096") == 0,
           "cli verify 2^16 base 4096 via expression");
  c.expect(run_cli_status("verify --value 10077696 --base 1119743") == 0,
           "cli verify largest table base");
}

// Bases 2..10 with a 10^8 value limit return exactly the table rows below
// 10^8; base 10 yields the single known fixed point.
void criterion2(Ctx& c) {
  std::map<uint64_t, std::vector<uint64_t>> expected;
  for (const auto& row : fixtures::table1())
    if (row.base <= 10) {
      for (uint64_t v : row.values)
        if (v < 100000000) expected[row.base].push_back(v);
    }
  for (uint64_t base = 2; base <= 10; ++base) {
    auto got = search_values(base, EncodingVariant::standard(), {}, 100000000);
    auto want = expected.count(base) ? expected[base] : std::vector<uint64_t>{};
    if (got != want) {
      std::string msg = "base " + std::to_string(base) + " got {";
      for (auto v : got) msg += std::to_string(v) + " ";
      c.expect(false, msg + "}");
    } else {
      c.expect(true, "");
    }
  }
  auto base10 = search_values(10, EncodingVariant::standard(), {}, 100000000);
  c.expect(base10 == std::vector<uint64_t>{81312000},
           "base 10 must yield exactly 81312000");
}

// Divisor table for 2^(2^a), plus the two counting claims.
void criterion3(Ctx& c) {
  for (const auto& row : fixtures::table2()) {
    auto ws = family_pow2(row.a);
    std::vector<uint64_t> ks;
    for (const auto& w : ws) {
      ks.push_back(to_u64(w.params.at("k")));
      c.expect(!w.skipped && w.verified,
               "pow2 witness unverified at a=" + std::to_string(row.a));
    }
    c.expect(ks == row.divisors,
             "divisor list mismatch at a=" + std::to_string(row.a));
  }
  c.expect(family_pow2_count(16) == 105, "pow2 count a=16");
  c.expect(family_pow2_count(64) >= 435, "pow2 count a=64");
}

// Alpha table: membership everywhere, bounded re-finding across every base
// up to the largest printed one, and full completeness for b <= 16.
void criterion4(Ctx& c) {
  for (const auto& row : fixtures::table3())
    for (uint64_t v : row.values)
      c.expect(is_fixed_point(v, row.base, EncodingVariant::alpha()),
               "table3 verify failed: " + std::to_string(v));

  std::map<uint64_t, std::set<uint64_t>> refound;
  std::atomic<uint64_t> next{2};
  std::vector<std::map<uint64_t, std::set<uint64_t>>> partial(hw_jobs());
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < hw_jobs(); ++t) {
    threads.emplace_back([&, t] {
      for (;;) {
        uint64_t b = next.fetch_add(1);
        if (b > 314925) return;
        SearchSpec spec;
        spec.base = b;
        spec.variant = EncodingVariant::alpha();
        spec.max_digits = 3;
        for (const Finding& f : search_fixed_points(spec).findings)
          partial[t][b].insert(to_u64(f.value));
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& p : partial)
    for (auto& [b, vals] : p) refound[b].insert(vals.begin(), vals.end());

  for (const auto& row : fixtures::table3())
    for (uint64_t v : row.values)
      c.expect(refound.count(row.base) && refound[row.base].count(v),
               "cap-3 scan missed " + std::to_string(v) + " in base " +
                   std::to_string(row.base));

  // Full-cap searches prove completeness for b <= 16.
  for (uint64_t b = 2; b <= 16; ++b) {
    bool exhaustive = false;
    auto got = search_values(b, EncodingVariant::alpha(), {}, {}, false,
                             &exhaustive);
    std::vector<uint64_t> want;
    for (const auto& row : fixtures::table3())
      if (row.base == b) want = row.values;
    c.expect(exhaustive, "alpha search not exhaustive at b=" + std::to_string(b));
    c.expect(got == want, "alpha completeness mismatch at b=" + std::to_string(b));
  }
}

void criterion5(Ctx& c) {
  for (uint64_t b = 2; b <= 11; ++b) {
    bool exhaustive = false;
    auto got =
        search_values(b, EncodingVariant::alpha(), {}, {}, false, &exhaustive);
    c.expect(exhaustive && got.empty(),
             "expected empty exhaustive alpha search at b=" + std::to_string(b));
  }
}

void criterion6(Ctx& c) {
  for (uint64_t b = 2; b <= 16; ++b) {
    c.expect(compute_k_star(b) == fixtures::table4()[b - 2],
             "k* mismatch at b=" + std::to_string(b));
    c.expect(compute_l_star(b) == fixtures::table6()[b - 2],
             "l* mismatch at b=" + std::to_string(b));
  }
}

void criterion7(Ctx& c) {
  for (const auto& row : fixtures::table5())
    for (uint64_t v : row.values)
      c.expect(is_fixed_point(v, row.base, EncodingVariant::reverse()),
               "table5 verify failed: " + std::to_string(v) + " base " +
                   std::to_string(row.base));
  auto ws = family_rmn(66);
  std::vector<uint64_t> primes;
  for (const auto& w : ws) {
    primes.push_back(to_u64(w.params.at("p")));
    c.expect(w.verified, "rmn witness unverified");
  }
  c.expect(primes == fixtures::rmn_prime_prefix(), "rmn prime prefix mismatch");
}

void criterion8(Ctx& c) {
  std::set<uint64_t> std_below12, rev_below12;
  for (uint64_t b = 2; b < 12; ++b) {
    for (uint64_t v :
         search_values(b, EncodingVariant::standard(), {}, {}, true))
      std_below12.insert(v);
    for (uint64_t v : search_values(b, EncodingVariant::reverse(), {}, {}, true))
      rev_below12.insert(v);
  }
  c.expect(std_below12 == std::set<uint64_t>{6},
           "zeroless standard below 12 must be {6}");
  c.expect(rev_below12 == std::set<uint64_t>{6, 12},
           "zeroless reverse below 12 must be {6, 12}");
  for (uint64_t b : {13, 14, 15}) {
    c.expect(search_values(b, EncodingVariant::standard(), {}, {}, true).empty(),
             "zeroless standard base " + std::to_string(b) + " must be empty");
    c.expect(search_values(b, EncodingVariant::reverse(), {}, {}, true).empty(),
             "zeroless reverse base " + std::to_string(b) + " must be empty");
  }
  c.expect(search_values(17, EncodingVariant::standard(), {}, {}, true) ==
               std::vector<uint64_t>{36},
           "zeroless standard base 17 must be {36}");
  c.expect(search_values(17, EncodingVariant::reverse(), {}, {}, true) ==
               std::vector<uint64_t>{36},
           "zeroless reverse base 17 must be {36}");
}

// Generalized-map table, asserted exactly as printed (plus the trivial 1).
// The searches find additional genuine fixed points the printed table does
// not carry; each extra reported below re-verifies independently, so a FAIL
// here documents table incompleteness rather than a search defect.
void criterion9(Ctx& c) {
  auto run = [&](const std::vector<fixtures::BaseValues>& table,
                 bool reversed) {
    for (const auto& row : table) {
      auto got = search_values(
          row.base,
          EncodingVariant::generalized(IndexMap::Identity, DigitMap::Identity,
                                       reversed),
          12, 1000000);
      std::vector<uint64_t> want = row.values;
      want.push_back(1);
      std::sort(want.begin(), want.end());
      if (got == want) {
        c.expect(true, "");
        continue;
      }
      std::string msg = std::string(reversed ? "grmn" : "gmn") + " base " +
                        std::to_string(row.base) + " expected {";
      for (auto v : want) msg += std::to_string(v) + " ";
      msg += "} got {";
      for (auto v : got) msg += std::to_string(v) + " ";
      msg += "}; extras re-verify: ";
      for (auto v : got) {
        if (std::find(want.begin(), want.end(), v) == want.end()) {
          bool genuine = is_fixed_point(
              v, row.base,
              EncodingVariant::generalized(IndexMap::Identity,
                                           DigitMap::Identity, reversed));
          msg += std::to_string(v) + (genuine ? "=genuine " : "=BUG ");
        }
      }
      c.expect(false, msg);
    }
  };
  run(fixtures::table7_gmn(), false);
  run(fixtures::table7_grmn(), true);
}

void criterion10(Ctx& c) {
  // Primorial growth floors.
  {
    Natural prod = 1;
    for (uint64_t n = 1; n <= 2000; ++n) {
      prod *= static_cast<unsigned long>(nth_prime(n));
      double lp = log_natural(prod);
      if (n >= 2)
        c.expect(lp > 0.5972 * n * std::log((double)n),
                 "primorial floor 0.5972 failed at n=" + std::to_string(n));
      if (n >= 947)
        c.expect(lp > 0.980 * n * std::log((double)n),
                 "primorial floor 0.980 failed at n=" + std::to_string(n));
    }
  }
  // Chebyshev floor over odd primes below 7481.
  {
    auto primes = PrimeTable::instance().with_limit(7480);
    long double theta = 0.0L;
    for (uint64_t p : *primes) {
      if (p > 7480) break;
      theta += logl((long double)p);
      if (p > 2)
        c.expect((double)theta > 0.5972 * (double)p,
                 "theta floor failed at p=" + std::to_string(p));
    }
  }
  c.expect(nth_prime(947) == 7481, "947th prime");

  // Injectivity of the one-to-one encodings.
  for (uint64_t base : {10, 12}) {
    for (auto variant : {EncodingVariant::alpha(), EncodingVariant::reverse()}) {
      std::set<Natural> seen;
      bool ok = true;
      for (uint64_t m = 1; m <= 10000; ++m)
        ok = ok && seen.insert(encode(to_radix(m, base), variant)).second;
      c.expect(ok, "injectivity failed in base " + std::to_string(base));
    }
  }

  // k* growth ceilings across a wide base range.
  {
    std::atomic<uint64_t> next{2};
    std::atomic<bool> ok1{true}, ok2{true};
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < hw_jobs(); ++t) {
      threads.emplace_back([&] {
        for (;;) {
          uint64_t b = next.fetch_add(1);
          if (b > 5000) return;
          uint64_t ks = compute_k_star(b);
          if ((double)ks > std::pow((double)b, 1.675)) ok1 = false;
          if ((ks >= 947 || b >= 826) &&
              (double)ks > std::pow((double)b, 1.02041))
            ok2 = false;
        }
      });
    }
    for (auto& t : threads) t.join();
    c.expect(ok1.load(), "k* <= b^1.675 violated");
    c.expect(ok2.load(), "k* <= b^1.02041 violated");
  }

  // Standard fixed points are even; base-10 trailing-zero law; zero-count
  // bound; zeroless caps.
  for (const auto& row : fixtures::table1()) {
    for (uint64_t v : row.values) {
      c.expect(v % 2 == 0, "odd standard fixed point " + std::to_string(v));
      auto f = check_fixed_point(v, row.base, EncodingVariant::standard());
      c.expect(f.has_value(), "finding vanished");
      if (!f) continue;
      uint64_t u = f->digits.digits.size();
      c.expect((double)f->zero_digits >=
                   zero_lower_bound(row.base, u) - 1e-9,
               "zero-count bound failed for " + std::to_string(v));
      if (row.base == 10 && u >= 3)
        c.expect(f->trailing_zeros == std::min(to_u64(f->digits.digits[0]),
                                               to_u64(f->digits.digits[2])),
                 "trailing-zero law failed");
    }
  }
  for (uint64_t b : {5, 10, 17}) {
    auto vals = search_values(b, EncodingVariant::standard(), {}, {}, true);
    for (uint64_t v : vals) {
      uint64_t digits = to_radix(v, b).digits.size();
      c.expect(digits <= compute_l_star(b), "zeroless l* cap violated");
      auto sq = zeroless_digit_cap(b);
      if (sq) c.expect(digits <= *sq, "zeroless squarefree cap violated");
    }
  }

  // Parallel determinism.
  {
    std::vector<std::vector<uint64_t>> per_jobs;
    for (unsigned jobs : {1u, 4u, 16u}) {
      SearchSpec spec;
      spec.base = 5;
      spec.variant = EncodingVariant::standard();
      spec.max_digits = 8;
      spec.parallelism = jobs;
      std::vector<uint64_t> vals;
      for (const Finding& f : search_fixed_points(spec).findings)
        vals.push_back(to_u64(f.value));
      per_jobs.push_back(vals);
    }
    c.expect(per_jobs[0] == per_jobs[1] && per_jobs[1] == per_jobs[2],
             "parallel determinism failed");
  }

  // Checkpoint resume equivalence.
  {
    SearchSpec spec;
    spec.base = 9;
    spec.variant = EncodingVariant::standard();
    spec.max_digits = 7;
    auto whole = search_fixed_points(spec);
    SearchState st = start_search(spec);
    advance_search(st, static_cast<int64_t>(st.total_units / 2));
    SearchState resumed = checkpoint_resume(checkpoint_serialize(st), spec);
    advance_search(resumed, -1);
    auto split = finish_search(resumed);
    bool same = whole.findings.size() == split.findings.size();
    for (size_t i = 0; same && i < whole.findings.size(); ++i)
      same = whole.findings[i].value == split.findings[i].value;
    c.expect(same, "checkpoint resume equivalence failed");
  }

  // Brute-force oracle equivalence for every variant and base <= 12.
  {
    auto sieve = oracles::sieve_primes(500);
    std::vector<uint64_t> prime_list(sieve.begin(), sieve.end());
    const std::pair<const char*, EncodingVariant> variants[] = {
        {"standard", EncodingVariant::standard()},
        {"alpha", EncodingVariant::alpha()},
        {"reverse", EncodingVariant::reverse()},
        {"gmn", EncodingVariant::generalized(IndexMap::Identity,
                                             DigitMap::Identity, false)},
        {"grmn", EncodingVariant::generalized(IndexMap::Identity,
                                              DigitMap::Identity, true)},
    };
    std::atomic<int> combo{0};
    std::vector<std::string> errors[16];
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < hw_jobs(); ++t) {
      threads.emplace_back([&, t] {
        for (;;) {
          int idx = combo.fetch_add(1);
          if (idx >= 5 * 11) return;
          uint64_t base = 2 + idx % 11;
          const auto& [name, variant] = variants[idx / 11];
          std::vector<uint64_t> brute;
          for (uint64_t m = 1; m <= 1000000; ++m)
            if (oracles::brute_fixed_point(m, base, name, prime_list))
              brute.push_back(m);
          SearchSpec spec;
          spec.base = base;
          spec.variant = variant;
          spec.value_limit = 1000000;
          spec.max_digits = 20;
          std::vector<uint64_t> engine;
          for (const Finding& f : search_fixed_points(spec).findings)
            engine.push_back(to_u64(f.value));
          if (engine != brute)
            errors[t].push_back("oracle mismatch " + std::string(name) +
                                " base " + std::to_string(base));
        }
      });
    }
    for (auto& t : threads) t.join();
    for (unsigned t = 0; t < hw_jobs(); ++t)
      for (const auto& e : errors[t]) c.expect(false, e);
    c.expect(true, "");
  }
}

// The published base-10 frontier (10^29) is out of desk reach; the stated
// substitute is the 10^8-limited search with its partial exit marker.
void criterion11(Ctx& c) {
  int status =
      run_cli_status("search --base 10 --variant standard --limit 100000000");
  c.expect(status == 3, "limited base-10 search must exit 3 (partial)");
  auto vals = search_values(10, EncodingVariant::standard(), {}, 100000000);
  c.expect(vals == std::vector<uint64_t>{81312000},
           "limited base-10 search must find exactly 81312000");
  c.notes.push_back(
      "the 10^29 base-10 frontier is not reproduced here; the 10^8-limited "
      "search (exit code 3) is the declared substitute");
}

struct Criterion {
  int id;
  const char* description;
  double budget_seconds;
  std::function<void(Ctx&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "standard-map table: every pair verifies", 10, criterion1},
      {2, "bases 2..10 complete below 10^8", 60, criterion2},
      {3, "2^(2^a) divisor table and counts", 30, criterion3},
      {4, "alpha table membership + bounded completeness", 600, criterion4},
      {5, "no alpha fixed points below base 12", 300, criterion5},
      {6, "k* and l* tables exact", 1, criterion6},
      {7, "reverse table membership + p^p prime prefix", 30, criterion7},
      {8, "zeroless classifications", 300, criterion8},
      {9, "generalized-map table exact at cap 12 / 10^6", 120, criterion9},
      {10, "property suites", 600, criterion10},
      {11, "base-10 frontier substituted by limited search", 60, criterion11},
  };

  int failed = 0;
  for (const auto& crit : criteria) {
    Ctx ctx;
    auto t0 = std::chrono::steady_clock::now();
    crit.run(ctx);
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_budget = dt < crit.budget_seconds;
    bool pass = ctx.failures.empty() && in_budget;
    std::printf("[criterion %2d] %s (%.1f s, %d checks) %s\n", crit.id,
                pass ? "PASS" : "FAIL", dt, ctx.checks, crit.description);
    if (!in_budget)
      std::printf("    over budget: %.1f s >= %.0f s\n", dt,
                  crit.budget_seconds);
    for (const auto& n : ctx.notes) std::printf("    note: %s\n", n.c_str());
    size_t shown = 0;
    for (const auto& f : ctx.failures) {
      if (shown++ >= 8) {
        std::printf("    ... %zu more\n", ctx.failures.size() - shown + 1);
        break;
      }
      std::printf("    %s\n", f.c_str());
    }
    if (!pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", (int)criteria.size() - failed,
              criteria.size());
  return failed;
}
