// meertens: search for fixed points of Godel-like digit encodings, verify
// candidate values, reproduce the bound tables, and drive the constructive
// families. Exit codes: 0 success/exhaustive, 1 verify-false, 2 usage,
// 3 result complete only within a user-supplied limit, 4 checkpoint mismatch.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "meertens/bigmath.hpp"
#include "meertens/encoding.hpp"
#include "meertens/families.hpp"
#include "meertens/records.hpp"
#include "meertens/search.hpp"

namespace {

using namespace meertens;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;
constexpr int kExitCheckpoint = 4;

struct Emitter {
  std::string format = "jsonl";
  bool header_done = false;

  void emit(const Json& record) {
    if (format == "csv") {
      if (!header_done) {
        std::cout << csv_header() << "\n";
        header_done = true;
      }
      std::cout << csv_row(record) << "\n";
    } else {
      std::cout << record.dump() << "\n";
    }
  }
};

unsigned default_jobs() {
  if (const char* env = std::getenv("MEERTENS_JOBS")) {
    long v = std::atol(env);
    if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

EncodingVariant parse_variant(const std::string& name) {
  auto v = variant_from_name(name);
  if (!v)
    throw CLI::ValidationError("--variant",
                               "expected standard|alpha|reverse|gmn|grmn");
  return *v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << data;
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot replace " + path);
}

struct SearchArgs {
  std::string base;
  std::string variant = "standard";
  bool zeroless = false;
  uint64_t max_digits = 0;
  std::string limit;
  unsigned jobs = default_jobs();
  std::string checkpoint_path;
  std::string format = "jsonl";
};

int cmd_search(const SearchArgs& args) {
  SearchSpec spec;
  spec.base = parse_natural_expression(args.base);
  spec.variant = parse_variant(args.variant);
  spec.zeroless = args.zeroless;
  if (args.max_digits > 0) spec.max_digits = args.max_digits;
  if (!args.limit.empty()) spec.value_limit = parse_natural_expression(args.limit);
  spec.parallelism = args.jobs;

  SearchState state;
  bool have_checkpoint = false;
  if (!args.checkpoint_path.empty()) {
    std::ifstream probe(args.checkpoint_path);
    have_checkpoint = probe.good();
  }
  if (have_checkpoint) {
    state = checkpoint_resume(read_file(args.checkpoint_path), spec);
  } else {
    state = start_search(spec);
  }

  if (!spec.value_limit &&
      estimate_search_nodes(spec, state.bounds) > 1e9) {
    std::cerr << "warning: estimated search tree exceeds 1e9 nodes; consider "
                 "--limit\n";
  }

  Emitter out{args.format};
  bool exhaustive = false;
  {
    // Findings stream as work units finish; the final bound record is the
    // collector-sorted summary. A resumed run re-emits the findings already
    // in the checkpoint so the output is complete on its own.
    std::set<Natural> emitted;
    auto emit_new = [&] {
      for (const Natural& v : state.found_values) {
        if (emitted.count(v)) continue;
        emitted.insert(v);
        auto finding = check_fixed_point(v, spec.base, spec.variant);
        if (finding) out.emit(finding_record(*finding, false));
      }
    };
    emit_new();
    const int64_t batch =
        std::max<int64_t>(1, static_cast<int64_t>(state.total_units / 16));
    while (!state.done()) {
      advance_search(state, batch);
      emit_new();
      if (!args.checkpoint_path.empty())
        write_file_atomic(args.checkpoint_path, checkpoint_serialize(state));
    }
    SearchOutcome outcome = finish_search(state);
    exhaustive = outcome.exhaustive;
    out.emit(bound_record(outcome.bounds, outcome.findings.size(), exhaustive));
  }
  return exhaustive ? kExitOk : kExitPartial;
}

struct VerifyArgs {
  std::string value;
  std::string base;
  std::string variant = "standard";
  std::string format = "jsonl";
};

// Encoded value rendered for mismatch reports; falls back to a marker when
// the honest product would be astronomically large.
std::string bounded_encode_string(const Natural& m, const Natural& base,
                                  const EncodingVariant& variant) {
  RadixRep rep = to_radix(m, base);
  double bits = 0;
  const size_t n = rep.digits.size();
  for (size_t pos = 1; pos <= n; ++pos) {
    const Natural& d = rep.digits[variant.reversed ? pos - 1 : n - pos];
    Natural e = f2_value(variant.f2, d);
    if (!fits_u64(e)) return "(too large to materialize)";
    bits += (double)to_u64(e) *
            std::log2((double)f1_value_u64(variant.f1, pos) + 0.0001);
    if (bits > (double)(1 << 22)) return "(too large to materialize)";
  }
  return encode(rep, variant).get_str();
}

int cmd_verify(const VerifyArgs& args) {
  Natural value = parse_natural_expression(args.value);
  Natural base = parse_natural_expression(args.base);
  EncodingVariant variant = parse_variant(args.variant);
  if (value < 1 || base < 2)
    throw CLI::ValidationError("verify", "need value >= 1 and base >= 2");

  Emitter out{args.format};
  auto finding = check_fixed_point(value, base, variant);
  if (finding) {
    out.emit(finding_record(*finding, true));
    return kExitOk;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "witness";
  j["family"] = "verify";
  j["value"] = value.get_str();
  j["base"] = base.get_str();
  j["variant"] = variant_name(variant);
  j["verified"] = false;
  j["value_form"] = args.value;
  j["base_form"] = args.base;
  j["reason"] = "encoded value is " +
                bounded_encode_string(value, base, variant) +
                ", expected " + value.get_str();
  out.emit(j);
  return kExitVerifyFalse;
}

struct TableArgs {
  int table = 0;
  uint64_t max_base = 0;  // 0: per-table default
  uint64_t max_a = 15;
  uint64_t max_digits = 0;
  std::string limit;
  unsigned jobs = default_jobs();
  std::string format = "csv";
};

void table_csv_or_json(const TableArgs& args, int table,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows) {
  if (args.format == "csv") {
    std::string header;
    for (const auto& c : columns) {
      if (!header.empty()) header += ",";
      header += c;
    }
    std::cout << header << "\n";
    for (const auto& row : rows) {
      std::string line;
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) line += ",";
        line += row[i];
      }
      std::cout << line << "\n";
    }
  } else {
    for (const auto& row : rows) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["kind"] = "table_row";
      j["table"] = table;
      for (size_t i = 0; i < row.size(); ++i) j[columns[i]] = row[i];
      std::cout << j.dump() << "\n";
    }
  }
}

// Search-backed tables mark each row exhaustive or verified-membership.
void append_search_rows(uint64_t base, const SearchSpec& spec,
                        std::vector<std::vector<std::string>>* rows,
                        bool with_variant = false) {
  SearchOutcome outcome = search_fixed_points(spec);
  for (const Finding& f : outcome.findings) {
    std::vector<std::string> row;
    if (with_variant) row.push_back(variant_name(spec.variant));
    row.push_back(std::to_string(base));
    row.push_back(f.value.get_str());
    row.push_back(outcome.exhaustive ? "exhaustive" : "verified-membership");
    rows->push_back(std::move(row));
  }
}

int cmd_tables(const TableArgs& args) {
  std::vector<std::vector<std::string>> rows;
  switch (args.table) {
    case 1: {
      uint64_t max_base = args.max_base ? args.max_base : 10;
      Natural limit = args.limit.empty()
                          ? Natural(100000000)
                          : parse_natural_expression(args.limit);
      for (uint64_t b = 2; b <= max_base; ++b) {
        SearchSpec spec;
        spec.base = b;
        spec.variant = EncodingVariant::standard();
        spec.value_limit = limit;
        if (args.max_digits) spec.max_digits = args.max_digits;
        spec.parallelism = args.jobs;
        append_search_rows(b, spec, &rows);
      }
      table_csv_or_json(args, 1, {"base", "value", "completeness"}, rows);
      return kExitOk;
    }
    case 2: {
      for (uint64_t a = 3; a <= args.max_a; ++a) {
        Natural n = pow_natural(2, a) - a;
        std::string list;
        for (const Natural& k : divisors_above(n, a)) {
          if (!list.empty()) list += " ";
          list += k.get_str();
        }
        rows.push_back({std::to_string(a), list});
      }
      table_csv_or_json(args, 2, {"a", "divisors"}, rows);
      return kExitOk;
    }
    case 3: {
      uint64_t max_base = args.max_base ? args.max_base : 16;
      for (uint64_t b = 2; b <= max_base; ++b) {
        SearchSpec spec;
        spec.base = b;
        spec.variant = EncodingVariant::alpha();
        if (args.max_digits) spec.max_digits = args.max_digits;
        if (!args.limit.empty())
          spec.value_limit = parse_natural_expression(args.limit);
        spec.parallelism = args.jobs;
        append_search_rows(b, spec, &rows);
      }
      table_csv_or_json(args, 3, {"base", "value", "completeness"}, rows);
      return kExitOk;
    }
    case 4:
    case 6: {
      uint64_t max_base = args.max_base ? args.max_base : 16;
      for (uint64_t b = 2; b <= max_base; ++b) {
        uint64_t v = args.table == 4 ? compute_k_star(b) : compute_l_star(b);
        rows.push_back({std::to_string(b), std::to_string(v)});
      }
      table_csv_or_json(args, args.table,
                        {"base", args.table == 4 ? "k_star" : "l_star"}, rows);
      return kExitOk;
    }
    case 5: {
      uint64_t max_base = args.max_base ? args.max_base : 10;
      Natural limit = args.limit.empty()
                          ? Natural(100000000)
                          : parse_natural_expression(args.limit);
      for (uint64_t b = 2; b <= max_base; ++b) {
        SearchSpec spec;
        spec.base = b;
        spec.variant = EncodingVariant::reverse();
        spec.value_limit = limit;
        if (args.max_digits) spec.max_digits = args.max_digits;
        spec.parallelism = args.jobs;
        append_search_rows(b, spec, &rows);
      }
      table_csv_or_json(args, 5, {"base", "value", "completeness"}, rows);
      return kExitOk;
    }
    case 7: {
      uint64_t max_base = args.max_base ? args.max_base : 29;
      uint64_t cap = args.max_digits ? args.max_digits : 12;
      Natural limit = args.limit.empty()
                          ? Natural(1000000)
                          : parse_natural_expression(args.limit);
      for (bool reversed : {false, true}) {
        for (uint64_t b = 2; b <= max_base; ++b) {
          SearchSpec spec;
          spec.base = b;
          spec.variant = EncodingVariant::generalized(
              IndexMap::Identity, DigitMap::Identity, reversed);
          spec.max_digits = cap;
          spec.value_limit = limit;
          spec.parallelism = args.jobs;
          SearchOutcome outcome = search_fixed_points(spec);
          for (const Finding& f : outcome.findings) {
            if (f.value == 1) continue;  // omitted from the printed table
            rows.push_back({variant_name(spec.variant), std::to_string(b),
                            f.value.get_str(),
                            outcome.exhaustive ? "exhaustive"
                                               : "verified-membership"});
          }
        }
      }
      table_csv_or_json(args, 7, {"variant", "base", "value", "completeness"},
                        rows);
      return kExitOk;
    }
    default:
      throw CLI::ValidationError("--table", "expected 1..7");
  }
}

struct BoundsArgs {
  std::string base;
  bool curve = false;
  uint64_t max_base = 1000;
  std::string format = "jsonl";
};

int cmd_bounds(const BoundsArgs& args) {
  if (args.curve) {
    // (b, k*) data behind the k* growth plot.
    std::cout << "base,k_star\n";
    for (uint64_t b = 2; b <= args.max_base; ++b)
      std::cout << b << "," << compute_k_star(b) << "\n";
    return kExitOk;
  }
  if (args.base.empty())
    throw CLI::ValidationError("bounds", "need --base or --curve");
  Natural base = parse_natural_expression(args.base);
  if (bit_size(base) > 32)
    throw CapacityError("bounds: base too large for exact k*/l* scans");
  BoundReport report;
  report.base = base;
  report.k_star = compute_k_star(base);
  report.l_star = compute_l_star(base);
  report.squarefree_cap = zeroless_digit_cap(base);
  Json j = bound_record(report, 0, false);
  j.erase("applied_digit_cap");
  j.erase("cap_source");
  j.erase("finding_count");
  j.erase("exhaustive");
  Emitter out{args.format};
  out.emit(j);
  return kExitOk;
}

struct FamilyArgs {
  std::string id;
  uint64_t a = 0, t = 0, n = 0, m = 0;
  bool m_set = false;
  uint64_t c_max = 9, r_max = 66;
  std::string format = "jsonl";
};

int cmd_family(const FamilyArgs& args) {
  Emitter out{args.format};
  std::vector<FamilyWitness> witnesses;
  if (args.id == "1024-3c") {
    witnesses = family_1024_3c(args.c_max);
  } else if (args.id == "pow2") {
    witnesses = family_pow2(args.a);
  } else if (args.id == "pow2-count") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "witness";
    j["family"] = "pow2-count";
    j["params"] = Json{{"a", std::to_string(args.a)}};
    j["count"] = family_pow2_count(args.a);
    out.emit(j);
    return kExitOk;
  } else if (args.id == "tower") {
    witnesses = family_tower(args.t).witnesses;
  } else if (args.id == "thm23") {
    witnesses = family_thm23(args.n, args.m_set ? args.m : args.n);
  } else if (args.id == "thm23-reverse") {
    witnesses = family_thm23_reverse(args.n, args.m_set ? args.m : args.n);
  } else if (args.id == "alpha") {
    witnesses.push_back(family_alpha(args.t));
  } else if (args.id == "rmn") {
    witnesses = family_rmn(args.r_max);
  } else {
    throw CLI::ValidationError(
        "--id",
        "expected 1024-3c|pow2|pow2-count|tower|thm23|thm23-reverse|alpha|rmn");
  }
  bool all_verified = true;
  for (const FamilyWitness& w : witnesses) {
    out.emit(witness_record(w));
    if (!w.skipped && !w.verified) all_verified = false;
  }
  // A generator emitting an unverified witness is a defect, not a result.
  return all_verified ? kExitOk : kExitVerifyFalse;
}

struct ZerosArgs {
  std::string base;
  uint64_t digits = 0;
  std::string format = "jsonl";
};

int cmd_zeros(const ZerosArgs& args) {
  Natural base = parse_natural_expression(args.base);
  Emitter out{args.format};
  out.emit(zero_bound_record(base, args.digits,
                             zero_lower_bound(base, args.digits)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fixed points of Godel-like digit encodings: search, verification, "
      "bounds, and constructive families"};
  app.require_subcommand(1);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "enumerate fixed points");
  search->add_option("--base", search_args.base, "number base (expression ok)")
      ->required();
  search->add_option("--variant", search_args.variant,
                     "standard|alpha|reverse|gmn|grmn");
  search->add_flag("--zeroless", search_args.zeroless,
                   "restrict to all-nonzero digits");
  search->add_option("--max-digits", search_args.max_digits, "digit cap");
  search->add_option("--limit", search_args.limit, "value cap (expression ok)");
  search->add_option("--jobs", search_args.jobs, "worker threads");
  search->add_option("--checkpoint", search_args.checkpoint_path,
                     "checkpoint file to write/resume");
  search->add_option("--format", search_args.format, "jsonl|csv");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check one candidate");
  verify->add_option("--value", verify_args.value, "candidate (expression ok)")
      ->required();
  verify->add_option("--base", verify_args.base, "number base (expression ok)")
      ->required();
  verify->add_option("--variant", verify_args.variant,
                     "standard|alpha|reverse|gmn|grmn");
  verify->add_option("--format", verify_args.format, "jsonl|csv");

  TableArgs table_args;
  auto* tables = app.add_subcommand("tables", "regenerate survey tables");
  tables->add_option("--table", table_args.table, "table number 1..7")
      ->required();
  tables->add_option("--max-base", table_args.max_base, "largest base");
  tables->add_option("--max-a", table_args.max_a, "largest a (table 2)");
  tables->add_option("--max-digits", table_args.max_digits, "digit cap");
  tables->add_option("--limit", table_args.limit, "value cap");
  tables->add_option("--jobs", table_args.jobs, "worker threads");
  tables->add_option("--format", table_args.format, "csv|jsonl");

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "digit-count bounds for a base");
  bounds->add_option("--base", bounds_args.base, "number base");
  bounds->add_flag("--curve", bounds_args.curve, "emit base,k_star CSV");
  bounds->add_option("--max-base", bounds_args.max_base,
                     "largest base for --curve");
  bounds->add_option("--format", bounds_args.format, "jsonl|csv");

  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "run a constructive family");
  family->add_option("--id", family_args.id, "family name")->required();
  family->add_option("--a", family_args.a, "exponent parameter a");
  family->add_option("--t", family_args.t, "tower/alpha parameter t");
  family->add_option("--n", family_args.n, "parameter n");
  family->add_option("--m", family_args.m, "parameter m (defaults to n)")
      ->each([&](const std::string&) { family_args.m_set = true; });
  family->add_option("--c-max", family_args.c_max, "largest c (1024-3c)");
  family->add_option("--r-max", family_args.r_max, "largest r (rmn)");
  family->add_option("--format", family_args.format, "jsonl|csv");

  ZerosArgs zeros_args;
  auto* zeros = app.add_subcommand("zeros", "zero-digit lower bound");
  zeros->add_option("--base", zeros_args.base, "number base")->required();
  zeros->add_option("--digits", zeros_args.digits, "digit count u")
      ->required();
  zeros->add_option("--format", zeros_args.format, "jsonl|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*search) return cmd_search(search_args);
    if (*verify) return cmd_verify(verify_args);
    if (*tables) return cmd_tables(table_args);
    if (*bounds) return cmd_bounds(bounds_args);
    if (*family) return cmd_family(family_args);
    if (*zeros) return cmd_zeros(zeros_args);
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckpoint;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SearchConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
