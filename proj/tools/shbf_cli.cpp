// Command-line front end: build, query, bench, ingest, serialize.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shbf/bench/csv.hpp"
#include "shbf/bench/experiments.hpp"
#include "shbf/bench/trace.hpp"
#include "shbf/serialization.hpp"

namespace {

using namespace shbf;
using namespace shbf::bench;

constexpr int kUsageError = 2;

struct Options {
  std::string filter = "shbf-m";
  std::uint64_t m = 0;
  unsigned k = 8;
  unsigned wbar = 0;  // 0 = variant default
  unsigned c = 57;
  unsigned t = 1;
  unsigned counter_bits = 0;  // 0 = variant default
  std::uint64_t seed = kDefaultSeed;
  std::string trace;
  std::string trace2;
  std::string format = "hexline";
  std::string out;
  std::string in;
  std::uint64_t synthetic = 0;
  std::string experiment = "fpr";
  std::uint64_t n = 0;
  std::uint64_t queries = 0;
};

/// Parse / validation failures; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char ch : bytes) {
    out += kDigits[ch >> 4];
    out += kDigits[ch & 15];
  }
  return out;
}

TraceCorpus load_corpus(const std::string& path, const Options& o, KeyStream stream) {
  if (!path.empty()) return ingest(path, parse_trace_format(o.format));
  if (o.synthetic > 0) return synthetic_corpus(o.seed, o.synthetic, stream);
  throw UsageError("a --trace file or --synthetic count is required");
}

std::uint64_t pick_m(const Options& o, std::size_t distinct) {
  if (o.m > 0) return o.m;
  // Default: k / ln 2 bits per distinct element, i.e. optimal load.
  return std::max<std::uint64_t>(64, static_cast<std::uint64_t>(
                                          static_cast<double>(distinct) * o.k / std::numbers::ln2));
}

unsigned bits_or(const Options& o, unsigned fallback) {
  return o.counter_bits > 0 ? o.counter_bits : fallback;
}

AnyFilter build_filter(const Options& o, const TraceCorpus& corpus, const TraceCorpus* second) {
  const auto& records = corpus.records;
  const auto distinct = corpus.distinct();
  const std::uint64_t m = pick_m(o, distinct.size());
  const std::string& f = o.filter;

  if (f == "shbf-m") {
    ShbfM x(ShbfMConfig{m, o.k, o.wbar, 64, o.seed});
    for (const auto& e : distinct) x.insert(e);
    return x;
  }
  if (f == "cshbf-m") {
    CShbfM x(ShbfMConfig{m, o.k, o.wbar, 64, o.seed}, bits_or(o, 4));
    for (const auto& e : records) x.insert(e);
    return x;
  }
  if (f == "gen-shbf-m") {
    GenShbfM x(GenShbfMConfig{m, o.k, o.t, o.wbar, 64, o.seed});
    for (const auto& e : distinct) x.insert(e);
    return x;
  }
  if (f == "shbf-a") {
    if (second == nullptr) throw UsageError("shbf-a needs a second set (--trace2 or --synthetic)");
    const auto s2 = second->distinct();
    return ShbfA::build(distinct, s2, ShbfAConfig{o.m > 0 ? o.m : pick_m(o, distinct.size() + s2.size()),
                                                  o.k, o.wbar, 64, o.seed});
  }
  if (f == "shbf-x") {
    return ShbfX::build(records, ShbfXConfig{m, o.k, o.c, 64, bits_or(o, 4), o.seed});
  }
  if (f == "cm" || f == "scm") {
    const std::uint64_t width = o.m > 0 ? o.m : std::max<std::uint64_t>(16, distinct.size());
    if (f == "cm") {
      CmSketch x(CmConfig{o.k, width, bits_or(o, 6), 64, o.seed});
      for (const auto& e : records) x.insert(e);
      return x;
    }
    const unsigned bits = bits_or(o, 6);
    ScmSketch x(ScmConfig{o.k, width, o.wbar > 0 ? o.wbar : 57 / bits, bits, 64, o.seed});
    for (const auto& e : records) x.insert(e);
    return x;
  }
  if (f == "bf") {
    StandardBf x(BfConfig{m, o.k, 64, o.seed});
    for (const auto& e : distinct) x.insert(e);
    return x;
  }
  if (f == "cbf") {
    CountingBf x(BfConfig{m, o.k, 64, o.seed}, bits_or(o, 4));
    for (const auto& e : records) x.insert(e);
    return x;
  }
  if (f == "ibf") {
    if (second == nullptr) throw UsageError("ibf needs a second set (--trace2 or --synthetic)");
    const auto s2 = second->distinct();
    return Ibf::build(distinct, s2, BfConfig{pick_m(o, distinct.size()), o.k, 64, o.seed},
                      BfConfig{pick_m(o, s2.size()), o.k, 64, mix64(o.seed)});
  }
  if (f == "spectral") {
    return SpectralBf::build(records, SpectralConfig{m, o.k, bits_or(o, 6), 64, o.seed});
  }
  throw UsageError("unknown filter '" + f + "'");
}

std::string companion_path(const std::string& path) { return path + ".tables"; }

void write_filter(const AnyFilter& filter, const std::string& path) {
  save_file(path, filter);
  if (const auto* a = std::get_if<ShbfA>(&filter)) {
    std::ofstream out(companion_path(path), std::ios::binary | std::ios::trunc);
    save_sets(out, *a);
  } else if (const auto* x = std::get_if<ShbfX>(&filter)) {
    std::ofstream out(companion_path(path), std::ios::binary | std::ios::trunc);
    save_counts(out, *x);
  }
}

AnyFilter read_filter(const std::string& path) {
  AnyFilter filter = load_file(path);
  std::ifstream companion(companion_path(path), std::ios::binary);
  if (companion) {
    if (auto* a = std::get_if<ShbfA>(&filter)) load_sets(companion, *a);
    if (auto* x = std::get_if<ShbfX>(&filter)) load_counts(companion, *x);
  }
  return filter;
}

std::string answer(const AnyFilter& filter, Element e) {
  return std::visit(
      [e](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ShbfA>) {
          return std::string(to_string(f.query(e).outcome));
        } else if constexpr (std::is_same_v<F, Ibf>) {
          const auto a = f.query(e);
          return std::string(a.in_s1 ? "1" : "0") + (a.in_s2 ? "1" : "0");
        } else if constexpr (std::is_same_v<F, ShbfX> || std::is_same_v<F, SpectralBf>) {
          return std::to_string(f.query(e));
        } else if constexpr (std::is_same_v<F, CmSketch> || std::is_same_v<F, ScmSketch>) {
          return std::to_string(f.estimate(e));
        } else {
          return f.contains(e) ? "1" : "0";
        }
      },
      filter);
}

void emit(const Table& table, const std::string& out) {
  if (out.empty() || out == "-") {
    table.write_csv(std::cout);
    return;
  }
  std::ofstream file(out, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + out);
  table.write_csv(file);
}

int cmd_build(const Options& o) {
  if (o.out.empty()) throw UsageError("build requires --out");
  const auto first = load_corpus(o.trace, o, KeyStream::kMembers);
  std::optional<TraceCorpus> second;
  if (!o.trace2.empty()) {
    second = ingest(o.trace2, parse_trace_format(o.format));
  } else if (o.synthetic > 0 && (o.filter == "shbf-a" || o.filter == "ibf")) {
    second = synthetic_corpus(o.seed, o.synthetic, KeyStream::kSecondSet);
  }
  const AnyFilter filter = build_filter(o, first, second ? &*second : nullptr);
  write_filter(filter, o.out);
  std::cerr << "built " << o.filter << " from " << first.size() << " records ("
            << first.distinct_count << " distinct) -> " << o.out << "\n";
  return 0;
}

int cmd_query(const Options& o) {
  if (o.in.empty()) throw UsageError("query requires --in");
  const AnyFilter filter = read_filter(o.in);
  const auto probes = load_corpus(o.trace, o, KeyStream::kProbes);
  Table table({"key", "answer"});
  for (const auto& e : probes.records) table.add_row({hex(e), answer(filter, e)});
  emit(table, o.out);
  return 0;
}

int cmd_bench(const Options& o) {
  std::vector<std::string> members;
  if (!o.trace.empty()) members = ingest(o.trace, parse_trace_format(o.format)).distinct();

  if (o.experiment == "fpr") {
    FprSpec spec;
    spec.filter = o.filter == "bf" || o.filter == "gen-shbf-m" ? o.filter : "shbf-m";
    if (o.m > 0) spec.m = o.m;
    spec.k = o.k;
    spec.max_offset = o.wbar;
    spec.t = o.t;
    spec.seed = o.seed;
    if (o.queries > 0) spec.queries = o.queries;
    spec.members = std::move(members);
    const auto rows = run_fpr_membership(spec);
    emit(fpr_table(rows), o.out);
    std::cerr << "mean relative error " << mean_relative_error(rows) << "\n";
    return 0;
  }
  if (o.experiment == "access" || o.experiment == "throughput") {
    AccessSpec spec;
    if (o.n > 0) spec.n = o.n;
    spec.k = o.k;
    spec.max_offset = o.wbar;
    spec.seed = o.seed;
    if (o.m > 0) spec.bits_per_element = static_cast<double>(o.m) / static_cast<double>(spec.n);
    spec.members = std::move(members);
    emit(access_table(run_access_and_throughput(spec)), o.out);
    return 0;
  }
  if (o.experiment == "association") {
    AssociationSpec spec;
    if (o.n > 0) spec.set_size = o.n;
    spec.ks = {o.k};
    spec.max_offset = o.wbar;
    spec.seed = o.seed;
    emit(association_table(run_association_clear(spec)), o.out);
    return 0;
  }
  if (o.experiment == "multiplicity") {
    MultiplicitySpec spec;
    if (o.n > 0) spec.n = o.n;
    spec.max_count = o.c;
    spec.ks = {o.k};
    spec.seed = o.seed;
    if (o.queries > 0) spec.queries = o.queries;
    emit(multiplicity_table(run_multiplicity_cr(spec)), o.out);
    return 0;
  }
  throw UsageError("unknown experiment '" + o.experiment + "'");
}

int cmd_ingest(const Options& o) {
  const auto format = parse_trace_format(o.format);
  const bool generated = o.trace.empty();
  const auto corpus = load_corpus(o.trace, o, KeyStream::kMembers);
  std::cout << "records," << corpus.size() << "\ndistinct," << corpus.distinct_count << "\n";
  if (!o.out.empty()) {
    // Synthetic keys are written in --format; a trace is re-encoded in the other format.
    const auto target = generated ? format
                        : format == TraceFormat::kRaw13 ? TraceFormat::kHexLine
                                                        : TraceFormat::kRaw13;
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + o.out);
    write_trace(out, corpus, target);
  }
  return 0;
}

int cmd_serialize(const Options& o) {
  if (o.in.empty()) throw UsageError("serialize requires --in");
  Header h;
  {
    std::ifstream in(o.in, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + o.in);
    h = read_header(in);
  }
  const AnyFilter filter = read_filter(o.in);
  std::cout << "variant," << to_string(h.variant) << "\nversion," << kFormatVersion << "\nm," << h.m
            << "\nk," << h.k << "\nwbar," << h.max_offset << "\nextra," << h.extra << "\n";
  if (!o.out.empty()) write_filter(filter, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifting Bloom filter toolkit"};
  app.set_help_all_flag("--help-all", "Help for all subcommands");
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> filter_names = {"shbf-m", "cshbf-m", "gen-shbf-m", "shbf-a",
                                                 "shbf-x", "cm",      "scm",        "bf",
                                                 "cbf",    "ibf",     "spectral"};

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--filter", o.filter, "Filter variant")->check(CLI::IsMember(filter_names));
    sub->add_option("--m", o.m, "Bits (counters / sketch width for cm, scm, spectral)");
    sub->add_option("--k", o.k, "Hash functions (sketch depth for cm, scm)")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--wbar", o.wbar, "Offset bound")->check(CLI::Range(2u, 57u));
    sub->add_option("--c", o.c, "Largest multiplicity for shbf-x")->check(CLI::Range(1u, 4096u));
    sub->add_option("--t", o.t, "Shifted bits per group for gen-shbf-m")->check(CLI::Range(1u, 56u));
    sub->add_option("--counter-bits", o.counter_bits, "Counter width")->check(CLI::Range(1u, 32u));
    sub->add_option("--seed", o.seed, "Hash seed");
    sub->add_option("--trace", o.trace, "Trace file");
    sub->add_option("--format", o.format, "Trace format")
        ->check(CLI::IsMember({"raw13", "hexline"}));
    sub->add_option("--out", o.out, "Output path");
    sub->add_option("--synthetic", o.synthetic, "Use this many synthetic keys instead of a trace");
  };

  auto* build = app.add_subcommand("build", "Build a filter from a trace and save it");
  common(build);
  build->add_option("--trace2", o.trace2, "Second set for shbf-a / ibf");

  auto* query = app.add_subcommand("query", "Query a saved filter with trace records");
  common(query);
  query->add_option("--in", o.in, "Saved filter")->required();

  auto* bench = app.add_subcommand("bench", "Run an experiment and write CSV");
  common(bench);
  bench->add_option("--experiment", o.experiment, "Experiment")
      ->check(CLI::IsMember({"fpr", "access", "throughput", "association", "multiplicity"}));
  bench->add_option("--n", o.n, "Elements (set size for association)");
  bench->add_option("--queries", o.queries, "Probe count");

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate or generate a trace and report its size");
  common(ingest_cmd);

  auto* serialize = app.add_subcommand("serialize", "Inspect a saved filter and optionally rewrite it");
  common(serialize);
  serialize->add_option("--in", o.in, "Saved filter")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  // Membership and association filters default to the largest offset bound
  // a 64-bit word allows (64 - 7).
  const bool sketch = o.filter == "scm";
  if (o.wbar == 0 && !sketch) o.wbar = 57;

  try {
    if (*build) return cmd_build(o);
    if (*query) return cmd_query(o);
    if (*bench) return cmd_bench(o);
    if (*ingest_cmd) return cmd_ingest(o);
    if (*serialize) return cmd_serialize(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
