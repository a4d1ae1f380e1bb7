#include "selias/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "selias/binomial.hpp"
#include "selias/elias_block.hpp"
#include "selias/errors.hpp"
#include "selias/protocol.hpp"
#include "selias/schur_sim.hpp"
#include "selias/streaming.hpp"
#include "selias/verify.hpp"
#include "selias/young.hpp"

namespace selias::cli {

// ---------------------------------------------------------------------------
// Report

Report::Report() { fields_.emplace_back("schema", kReportSchema); }

void Report::set(const std::string& key, const std::string& value) {
  if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
    throw std::invalid_argument("report keys may not contain '=' or newlines");
  }
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  fields_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) {
  std::ostringstream os;
  os << std::setprecision(15) << value;
  set(key, os.str());
}

std::optional<std::string> Report::get(const std::string& key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void Report::write(std::ostream& os) const {
  for (const auto& [k, v] : fields_) os << k << '=' << v << '\n';
}

std::string Report::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Report Report::parse(std::istream& is) {
  Report r;
  r.fields_.clear();
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed report line: " + line);
    r.fields_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  if (r.fields_.empty() || r.fields_.front() != std::pair<std::string, std::string>{"schema", kReportSchema}) {
    throw std::runtime_error("report does not start with schema=" + std::string(kReportSchema));
  }
  return r;
}

// ---------------------------------------------------------------------------
// extract

namespace {

class ByteSink {
 public:
  explicit ByteSink(std::ostream& out) : out_(out) {}

  void put(Bit b) {
    byte_ = static_cast<std::uint8_t>((byte_ << 1) | b);
    if (++fill_ == 8) flush_byte();
  }

  // Returns the number of pad bits written.
  int finish() {
    if (fill_ == 0) return 0;
    const int pad = 8 - fill_;
    byte_ = static_cast<std::uint8_t>(byte_ << pad);
    flush_byte();
    return pad;
  }

 private:
  void flush_byte() {
    out_.put(static_cast<char>(byte_));
    byte_ = 0;
    fill_ = 0;
  }

  std::ostream& out_;
  std::uint8_t byte_ = 0;
  int fill_ = 0;
};

class ByteSource {
 public:
  explicit ByteSource(std::istream& in) : in_(in) {}

  bool next(Bit& b) {
    if (left_ == 0) {
      char c;
      if (!in_.get(c)) {
        if (in_.bad()) throw std::runtime_error("input read failed");
        return false;
      }
      byte_ = static_cast<std::uint8_t>(c);
      left_ = 8;
    }
    --left_;
    b = static_cast<Bit>((byte_ >> left_) & 1U);
    return true;
  }

 private:
  std::istream& in_;
  std::uint8_t byte_ = 0;
  int left_ = 0;
};

struct DemandRun {
  PausableState machine;
  TapeLedger ledger;
  std::int64_t emitted = 0;
  std::int64_t segments = 1;
  bool met = false;
};

DemandRun run_on_demand(ByteSource& src, ByteSink& sink, std::int64_t demand, int segment_len) {
  DemandRun run;
  BinomialTable table = BinomialTable::build(std::min(segment_len, 64));
  bool input_done = false;
  auto next = [&](Bit& b) {
    if (run.machine.node.n == segment_len) return false;  // segment boundary
    if (!src.next(b)) {
      input_done = true;
      return false;
    }
    if (run.machine.node.n + 1 > table.max_n()) {
      table = table.extended(std::min(segment_len, 2 * table.max_n()),
                             std::max(segment_len, BinomialTable::kDefaultCap));
    }
    return true;
  };
  while (run.emitted < demand) {
    const PullResult r = protocol_pull(table, run.machine, next);
    if (r.status == PullStatus::kEmitted) {
      if (r.consumed > 0) {
        run.ledger.purity_len += r.consumed - 1;
        ++run.ledger.out_len;
      } else {
        if (run.ledger.purity_len == 0) throw std::logic_error("purity tape underflow");
        --run.ledger.purity_len;
        ++run.ledger.out_len;
      }
      sink.put(r.bit);
      ++run.emitted;
      continue;
    }
    run.ledger.purity_len += r.consumed;
    if (input_done) break;
    run.machine = PausableState{};
    ++run.segments;
  }
  run.met = run.emitted == demand;
  return run;
}

}  // namespace

Report cmd_extract(std::istream& in, std::ostream& out, const ExtractOptions& opts) {
  if (opts.segment_len < 1) throw DomainError("segment length must be positive");
  if (opts.demand && *opts.demand < 0) throw DomainError("demand must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  ByteSource src(in);
  ByteSink sink(out);
  Report rep;
  rep.set("command", "extract");

  ExtractorState final_state;
  TapeLedger ledger;
  std::int64_t segments = 1;
  if (opts.demand) {
    const DemandRun run = run_on_demand(src, sink, *opts.demand, opts.segment_len);
    final_state = run.machine.node;
    ledger = run.ledger;
    segments = run.segments;
    rep.set("mode", "on-demand");
    rep.set("demand", *opts.demand);
    rep.set("demand_met", run.met);
  } else {
    SegmentedExtractor ex(opts.segment_len);
    BitVec buf;
    Bit b = 0;
    while (src.next(b)) {
      buf.clear();
      ex.feed(b, buf);
      for (Bit x : buf) sink.put(x);
    }
    final_state = ex.state();
    ledger = ex.ledger();
    segments = ex.segments();
    rep.set("mode", "streaming");
  }
  const int pad = sink.finish();
  out.flush();
  if (!out) throw std::runtime_error("output write failed");

  rep.set("bits_read", ledger.out_len + ledger.purity_len);
  rep.set("bits_emitted", ledger.out_len);
  rep.set("purity_len", ledger.purity_len);
  rep.set("n", static_cast<std::int64_t>(final_state.n));
  rep.set("t", static_cast<std::int64_t>(final_state.t));
  rep.set("l", static_cast<std::int64_t>(final_state.l));
  rep.set("segment_len", opts.segment_len);
  rep.set("segments", segments);
  rep.set("pad_bits", pad);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  rep.set("elapsed_ms", elapsed.count());
  return rep;
}

// ---------------------------------------------------------------------------
// verify

namespace {

bool suite_equivalence(int max_n, Report& rep) {
  const int top = std::min(max_n, verify::kEquivalenceCap);
  std::uint64_t nodes = 0;
  std::uint64_t steps = 0;
  std::size_t violations = 0;
  std::optional<verify::EquivalenceReport> prev;
  for (int n = 0; n <= top; ++n) {
    verify::EquivalenceReport r = verify::exhaustive_equivalence(n);
    nodes += r.nodes.size();
    steps += r.steps_checked;
    violations += r.violations.size();
    if (prev) violations += verify::check_population_recursion(*prev, r).size();
    prev = std::move(r);
  }
  rep.set("equivalence.max_n", top);
  rep.set("equivalence.nodes", static_cast<std::int64_t>(nodes));
  rep.set("equivalence.steps_checked", static_cast<std::int64_t>(steps));
  rep.set("equivalence.violations", static_cast<std::int64_t>(violations));
  rep.set("equivalence.pass", violations == 0);
  return violations == 0;
}

bool suite_balanced(int max_n, Report& rep) {
  const int top = std::min(max_n, verify::kBalanceCap);
  std::uint64_t groups = 0;
  std::size_t violations = 0;
  for (int n = 0; n <= top; ++n) {
    const verify::BalanceReport r = verify::balanced_paths(n);
    groups += r.final_groups + r.emission_groups;
    violations += r.violations.size();
  }
  rep.set("balanced.max_n", top);
  rep.set("balanced.groups", static_cast<std::int64_t>(groups));
  rep.set("balanced.violations", static_cast<std::int64_t>(violations));
  rep.set("balanced.pass", violations == 0);
  return violations == 0;
}

std::vector<SourceModel> decile_models() {
  std::vector<SourceModel> models;
  for (int k = 1; k <= 9; ++k) models.push_back(SourceModel::ratio(k, 10));
  return models;
}

bool suite_yield(int max_n, Report& rep) {
  const int top = std::min(max_n, 64);
  const verify::YieldSweepReport sweep = verify::yield_bound_sweep(top, decile_models());
  double min_margin = INFINITY;
  for (const auto& row : sweep.rows) min_margin = std::min(min_margin, row.margin());
  const int identity_top = std::min(top, 16);
  const SourceModel model = SourceModel::ratio(3, 10);
  const BinomialTable table = BinomialTable::build(identity_top);
  bool identity = true;
  for (int n = 0; n <= identity_top; ++n) {
    identity = identity && verify::enumerated_yield(n, model) == expected_yield(table, n, model);
  }
  rep.set("yield.max_n", top);
  rep.set("yield.min_margin_bits", min_margin);
  rep.set("yield.bound_violations", static_cast<std::int64_t>(sweep.violations.size()));
  rep.set("yield.identity_max_n", identity_top);
  rep.set("yield.identity_exact", identity);
  const bool ok = sweep.ok() && identity;
  rep.set("yield.pass", ok);
  return ok;
}

bool suite_entropy(int max_n, Report& rep) {
  const BinomialTable table = BinomialTable::build(max_n);
  double worst = 0.0;
  for (int n = 0; n <= max_n; ++n) {
    for (int t = 0; t <= n; ++t) worst = std::max(worst, conditional_bin_entropy(table, n, t));
  }
  rep.set("entropy.max_n", max_n);
  rep.set("entropy.max_bits", worst);
  const bool ok = worst + 1e-12 < 2.0;
  rep.set("entropy.pass", ok);
  return ok;
}

bool suite_young(int max_n, Report& rep) {
  const YoungTable table = YoungTable::build(max_n);
  std::int64_t nodes = 0;
  bool ok = true;
  for (int n = 0; n <= max_n; ++n) {
    for (int t = 0; 2 * t <= n; ++t) {
      const BigInt d = young_dim(n, t);
      ok = ok && d == hook_dim_oracle(n, t) && d == path_count(n, t) && d == table.dim(n, t);
      ++nodes;
    }
  }
  rep.set("young.max_n", max_n);
  rep.set("young.nodes", nodes);
  rep.set("young.pass", ok);
  return ok;
}

bool suite_vonneumann(Report& rep) {
  const BinomialTable table = BinomialTable::build(2);
  bool ok = true;
  for (int s = 0; s < 4; ++s) {
    const BitVec pair{static_cast<Bit>(s >> 1), static_cast<Bit>(s & 1)};
    ok = ok && run(table, pair).output == von_neumann(pair);
  }
  const SourceModel model = SourceModel::ratio(3, 10);
  const Rational per_symbol = expected_yield(table, 2, model) / 2;
  ok = ok && per_symbol == model.p0() * model.p1();
  rep.set("vonneumann.rate_p0_3", to_double(per_symbol));
  rep.set("vonneumann.pass", ok);
  return ok;
}

void suite_stats(const VerifyOptions& opts, Report& rep) {
  const verify::StatReport s = verify::statistical_battery(opts.p0, opts.samples, opts.seed);
  rep.set("stats.p0", opts.p0);
  rep.set("stats.seed", static_cast<std::int64_t>(opts.seed));
  rep.set("stats.samples", s.samples);
  rep.set("stats.output_bits", s.output_bits);
  rep.set("stats.rate", s.rate);
  rep.set("stats.source_entropy", s.source_entropy);
  rep.set("stats.monobit_z", s.monobit_z);
  rep.set("stats.serial_z", s.serial_z);
  rep.set("stats.max_position_z", s.max_position_z);
}

}  // namespace

int cmd_verify(const VerifyOptions& opts, Report& rep) {
  if (opts.max_n < 0) throw DomainError("--max-n must be nonnegative");
  rep.set("command", "verify");
  rep.set("max_n", opts.max_n);
  bool ok = true;
  for (const std::string& suite : opts.suites) {
    if (suite == "equivalence") {
      ok = suite_equivalence(opts.max_n, rep) && ok;
    } else if (suite == "balanced") {
      ok = suite_balanced(opts.max_n, rep) && ok;
    } else if (suite == "yield") {
      ok = suite_yield(opts.max_n, rep) && ok;
    } else if (suite == "entropy") {
      ok = suite_entropy(opts.max_n, rep) && ok;
    } else if (suite == "young") {
      ok = suite_young(opts.max_n, rep) && ok;
    } else if (suite == "vonneumann") {
      ok = suite_vonneumann(rep) && ok;
    } else if (suite == "stats") {
      suite_stats(opts, rep);  // advisory
    } else {
      throw DomainError("unknown suite '" + suite + "'");
    }
  }
  rep.set("pass", ok);
  return ok ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// simulate

namespace {

constexpr double kPerfectTolerance = 1e-9;

bool report_pairs(const sim::JointState& state, Report& rep) {
  bool ok = true;
  const int pairs = sim::max_tape_length(state);
  rep.set("norm", state.norm_squared());
  rep.set("pairs", pairs);
  for (int k = 0; k < pairs; ++k) {
    const sim::PairAnalysis a = sim::analyze_pair(state, k);
    const std::string idx = "[" + std::to_string(k) + "]";
    rep.set("fidelity" + idx, a.fidelity);
    rep.set("support" + idx, a.support);
    rep.set("memory_trace_distance" + idx, a.memory_trace_distance);
    ok = ok && std::abs(a.fidelity - 1.0) <= kPerfectTolerance;
  }
  const auto t_dist = sim::alice_t_distribution(state);
  const auto l_dist = sim::alice_l_distribution(state);
  double mean_l = 0.0;
  for (const auto& [l, p] : l_dist) mean_l += l * p;
  rep.set("expected_pairs", mean_l);
  rep.set("entropy_t_bits", sim::shannon_entropy(t_dist));
  rep.set("entropy_l_bits", sim::shannon_entropy(l_dist));
  return ok;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opts, Report& rep) {
  rep.set("command", "simulate");
  rep.set("mode", opts.mode);
  bool ok = true;
  if (opts.mode == "huffman") {
    const sim::HuffmanResult h = sim::huffman_counterexample();
    rep.set("fidelity", h.fidelity);
    rep.set("fidelity[0]", h.fidelity);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        rep.set("rho[" + std::to_string(i) + "][" + std::to_string(j) + "]", h.rho[i][j].real());
      }
    }
    return kPass;
  }
  rep.set("n", opts.n);
  rep.set("p0", opts.p0);
  if (opts.mode == "known") {
    ok = report_pairs(sim::simulate_known_basis(opts.p0, opts.n), rep);
  } else if (opts.mode == "universal") {
    rep.set("theta", opts.theta);
    ok = report_pairs(sim::simulate_universal(sim::TwoQubitState::schmidt(opts.p0, opts.theta), opts.n), rep);
  } else if (opts.mode == "vonneumann") {
    const sim::JointState js = sim::simulate_von_neumann(opts.p0, opts.n);
    const double q = 1.0 - 2.0 * opts.p0 * (1.0 - opts.p0);
    rep.set("nonhalting_amplitude", sim::nonhalting_amplitude(js));
    rep.set("nonhalting_expected", std::pow(q, opts.n / 2.0));
    ok = report_pairs(js, rep);
  } else {
    throw DomainError("unknown simulation mode '" + opts.mode + "'");
  }
  rep.set("pass", ok);
  return ok ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// main

namespace {

void emit_report(const Report& rep, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    rep.write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open report file " + path);
  rep.write(f);
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"Streaming Elias randomness extraction and entanglement concentration"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string report_path;
  std::int64_t demand = -1;
  int segment = 1024;
  auto* extract = app.add_subcommand("extract", "Extract unbiased bits from a byte stream");
  extract->add_option("--input", input, "Input file (default stdin)");
  extract->add_option("--output", output, "Output file (default stdout)");
  extract->add_option("--demand", demand, "On-demand mode: stop after this many output bits")->check(CLI::NonNegativeNumber);
  extract->add_option("--max-n", segment, "Restart the stream after this many input bits")->check(CLI::PositiveNumber);
  extract->add_option("--report", report_path, "Report file (default stderr)");

  VerifyOptions vopts;
  std::string suites = "equivalence,balanced,yield";
  auto* verify_cmd = app.add_subcommand("verify", "Run exhaustive and statistical verification suites");
  verify_cmd->add_option("--max-n", vopts.max_n, "Largest input length to check")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--suites", suites,
                         "Comma list: equivalence,balanced,yield,entropy,young,vonneumann,stats");
  verify_cmd->add_option("--p", vopts.p0, "Pr(0) for the stats suite")->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--seed", vopts.seed, "Seed for the stats suite");
  verify_cmd->add_option("--report", report_path, "Report file (default stdout)");

  SimulateOptions sopts;
  auto* simulate = app.add_subcommand("simulate", "Simulate coherent entanglement concentration");
  simulate->add_option("mode", sopts.mode, "known | universal | huffman | vonneumann")
      ->required()
      ->check(CLI::IsMember({"known", "universal", "huffman", "vonneumann"}));
  simulate->add_option("--n", sopts.n, "Input pairs (vonneumann: pairs of pairs)")->check(CLI::NonNegativeNumber);
  simulate->add_option("--p", sopts.p0, "Schmidt weight of |00>")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--theta", sopts.theta, "Schmidt basis angle (universal)");
  simulate->add_option("--report", report_path, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (*extract) {
      ExtractOptions eopts;
      eopts.segment_len = segment;
      if (demand >= 0) eopts.demand = demand;
      std::ifstream fin;
      std::ofstream fout;
      if (!input.empty()) {
        fin.open(input, std::ios::binary);
        if (!fin) throw std::runtime_error("cannot open input " + input);
      }
      if (!output.empty()) {
        fout.open(output, std::ios::binary);
        if (!fout) throw std::runtime_error("cannot open output " + output);
      }
      const Report rep = cmd_extract(input.empty() ? std::cin : fin, output.empty() ? std::cout : fout, eopts);
      emit_report(rep, report_path, std::cerr);
      return kPass;
    }
    Report rep;
    int code = kPass;
    if (*verify_cmd) {
      vopts.suites.clear();
      std::stringstream ss(suites);
      for (std::string s; std::getline(ss, s, ',');) {
        if (!s.empty()) vopts.suites.push_back(s);
      }
      code = cmd_verify(vopts, rep);
    } else {
      code = cmd_simulate(sopts, rep);
    }
    emit_report(rep, report_path, std::cout);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "selias: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace selias::cli
