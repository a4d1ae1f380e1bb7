#include <sstream>

#include <gtest/gtest.h>

#include "selias/cli.hpp"
#include "selias/errors.hpp"

using namespace selias::cli;

namespace {

std::string bytes(std::initializer_list<int> v) {
  std::string s;
  for (int x : v) s.push_back(static_cast<char>(x));
  return s;
}

}  // namespace

TEST(Extract, PacksOutputAndReports) {
  std::istringstream in(bytes({0x60}));
  std::ostringstream out;
  const Report rep = cmd_extract(in, out, {});
  EXPECT_EQ(out.str(), bytes({0x80}));
  EXPECT_EQ(rep.get("bits_read"), "8");
  EXPECT_EQ(rep.get("bits_emitted"), "4");
  EXPECT_EQ(rep.get("purity_len"), "4");
  EXPECT_EQ(rep.get("pad_bits"), "4");
  EXPECT_EQ(rep.get("n"), "8");
  EXPECT_EQ(rep.get("t"), "2");
  EXPECT_EQ(rep.get("l"), "4");
}

TEST(Extract, EmptyInput) {
  std::istringstream in;
  std::ostringstream out;
  const Report rep = cmd_extract(in, out, {});
  EXPECT_TRUE(out.str().empty());
  EXPECT_EQ(rep.get("bits_read"), "0");
  EXPECT_EQ(rep.get("pad_bits"), "0");
}

TEST(Extract, OnDemand) {
  std::istringstream in(bytes({0x60}));
  std::ostringstream out;
  ExtractOptions opts;
  opts.demand = 1;
  const Report rep = cmd_extract(in, out, opts);
  EXPECT_EQ(out.str(), bytes({0x80}));
  EXPECT_EQ(rep.get("bits_read"), "2");
  EXPECT_EQ(rep.get("demand_met"), "true");

  std::istringstream in2(bytes({0x60}));
  std::ostringstream out2;
  opts.demand = 9;
  const Report rep2 = cmd_extract(in2, out2, opts);
  EXPECT_EQ(rep2.get("demand_met"), "false");
  EXPECT_EQ(rep2.get("bits_emitted"), "4");
  EXPECT_EQ(rep2.get("bits_read"), "8");
}

TEST(Extract, DemandAcrossSegmentsMatchesStreaming) {
  std::string input;
  for (int i = 0; i < 300; ++i) input.push_back(static_cast<char>((i * 97 + 13) & 0xFF));
  ExtractOptions streaming;
  streaming.segment_len = 64;
  std::istringstream a(input);
  std::ostringstream out_a;
  const Report ra = cmd_extract(a, out_a, streaming);

  ExtractOptions demand = streaming;
  demand.demand = std::stoll(*ra.get("bits_emitted"));
  std::istringstream b(input);
  std::ostringstream out_b;
  const Report rb = cmd_extract(b, out_b, demand);
  EXPECT_EQ(out_a.str(), out_b.str());
  EXPECT_EQ(rb.get("demand_met"), "true");
  EXPECT_EQ(ra.get("segments"), "38");
}

TEST(Extract, ReportIsDeterministicApartFromTiming) {
  auto once = [] {
    std::istringstream in(bytes({0x12, 0x34, 0xAB, 0xCD, 0xEF}));
    std::ostringstream out;
    Report rep = cmd_extract(in, out, {});
    rep.set("elapsed_ms", "x");
    return rep.str() + out.str();
  };
  EXPECT_EQ(once(), once());
}

TEST(Report, RoundTrip) {
  Report r;
  r.set("a", 3);
  r.set("b", 0.25);
  r.set("c", true);
  r.set("d", "text with spaces");
  std::istringstream in(r.str());
  const Report back = Report::parse(in);
  EXPECT_EQ(back.fields(), r.fields());
  EXPECT_EQ(back.get("b"), "0.25");
  std::istringstream bad("no schema line\n");
  EXPECT_THROW((void)Report::parse(bad), std::runtime_error);
}

TEST(Verify, SmallRunPasses) {
  VerifyOptions opts;
  opts.max_n = 8;
  opts.suites = {"equivalence", "balanced", "yield", "entropy", "young", "vonneumann"};
  Report rep;
  EXPECT_EQ(cmd_verify(opts, rep), kPass);
  EXPECT_EQ(rep.get("pass"), "true");
  opts.suites = {"bogus"};
  EXPECT_THROW((void)cmd_verify(opts, rep), selias::DomainError);
}

TEST(Simulate, Modes) {
  Report rep;
  SimulateOptions opts;
  opts.mode = "known";
  opts.n = 6;
  EXPECT_EQ(cmd_simulate(opts, rep), kPass);
  EXPECT_EQ(rep.get("fidelity[0]"), "1");

  Report huff;
  opts.mode = "huffman";
  EXPECT_EQ(cmd_simulate(opts, huff), kPass);
  EXPECT_EQ(huff.get("fidelity"), "0.853553390593274");
}

TEST(Main, ExitCodes) {
  const char* bad[] = {"selias", "simulate", "nope"};
  EXPECT_EQ(run_main(3, const_cast<char**>(bad)), kUsageError);
  const char* none[] = {"selias"};
  EXPECT_EQ(run_main(1, const_cast<char**>(none)), kUsageError);
  const char* missing[] = {"selias", "extract", "--input", "/nonexistent/file"};
  EXPECT_EQ(run_main(4, const_cast<char**>(missing)), kUsageError);
}
