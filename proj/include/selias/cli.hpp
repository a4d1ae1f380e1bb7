#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace selias::cli {

inline constexpr const char* kReportSchema = "selias-report/1";

enum ExitCode : int { kPass = 0, kViolation = 1, kUsageError = 2 };

/// Line-delimited `key=value` report. The first line is always
/// `schema=selias-report/1`; field order is insertion order.
class Report {
 public:
  Report();

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
  void set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
  void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }
  void set(const std::string& key, double value);

  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  void write(std::ostream& os) const;
  [[nodiscard]] std::string str() const;

  /// Inverse of write(); throws std::runtime_error on malformed lines or a schema mismatch.
  static Report parse(std::istream& is);

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct ExtractOptions {
  std::optional<std::int64_t> demand;  // on-demand mode when set
  int segment_len = 1024;              // restart the stream after this many input bits
};

/// Bytes in, unpacked MSB first, extracted, packed MSB first. The final
/// partial byte is zero-padded; the pad length is in the report.
Report cmd_extract(std::istream& in, std::ostream& out, const ExtractOptions& opts);

struct VerifyOptions {
  int max_n = 16;
  std::vector<std::string> suites{"equivalence", "balanced", "yield"};
  double p0 = 0.3;               // stats suite
  std::int64_t samples = 1000000;  // stats suite
  std::uint64_t seed = 1;        // stats suite
};

/// Runs the selected verification suites. Exit code kViolation on any hard failure.
int cmd_verify(const VerifyOptions& opts, Report& report);

struct SimulateOptions {
  std::string mode;  // known | universal | huffman | vonneumann
  int n = 8;
  double p0 = 0.3;
  double theta = 0.0;
};

/// Runs one simulation. kViolation if a claimed-perfect pair is not perfect.
int cmd_simulate(const SimulateOptions& opts, Report& report);

/// Full command-line entry point; returns the process exit code.
int run_main(int argc, char** argv);

}  // namespace selias::cli
