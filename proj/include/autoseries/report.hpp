#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autoseries/identities.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Json, Csv, Text };

std::optional<ReportFormat> report_format_from_string(std::string_view name) noexcept;

struct ReportSummary {
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  double wall_time_seconds = 0;

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct ReportDocument {
  std::string tool_version{kToolVersion};
  Config config;
  real eps = 0;
  std::vector<VerificationRecord> records;
  ReportSummary summary;
  /// ISO 8601, UTC.
  std::string timestamp;

  /// Recomputes summary from records.
  void tally();
  bool all_passed() const noexcept { return summary.failed == 0; }

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_report(const Config& config, real eps,
                           std::vector<VerificationRecord> records);

/// Numbers are decimal strings with enough digits to round-trip a long double.
std::string to_json(const ReportDocument& doc);
/// Unknown fields are ignored. Throws UsageError for malformed documents or
/// summaries that disagree with the records.
ReportDocument report_from_json(std::string_view text);

/// Column order: identity,s,eps,lhs,lhs_bound,rhs,rhs_bound,residual,pass,
/// heuristic,terms_used,wall_time_seconds,error
std::string to_csv(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);
std::string render(const ReportDocument& doc, ReportFormat format);

/// Throws IoError.
void write_report(const ReportDocument& doc, const std::string& path, ReportFormat format);
ReportDocument read_report(const std::string& path);

/// One (identity, s) pair of a batch.
struct VerifyJob {
  Identity identity;
  std::optional<real> s;
};

/// Runs the jobs across config.worker_count() threads. Records come back in job
/// order; domain and resource errors become failing records with `error` set.
std::vector<VerificationRecord> verify_batch(const std::vector<VerifyJob>& jobs, real eps,
                                             const Config& config,
                                             const VerifyOptions& options = {});

}  // namespace autoseries
