#include "autoseries/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace autoseries {

namespace {

using json = nlohmann::ordered_json;

std::string format_real(real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

real parse_real_field(const json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("report is missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_number()) return v.get<real>();
  if (!v.is_string()) throw UsageError(std::string("field '") + key + "' is not a number");
  const std::string text = v.get<std::string>();
  char* end = nullptr;
  const real out = std::strtold(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw UsageError(std::string("field '") + key + "' is not a decimal number: " + text);
  }
  return out;
}

std::uint64_t parse_count_field(const json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("report is missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (!v.is_string()) throw UsageError(std::string("field '") + key + "' is not a count");
  const std::string text = v.get<std::string>();
  char* end = nullptr;
  const std::uint64_t out = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw UsageError(std::string("field '") + key + "' is not a count: " + text);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json record_to_json(const VerificationRecord& r) {
  json j;
  j["identity"] = r.identity_id;
  j["s"] = r.s ? json(format_real(*r.s)) : json(nullptr);
  j["eps"] = format_real(r.eps);
  j["lhs"] = format_real(r.lhs);
  j["lhs_bound"] = format_real(r.lhs_bound);
  j["rhs"] = format_real(r.rhs);
  j["rhs_bound"] = format_real(r.rhs_bound);
  j["residual"] = format_real(r.residual);
  j["pass"] = r.pass;
  j["heuristic"] = r.heuristic;
  j["terms_used"] = std::to_string(r.terms_used);
  j["wall_time_seconds"] = format_double(r.wall_time_seconds);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

VerificationRecord record_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("report record is not an object");
  VerificationRecord r;
  if (!j.contains("identity") || !j.at("identity").is_string()) {
    throw UsageError("report record has no identity");
  }
  r.identity_id = j.at("identity").get<std::string>();
  if (j.contains("s") && !j.at("s").is_null()) r.s = parse_real_field(j, "s");
  r.eps = parse_real_field(j, "eps");
  r.lhs = parse_real_field(j, "lhs");
  r.lhs_bound = parse_real_field(j, "lhs_bound");
  r.rhs = parse_real_field(j, "rhs");
  r.rhs_bound = parse_real_field(j, "rhs_bound");
  r.residual = parse_real_field(j, "residual");
  if (!j.contains("pass") || !j.at("pass").is_boolean()) throw UsageError("record has no pass flag");
  r.pass = j.at("pass").get<bool>();
  r.heuristic = j.value("heuristic", false);
  r.terms_used = parse_count_field(j, "terms_used");
  r.wall_time_seconds = static_cast<double>(parse_real_field(j, "wall_time_seconds"));
  r.error = j.value("error", std::string());
  return r;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view name) noexcept {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  return std::nullopt;
}

void ReportDocument::tally() {
  summary.passed = static_cast<std::uint64_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
  summary.failed = records.size() - summary.passed;
  summary.wall_time_seconds = 0;
  for (const auto& r : records) summary.wall_time_seconds += r.wall_time_seconds;
}

ReportDocument make_report(const Config& config, real eps,
                           std::vector<VerificationRecord> records) {
  ReportDocument doc;
  doc.config = config;
  doc.eps = eps;
  doc.records = std::move(records);
  doc.timestamp = utc_timestamp();
  doc.tally();
  return doc;
}

std::string to_json(const ReportDocument& doc) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = doc.tool_version;
  j["timestamp"] = doc.timestamp;
  j["configuration"] = {
      {"precision_bits", doc.config.precision_bits},
      {"max_terms", std::to_string(doc.config.max_terms)},
      {"fe_depth", doc.config.fe_depth},
      {"threads", doc.config.threads},
      {"eps", format_real(doc.eps)},
  };
  json records = json::array();
  for (const auto& r : doc.records) records.push_back(record_to_json(r));
  j["records"] = std::move(records);
  j["summary"] = {
      {"records", doc.records.size()},
      {"passed", doc.summary.passed},
      {"failed", doc.summary.failed},
      {"wall_time_seconds", format_double(doc.summary.wall_time_seconds)},
  };
  return j.dump(2) + "\n";
}

ReportDocument report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("report is not a JSON object");
  try {
    ReportDocument doc;
    doc.tool_version = j.value("tool_version", std::string());
    doc.timestamp = j.value("timestamp", std::string());
    const json& cfg = j.at("configuration");
    doc.config.precision_bits = cfg.at("precision_bits").get<int>();
    doc.config.max_terms = parse_count_field(cfg, "max_terms");
    doc.config.fe_depth = cfg.value("fe_depth", Config{}.fe_depth);
    doc.config.threads = cfg.value("threads", 0u);
    doc.eps = parse_real_field(cfg, "eps");
    for (const auto& r : j.at("records")) doc.records.push_back(record_from_json(r));
    const json& summary = j.at("summary");
    doc.summary.passed = summary.at("passed").get<std::uint64_t>();
    doc.summary.failed = summary.at("failed").get<std::uint64_t>();
    doc.summary.wall_time_seconds =
        static_cast<double>(parse_real_field(summary, "wall_time_seconds"));
    ReportDocument check = doc;
    check.tally();
    if (check.summary.passed != doc.summary.passed || check.summary.failed != doc.summary.failed) {
      throw UsageError("report summary disagrees with its records");
    }
    return doc;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "identity,s,eps,lhs,lhs_bound,rhs,rhs_bound,residual,pass,heuristic,terms_used,"
         "wall_time_seconds,error\n";
  for (const auto& r : doc.records) {
    out << csv_field(r.identity_id) << ',' << (r.s ? format_real(*r.s) : "") << ','
        << format_real(r.eps) << ',' << format_real(r.lhs) << ',' << format_real(r.lhs_bound)
        << ',' << format_real(r.rhs) << ',' << format_real(r.rhs_bound) << ','
        << format_real(r.residual) << ',' << (r.pass ? "true" : "false") << ','
        << (r.heuristic ? "true" : "false") << ',' << r.terms_used << ','
        << format_double(r.wall_time_seconds) << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

std::string to_text(const ReportDocument& doc) {
  std::ostringstream out;
  char line[512];
  for (const auto& r : doc.records) {
    const std::string s = r.s ? format_real(*r.s) : "-";
    std::snprintf(line, sizeof line, "%-4s %-28s s=%-8.6s residual=%.3Le bound=%.3Le%s",
                  r.pass ? "PASS" : "FAIL", r.identity_id.c_str(), s.c_str(), r.residual,
                  r.lhs_bound + r.rhs_bound, r.heuristic ? " (heuristic)" : "");
    out << line;
    if (!r.error.empty()) out << "  error: " << r.error;
    out << '\n';
    std::snprintf(line, sizeof line, "     lhs=%.21Lg rhs=%.21Lg terms=%" PRIu64 " time=%.3fs",
                  r.lhs, r.rhs, r.terms_used, r.wall_time_seconds);
    out << line << '\n';
  }
  std::snprintf(line, sizeof line, "%" PRIu64 " passed, %" PRIu64 " failed, %.3fs",
                doc.summary.passed, doc.summary.failed, doc.summary.wall_time_seconds);
  out << line << '\n';
  return out.str();
}

std::string render(const ReportDocument& doc, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return to_json(doc);
    case ReportFormat::Csv:
      return to_csv(doc);
    case ReportFormat::Text:
      return to_text(doc);
  }
  return {};
}

void write_report(const ReportDocument& doc, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << render(doc, format);
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

ReportDocument read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return report_from_json(text.str());
}

std::vector<VerificationRecord> verify_batch(const std::vector<VerifyJob>& jobs, real eps,
                                             const Config& config,
                                             const VerifyOptions& options) {
  std::vector<VerificationRecord> records(jobs.size());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(config.worker_count(), jobs.size()));
  // Jobs run side by side with single-threaded sums, or one at a time with
  // parallel sums; chunked summation makes the values identical either way.
  Config inner = config;
  if (workers > 1) inner.threads = 1;

  auto run = [&](std::size_t i) {
    const VerifyJob& job = jobs[i];
    try {
      records[i] = verify(job.identity, job.s, eps, inner, options);
    } catch (const DomainError& e) {
      records[i] = VerificationRecord{};
      records[i].error = e.what();
    } catch (const ResourceError& e) {
      records[i] = VerificationRecord{};
      records[i].error = e.what();
    }
    if (!records[i].error.empty()) {
      records[i].identity_id = job.identity.id;
      records[i].s = job.s;
      records[i].eps = std::max(eps, job.identity.min_eps);
      records[i].pass = false;
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run(i);
        } catch (...) {
          failures[w] = std::current_exception();
          next = jobs.size();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return records;
}

}  // namespace autoseries
