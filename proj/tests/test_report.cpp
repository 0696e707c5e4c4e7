#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "autoseries/report.hpp"

using namespace autoseries;

#ifndef AUTOSERIES_TEST_DATA
#error "AUTOSERIES_TEST_DATA must point at tests/data"
#endif

namespace {

VerificationRecord random_record(std::mt19937_64& rng, std::size_t i) {
  std::uniform_real_distribution<long double> unit(0, 1);
  VerificationRecord r;
  r.identity_id = "identity-" + std::to_string(i);
  if (i % 3 != 0) r.s = 1 + 7 * unit(rng);
  r.eps = std::ldexp(unit(rng), -20);
  r.lhs = (unit(rng) - 0.5L) * 1e3L;
  r.lhs_bound = unit(rng) * 1e-9L;
  r.rhs = r.lhs + unit(rng) * 1e-12L;
  r.rhs_bound = std::ldexp(unit(rng), -40);
  r.residual = std::fabs(r.lhs - r.rhs);
  r.pass = i % 4 != 1;
  r.heuristic = i % 5 == 0;
  r.terms_used = rng() >> 10;
  r.wall_time_seconds = static_cast<double>(unit(rng));
  if (i % 7 == 3) r.error = "needs \"more\" terms, sorry";
  return r;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("json round trip is lossless") {
  std::mt19937_64 rng(42);
  std::vector<VerificationRecord> records;
  for (std::size_t i = 0; i < 50; ++i) records.push_back(random_record(rng, i));
  Config config;
  config.max_terms = 123456789;
  config.fe_depth = 17;
  config.threads = 3;
  config.precision_bits = 60;
  const ReportDocument doc = make_report(config, 1e-8L, records);
  const ReportDocument back = report_from_json(to_json(doc));
  CHECK(back.records == doc.records);
  CHECK(back.config == doc.config);
  CHECK(back.eps == doc.eps);
  CHECK(back.summary.passed == doc.summary.passed);
  CHECK(back.summary.failed == doc.summary.failed);
  CHECK(back.timestamp == doc.timestamp);
  CHECK(to_json(back) == to_json(doc));
}

TEST_CASE("summary tallies") {
  std::mt19937_64 rng(1);
  std::vector<VerificationRecord> records;
  for (std::size_t i = 0; i < 12; ++i) records.push_back(random_record(rng, i));
  const ReportDocument doc = make_report(Config{}, 1e-6L, records);
  std::uint64_t passed = 0;
  for (const auto& r : records) passed += r.pass ? 1 : 0;
  CHECK(doc.summary.passed == passed);
  CHECK(doc.summary.failed == records.size() - passed);
  CHECK_FALSE(doc.all_passed());
  CHECK(make_report(Config{}, 1e-6L, {}).all_passed());
}

TEST_CASE("golden fixture parses") {
  const ReportDocument doc = read_report(std::string(AUTOSERIES_TEST_DATA) + "/report_v1.json");
  REQUIRE(doc.records.size() == 3);
  CHECK(doc.tool_version == "1.0.0");
  CHECK(doc.config.max_terms == 1'000'000'000ULL);
  CHECK(doc.records[0].identity_id == "zeta-combination");
  CHECK(doc.records[0].s == std::optional<real>(2));
  CHECK(doc.records[0].lhs == std::strtold("6.57973626739187190601", nullptr));
  CHECK(doc.records[0].terms_used == 12588);
  CHECK_FALSE(doc.records[1].s.has_value());
  CHECK(doc.records[1].heuristic);
  CHECK_FALSE(doc.records[2].pass);
  CHECK_FALSE(doc.records[2].error.empty());
  CHECK(doc.summary.passed == 2);
  CHECK(doc.summary.failed == 1);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(report_from_json("not json"), UsageError);
  CHECK_THROWS_AS(report_from_json("[]"), UsageError);
  CHECK_THROWS_AS(report_from_json("{}"), UsageError);
  std::ifstream in(std::string(AUTOSERIES_TEST_DATA) + "/report_v1.json");
  std::stringstream text;
  text << in.rdbuf();
  std::string tampered = text.str();
  tampered.replace(tampered.find("\"passed\": 2"), 11, "\"passed\": 3");
  CHECK_THROWS_AS(report_from_json(tampered), UsageError);
  std::string bad_number = text.str();
  bad_number.replace(bad_number.find("\"12588\""), 7, "\"12x88\"");
  CHECK_THROWS_AS(report_from_json(bad_number), UsageError);
  CHECK_THROWS_AS(read_report("/nonexistent/report.json"), IoError);
}

TEST_CASE("csv and text") {
  std::mt19937_64 rng(3);
  const ReportDocument doc =
      make_report(Config{}, 1e-8L, {random_record(rng, 0), random_record(rng, 3)});
  const std::string csv = to_csv(doc);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "identity,s,eps,lhs,lhs_bound,rhs,rhs_bound,residual,pass,heuristic,terms_used,"
        "wall_time_seconds,error");
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("identity-0,,", 0) == 0);  // s is empty for s-free records
  std::string second;
  std::getline(lines, second);
  CHECK(second.find("\"needs \"\"more\"\" terms, sorry\"") != std::string::npos);
  const std::string text = to_text(doc);
  CHECK(text.find("identity-0") != std::string::npos);
  CHECK(text.find("passed") != std::string::npos);
  CHECK(render(doc, ReportFormat::Csv) == csv);
  CHECK(report_format_from_string("csv") == ReportFormat::Csv);
  CHECK_FALSE(report_format_from_string("xml").has_value());
}

TEST_CASE("files") {
  const std::string path = temp_path("autoseries_report_test.json");
  std::mt19937_64 rng(9);
  const ReportDocument doc = make_report(Config{}, 1e-8L, {random_record(rng, 1)});
  write_report(doc, path, ReportFormat::Json);
  CHECK(read_report(path).records == doc.records);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_report(doc, "/nonexistent-dir/x.json", ReportFormat::Json), IoError);
}

TEST_CASE("batch verification keeps job order and is thread-count independent") {
  std::vector<VerifyJob> jobs;
  for (const char* id : {"zeta-combination", "delta-odd", "f-g-ratio"}) {
    for (real s : {2.0L, 3.0L}) jobs.push_back({find_identity(id), s});
  }
  jobs.push_back({find_identity("zeta-combination-s2"), 3.0L});  // outside its domain
  jobs.push_back({find_identity("allouche-shallit"), std::nullopt});
  Config one;
  one.threads = 1;
  Config many;
  many.threads = 4;
  auto a = verify_batch(jobs, 1e-8L, one);
  auto b = verify_batch(jobs, 1e-8L, many);
  REQUIRE(a.size() == jobs.size());
  REQUIRE(b.size() == jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CHECK(a[i].identity_id == jobs[i].identity.id);
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
    CHECK(a[i].pass == b[i].pass);
  }
  CHECK_FALSE(a[6].pass);
  CHECK(a[6].error.find("does not hold") != std::string::npos);
  CHECK(a[7].pass);
}
