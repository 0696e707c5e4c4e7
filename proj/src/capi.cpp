#include "autoseries/autoseries.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "autoseries/evaluator.hpp"
#include "autoseries/identities.hpp"
#include "autoseries/parse.hpp"
#include "autoseries/report.hpp"
#include "autoseries/solver.hpp"

struct autoseries_context {
  autoseries::Config config;
  std::string last_error;
};

struct autoseries_report {
  autoseries::ReportDocument doc;
  std::vector<autoseries::VerifyJob> queue;
  autoseries::VerifyOptions options;
};

namespace {

using namespace autoseries;

template <std::size_t N>
void copy_string(char (&dst)[N], const std::string& src) {
  const std::size_t n = std::min(src.size(), N - 1);
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

/// Runs fn, mapping exceptions to status codes and recording the message.
template <class Fn>
autoseries_status guarded(autoseries_context* ctx, Fn&& fn) {
  if (ctx == nullptr) return AUTOSERIES_USAGE;
  ctx->last_error.clear();
  auto fail = [ctx](autoseries_status status, const char* what) {
    ctx->last_error = what;
    return status;
  };
  try {
    fn();
    return AUTOSERIES_OK;
  } catch (const DomainError& e) {
    return fail(AUTOSERIES_DOMAIN, e.what());
  } catch (const ResourceError& e) {
    return fail(AUTOSERIES_RESOURCE, e.what());
  } catch (const UsageError& e) {
    return fail(AUTOSERIES_USAGE, e.what());
  } catch (const IoError& e) {
    return fail(AUTOSERIES_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AUTOSERIES_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(AUTOSERIES_INTERNAL, e.what());
  } catch (...) {
    return fail(AUTOSERIES_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be null");
}

autoseries_method to_c(Method m) {
  switch (m) {
    case Method::Auto:
      return AUTOSERIES_METHOD_AUTO;
    case Method::Naive:
      return AUTOSERIES_METHOD_NAIVE;
    case Method::OddDecomposition:
      return AUTOSERIES_METHOD_ODD;
    case Method::FunctionalEquation:
      return AUTOSERIES_METHOD_FE;
    case Method::EulerMaclaurin:
      return AUTOSERIES_METHOD_EM;
  }
  return AUTOSERIES_METHOD_AUTO;
}

Method from_c(autoseries_method m) {
  switch (m) {
    case AUTOSERIES_METHOD_AUTO:
      return Method::Auto;
    case AUTOSERIES_METHOD_NAIVE:
      return Method::Naive;
    case AUTOSERIES_METHOD_ODD:
      return Method::OddDecomposition;
    case AUTOSERIES_METHOD_FE:
      return Method::FunctionalEquation;
    case AUTOSERIES_METHOD_EM:
      return Method::EulerMaclaurin;
  }
  throw UsageError("unknown method code");
}

AlphabetCase from_c(autoseries_case c) {
  switch (c) {
    case AUTOSERIES_CASE_ZERO:
      return AlphabetCase::Zero;
    case AUTOSERIES_CASE_POWS:
      return AlphabetCase::PowS;
    case AUTOSERIES_CASE_POWS_MINUS_2:
      return AlphabetCase::PowSMinus2;
  }
  throw UsageError("unknown alphabet case code");
}

autoseries_case to_c(AlphabetCase c) {
  switch (c) {
    case AlphabetCase::Zero:
      return AUTOSERIES_CASE_ZERO;
    case AlphabetCase::PowS:
      return AUTOSERIES_CASE_POWS;
    case AlphabetCase::PowSMinus2:
      return AUTOSERIES_CASE_POWS_MINUS_2;
  }
  return AUTOSERIES_CASE_ZERO;
}

ReportFormat from_c(autoseries_format f) {
  switch (f) {
    case AUTOSERIES_FORMAT_JSON:
      return ReportFormat::Json;
    case AUTOSERIES_FORMAT_CSV:
      return ReportFormat::Csv;
    case AUTOSERIES_FORMAT_TEXT:
      return ReportFormat::Text;
  }
  throw UsageError("unknown report format code");
}

void to_c(const VerificationRecord& r, autoseries_record* out) {
  *out = autoseries_record{};
  copy_string(out->identity_id, r.identity_id);
  out->has_s = r.s.has_value();
  out->s = r.s.value_or(0);
  out->eps = r.eps;
  out->lhs = r.lhs;
  out->lhs_bound = r.lhs_bound;
  out->rhs = r.rhs;
  out->rhs_bound = r.rhs_bound;
  out->residual = r.residual;
  out->pass = r.pass;
  out->heuristic = r.heuristic;
  out->terms_used = r.terms_used;
  out->wall_time_seconds = r.wall_time_seconds;
  copy_string(out->error, r.error);
}

VerificationRecord from_c(const autoseries_record& r) {
  VerificationRecord out;
  out.identity_id.assign(r.identity_id, strnlen(r.identity_id, sizeof r.identity_id));
  if (r.has_s) out.s = r.s;
  out.eps = r.eps;
  out.lhs = r.lhs;
  out.lhs_bound = r.lhs_bound;
  out.rhs = r.rhs;
  out.rhs_bound = r.rhs_bound;
  out.residual = r.residual;
  out.pass = r.pass != 0;
  out.heuristic = r.heuristic != 0;
  out.terms_used = r.terms_used;
  out.wall_time_seconds = r.wall_time_seconds;
  out.error.assign(r.error, strnlen(r.error, sizeof r.error));
  return out;
}

void to_c(const Identity& id, autoseries_identity_info* out) {
  *out = autoseries_identity_info{};
  copy_string(out->id, id.id);
  copy_string(out->description, id.description);
  out->domain = static_cast<int>(id.domain);
  out->fixed_s = id.fixed_s;
}

std::optional<real> optional_s(int has_s, long double s) {
  return has_s ? std::optional<real>(s) : std::nullopt;
}

AlphabetSolution from_c_solution(const autoseries_solution& s) {
  return AlphabetSolution{s.k, s.l, from_c(s.which), s.s, s.lambda_residual};
}

}  // namespace

extern "C" {

const char* autoseries_version(void) { return kToolVersion.data(); }

const char* autoseries_status_string(autoseries_status status) {
  switch (status) {
    case AUTOSERIES_OK:
      return "ok";
    case AUTOSERIES_DOMAIN:
      return "domain error";
    case AUTOSERIES_RESOURCE:
      return "resource limit";
    case AUTOSERIES_USAGE:
      return "usage error";
    case AUTOSERIES_IO:
      return "i/o error";
    case AUTOSERIES_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

autoseries_status autoseries_context_create(autoseries_context** out) {
  if (out == nullptr) return AUTOSERIES_USAGE;
  *out = new (std::nothrow) autoseries_context{};
  return *out ? AUTOSERIES_OK : AUTOSERIES_RESOURCE;
}

void autoseries_context_destroy(autoseries_context* ctx) { delete ctx; }

const char* autoseries_last_error(const autoseries_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

autoseries_status autoseries_set_precision_bits(autoseries_context* ctx, int bits) {
  return guarded(ctx, [&] {
    Config next = ctx->config;
    next.precision_bits = bits;
    validate(next);
    ctx->config = next;
  });
}

autoseries_status autoseries_get_precision_bits(const autoseries_context* ctx, int* out) {
  if (ctx == nullptr || out == nullptr) return AUTOSERIES_USAGE;
  *out = ctx->config.precision_bits;
  return AUTOSERIES_OK;
}

autoseries_status autoseries_set_max_terms(autoseries_context* ctx, uint64_t n) {
  return guarded(ctx, [&] {
    Config next = ctx->config;
    next.max_terms = n;
    validate(next);
    ctx->config = next;
  });
}

autoseries_status autoseries_get_max_terms(const autoseries_context* ctx, uint64_t* out) {
  if (ctx == nullptr || out == nullptr) return AUTOSERIES_USAGE;
  *out = ctx->config.max_terms;
  return AUTOSERIES_OK;
}

autoseries_status autoseries_set_depth(autoseries_context* ctx, int depth) {
  return guarded(ctx, [&] {
    Config next = ctx->config;
    next.fe_depth = depth;
    validate(next);
    ctx->config = next;
  });
}

autoseries_status autoseries_get_depth(const autoseries_context* ctx, int* out) {
  if (ctx == nullptr || out == nullptr) return AUTOSERIES_USAGE;
  *out = ctx->config.fe_depth;
  return AUTOSERIES_OK;
}

autoseries_status autoseries_set_threads(autoseries_context* ctx, unsigned n) {
  return guarded(ctx, [&] { ctx->config.threads = n; });
}

autoseries_status autoseries_get_threads(const autoseries_context* ctx, unsigned* out) {
  if (ctx == nullptr || out == nullptr) return AUTOSERIES_USAGE;
  *out = ctx->config.threads;
  return AUTOSERIES_OK;
}

autoseries_status autoseries_parse_real(autoseries_context* ctx, const char* text,
                                        long double* out) {
  return guarded(ctx, [&] {
    require(text, "text");
    require(out, "out");
    *out = parse_real(text);
  });
}

const char* autoseries_method_name(autoseries_method method) {
  try {
    return to_string(from_c(method)).data();
  } catch (...) {
    return "unknown";
  }
}

autoseries_status autoseries_method_from_string(autoseries_context* ctx, const char* name,
                                                autoseries_method* out) {
  return guarded(ctx, [&] {
    require(name, "name");
    require(out, "out");
    const auto m = method_from_string(name);
    if (!m) throw UsageError(std::string("unknown method: ") + name);
    *out = to_c(*m);
  });
}

autoseries_status autoseries_eval(autoseries_context* ctx, const char* series, long double s,
                                  long double eps, autoseries_method method,
                                  autoseries_eval_result* out) {
  return guarded(ctx, [&] {
    require(series, "series");
    require(out, "out");
    const SeriesSpec spec = parse_series_name(series);
    const EvalResult r = evaluate(spec, s, eps, ctx->config, from_c(method));
    *out = autoseries_eval_result{r.value, r.abs_error_bound, r.terms_used, to_c(r.method)};
  });
}

size_t autoseries_registry_size(void) { return builtin_registry().size(); }

autoseries_status autoseries_registry_entry(autoseries_context* ctx, size_t index,
                                            autoseries_identity_info* out) {
  return guarded(ctx, [&] {
    require(out, "out");
    if (index >= builtin_registry().size()) throw UsageError("registry index out of range");
    to_c(builtin_registry()[index], out);
  });
}

autoseries_status autoseries_identity_info_for(autoseries_context* ctx, const char* id,
                                               autoseries_identity_info* out) {
  return guarded(ctx, [&] {
    require(id, "id");
    require(out, "out");
    to_c(find_identity(id), out);
  });
}

autoseries_status autoseries_identity_default_s(autoseries_context* ctx, const char* id,
                                                long double* out, size_t capacity,
                                                size_t* count) {
  return guarded(ctx, [&] {
    require(id, "id");
    require(count, "count");
    if (capacity > 0) require(out, "out");
    const auto values = find_identity(id).default_s();
    *count = std::min(capacity, values.size());
    for (std::size_t i = 0; i < *count; ++i) out[i] = values[i];
  });
}

autoseries_status autoseries_verify(autoseries_context* ctx, const char* id, int has_s,
                                    long double s, long double eps, autoseries_record* out) {
  return guarded(ctx, [&] {
    require(id, "id");
    require(out, "out");
    to_c(verify(find_identity(id), optional_s(has_s, s), eps, ctx->config), out);
  });
}

autoseries_status autoseries_verify_woods_robbins(autoseries_context* ctx, uint64_t terms,
                                                  int pairing, autoseries_record* out) {
  return guarded(ctx, [&] {
    require(out, "out");
    to_c(verify_woods_robbins(terms, pairing != 0), out);
  });
}

autoseries_status autoseries_solve(autoseries_context* ctx, autoseries_case which, long double k,
                                   long double l, autoseries_solution* out) {
  return guarded(ctx, [&] {
    require(out, "out");
    const AlphabetSolution sol = solve_case(from_c(which), k, l);
    *out = autoseries_solution{sol.k, sol.l, to_c(sol.which), sol.s, sol.lambda_residual,
                               sol.usable()};
  });
}

autoseries_status autoseries_mint(autoseries_context* ctx, const autoseries_solution* solution,
                                  autoseries_identity_info* out) {
  return guarded(ctx, [&] {
    require(solution, "solution");
    require(out, "out");
    to_c(mint_identity(from_c_solution(*solution)), out);
  });
}

autoseries_status autoseries_verify_solution(autoseries_context* ctx,
                                             const autoseries_solution* solution, long double eps,
                                             autoseries_record* out) {
  return guarded(ctx, [&] {
    require(solution, "solution");
    require(out, "out");
    const AlphabetSolution sol = from_c_solution(*solution);
    to_c(verify(mint_identity(sol), sol.s, eps, ctx->config), out);
  });
}

autoseries_status autoseries_report_create(autoseries_context* ctx, long double eps,
                                           autoseries_report** out) {
  return guarded(ctx, [&] {
    require(out, "out");
    auto report = std::make_unique<autoseries_report>();
    report->doc = make_report(ctx->config, eps, {});
    *out = report.release();
  });
}

void autoseries_report_destroy(autoseries_report* report) { delete report; }

autoseries_status autoseries_report_add(autoseries_report* report,
                                        const autoseries_record* record) {
  if (report == nullptr || record == nullptr) return AUTOSERIES_USAGE;
  try {
    report->doc.records.push_back(from_c(*record));
    report->doc.tally();
  } catch (...) {
    return AUTOSERIES_RESOURCE;
  }
  return AUTOSERIES_OK;
}

autoseries_status autoseries_report_queue(autoseries_context* ctx, autoseries_report* report,
                                          const char* id, int has_s, long double s) {
  return guarded(ctx, [&] {
    require(report, "report");
    require(id, "id");
    report->queue.push_back(VerifyJob{find_identity(id), optional_s(has_s, s)});
  });
}

autoseries_status autoseries_report_set_method(autoseries_report* report,
                                              autoseries_method method) {
  if (report == nullptr) return AUTOSERIES_USAGE;
  try {
    const Method m = from_c(method);
    report->options.series_method =
        m == Method::Auto ? std::nullopt : std::optional<Method>(m);
  } catch (const UsageError&) {
    return AUTOSERIES_USAGE;
  }
  return AUTOSERIES_OK;
}

autoseries_status autoseries_report_run(autoseries_context* ctx, autoseries_report* report) {
  return guarded(ctx, [&] {
    require(report, "report");
    auto records = verify_batch(report->queue, report->doc.eps, ctx->config, report->options);
    report->queue.clear();
    for (auto& r : records) report->doc.records.push_back(std::move(r));
    report->doc.config = ctx->config;
    report->doc.tally();
  });
}

size_t autoseries_report_size(const autoseries_report* report) {
  return report ? report->doc.records.size() : 0;
}

autoseries_status autoseries_report_record(const autoseries_report* report, size_t index,
                                           autoseries_record* out) {
  if (report == nullptr || out == nullptr || index >= report->doc.records.size()) {
    return AUTOSERIES_USAGE;
  }
  to_c(report->doc.records[index], out);
  return AUTOSERIES_OK;
}

autoseries_status autoseries_report_counts(const autoseries_report* report, uint64_t* passed,
                                           uint64_t* failed) {
  if (report == nullptr) return AUTOSERIES_USAGE;
  if (passed) *passed = report->doc.summary.passed;
  if (failed) *failed = report->doc.summary.failed;
  return AUTOSERIES_OK;
}

autoseries_status autoseries_report_render(autoseries_context* ctx,
                                           const autoseries_report* report,
                                           autoseries_format format, char** out) {
  return guarded(ctx, [&] {
    require(report, "report");
    require(out, "out");
    const std::string text = render(report->doc, from_c(format));
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

autoseries_status autoseries_report_write(autoseries_context* ctx,
                                          const autoseries_report* report, const char* path,
                                          autoseries_format format) {
  return guarded(ctx, [&] {
    require(report, "report");
    require(path, "path");
    write_report(report->doc, path, from_c(format));
  });
}

autoseries_status autoseries_report_read(autoseries_context* ctx, const char* path,
                                         autoseries_report** out) {
  return guarded(ctx, [&] {
    require(path, "path");
    require(out, "out");
    auto report = std::make_unique<autoseries_report>();
    report->doc = read_report(path);
    *out = report.release();
  });
}

void autoseries_free(void* buffer) { std::free(buffer); }

}  // extern "C"
