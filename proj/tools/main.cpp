// Command-line front end. Talks to the library only through the C interface.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autoseries/autoseries.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Thrown to leave main with a given exit code after printing a message.
struct Exit {
  int code;
};

struct Context {
  autoseries_context* handle = nullptr;
  Context() {
    if (autoseries_context_create(&handle) != AUTOSERIES_OK) {
      std::fprintf(stderr, "error: cannot create context\n");
      throw Exit{kExitFail};
    }
  }
  ~Context() { autoseries_context_destroy(handle); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
};

int exit_code_for(autoseries_status status) {
  return status == AUTOSERIES_USAGE ? kExitUsage : kExitFail;
}

/// Prints the library's message and exits on failure.
void check(const Context& ctx, autoseries_status status) {
  if (status == AUTOSERIES_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", autoseries_status_string(status),
               autoseries_last_error(ctx.handle));
  throw Exit{exit_code_for(status)};
}

long double parse_number(const Context& ctx, const std::string& text) {
  long double out = 0;
  check(ctx, autoseries_parse_real(ctx.handle, text.c_str(), &out));
  return out;
}

struct Settings {
  std::optional<int> precision_bits;
  std::optional<std::uint64_t> max_terms;
  std::optional<int> depth;
  std::optional<unsigned> threads;
  std::optional<std::string> eps;  // kept as text so it parses at full precision
};

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open config file %s\n", path.c_str());
    throw Exit{kExitUsage};
  }
  Settings out;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_object()) throw std::runtime_error("top level must be an object");
    for (const auto& [key, value] : j.items()) {
      if (key == "precision_bits") {
        out.precision_bits = value.get<int>();
      } else if (key == "max_terms") {
        out.max_terms = value.get<std::uint64_t>();
      } else if (key == "depth" || key == "fe_depth") {
        out.depth = value.get<int>();
      } else if (key == "threads") {
        out.threads = value.get<unsigned>();
      } else if (key == "eps") {
        if (!value.is_number() || !(value.get<double>() > 0)) {
          throw std::runtime_error("eps must be a positive number");
        }
        out.eps = value.dump();
      } else {
        throw std::runtime_error("unknown key '" + key + "'");
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: config file %s: %s\n", path.c_str(), e.what());
    throw Exit{kExitUsage};
  }
  return out;
}

template <class T>
std::optional<T> env_value(const char* name) {
  const char* text = std::getenv(name);
  if (text == nullptr || *text == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (*end != '\0' || text[0] == '-') {
    std::fprintf(stderr, "error: %s must be a non-negative integer, got '%s'\n", name, text);
    throw Exit{kExitUsage};
  }
  return static_cast<T>(v);
}

/// Applies defaults < config file < environment < flags. Returns the merged
/// settings (eps only ever comes from the file; --eps is handled per command).
Settings configure(const Context& ctx, const std::string& config_path, const Settings& flags) {
  Settings merged;
  if (!config_path.empty()) merged = read_config_file(config_path);
  if (auto v = env_value<int>("AUTOSERIES_PRECISION_BITS")) merged.precision_bits = v;
  if (auto v = env_value<std::uint64_t>("AUTOSERIES_MAX_TERMS")) merged.max_terms = v;
  if (flags.precision_bits) merged.precision_bits = flags.precision_bits;
  if (flags.max_terms) merged.max_terms = flags.max_terms;
  if (flags.depth) merged.depth = flags.depth;
  if (flags.threads) merged.threads = flags.threads;

  // Invalid settings are usage errors, whatever their source.
  auto apply = [&](autoseries_status status) {
    if (status != AUTOSERIES_OK) {
      std::fprintf(stderr, "error: %s\n", autoseries_last_error(ctx.handle));
      throw Exit{kExitUsage};
    }
  };
  if (merged.precision_bits) apply(autoseries_set_precision_bits(ctx.handle, *merged.precision_bits));
  if (merged.max_terms) apply(autoseries_set_max_terms(ctx.handle, *merged.max_terms));
  if (merged.depth) apply(autoseries_set_depth(ctx.handle, *merged.depth));
  if (merged.threads) apply(autoseries_set_threads(ctx.handle, *merged.threads));
  return merged;
}


const char* domain_label(const autoseries_identity_info& info, char* buf, std::size_t size) {
  switch (info.domain) {
    case 0:
      return "s > 1";
    case 1:
      std::snprintf(buf, size, "s = %.10Lg", info.fixed_s);
      return buf;
    default:
      return "-";
  }
}

int cmd_list(const Context& ctx) {
  const std::size_t n = autoseries_registry_size();
  for (std::size_t i = 0; i < n; ++i) {
    autoseries_identity_info info;
    check(ctx, autoseries_registry_entry(ctx.handle, i, &info));
    char buf[64];
    std::printf("%-26s %-10s %s\n", info.id, domain_label(info, buf, sizeof buf),
                info.description);
  }
  std::printf("%-26s %-10s %s\n", "shallit:<b>", "-",
              "sum s_b(n)/(n(n+1)) = b/(b-1) log b for any base b >= 2");
  return kExitPass;
}

int cmd_eval(const Context& ctx, const std::string& series, const std::string& s_text,
             const std::string& eps_text, const std::string& method_name) {
  autoseries_method method = AUTOSERIES_METHOD_AUTO;
  check(ctx, autoseries_method_from_string(ctx.handle, method_name.c_str(), &method));
  const long double s = parse_number(ctx, s_text);
  const long double eps = parse_number(ctx, eps_text);
  autoseries_eval_result r;
  check(ctx, autoseries_eval(ctx.handle, series.c_str(), s, eps, method, &r));
  std::printf("series  %s\ns       %.21Lg\nvalue   %.21Lg\nbound   %.6Le\nterms   %llu\nmethod  %s\n",
              series.c_str(), s, r.value, r.abs_error_bound,
              static_cast<unsigned long long>(r.terms_used), autoseries_method_name(r.method));
  return kExitPass;
}

struct Report {
  autoseries_report* handle = nullptr;
  ~Report() { autoseries_report_destroy(handle); }
};

std::vector<long double> parse_s_list(const Context& ctx, const std::string& text) {
  std::vector<long double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_number(ctx, item));
  }
  if (out.empty()) {
    std::fprintf(stderr, "error: --s needs at least one value\n");
    throw Exit{kExitUsage};
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void print_rendered(const Context& ctx, const Report& report, autoseries_format format) {
  char* text = nullptr;
  check(ctx, autoseries_report_render(ctx.handle, report.handle, format, &text));
  std::fputs(text, stdout);
  autoseries_free(text);
}

int cmd_verify(const Context& ctx, std::vector<std::string> ids, bool all,
               const std::string& s_text, const std::string& eps_text, const std::string& out,
               const std::string& format_name, const std::string& method_name) {
  autoseries_method method = AUTOSERIES_METHOD_AUTO;
  check(ctx, autoseries_method_from_string(ctx.handle, method_name.c_str(), &method));
  if (all == !ids.empty()) {
    std::fprintf(stderr, "error: give identity ids or --all (not both)\n");
    return kExitUsage;
  }
  autoseries_format format = AUTOSERIES_FORMAT_TEXT;
  if (format_name == "json") {
    format = AUTOSERIES_FORMAT_JSON;
  } else if (format_name == "csv") {
    format = AUTOSERIES_FORMAT_CSV;
  } else if (format_name != "text" && !format_name.empty()) {
    std::fprintf(stderr, "error: unknown format '%s'\n", format_name.c_str());
    return kExitUsage;
  }
  if (!out.empty() && format_name.empty()) format = AUTOSERIES_FORMAT_JSON;

  const long double eps = parse_number(ctx, eps_text);
  const std::optional<std::vector<long double>> s_list =
      s_text.empty() ? std::nullopt : std::optional(parse_s_list(ctx, s_text));

  if (all) {
    for (std::size_t i = 0; i < autoseries_registry_size(); ++i) {
      autoseries_identity_info info;
      check(ctx, autoseries_registry_entry(ctx.handle, i, &info));
      ids.emplace_back(info.id);
    }
  }

  Report report;
  check(ctx, autoseries_report_create(ctx.handle, eps, &report.handle));
  check(ctx, autoseries_report_set_method(report.handle, method));
  for (const auto& id : ids) {
    autoseries_identity_info info;
    check(ctx, autoseries_identity_info_for(ctx.handle, id.c_str(), &info));
    // An explicit s list applies to identities that hold for every s; with
    // --all, fixed-s and s-free identities keep their own s.
    std::vector<long double> values;
    const bool use_list = s_list && (info.domain == 0 || (!all && info.domain == 1));
    if (use_list) {
      values = *s_list;
    } else {
      long double buf[16];
      std::size_t count = 0;
      check(ctx, autoseries_identity_default_s(ctx.handle, id.c_str(), buf, 16, &count));
      values.assign(buf, buf + count);
    }
    if (values.empty()) {
      check(ctx, autoseries_report_queue(ctx.handle, report.handle, id.c_str(), 0, 0));
    }
    for (long double s : values) {
      check(ctx, autoseries_report_queue(ctx.handle, report.handle, id.c_str(), 1, s));
    }
  }
  check(ctx, autoseries_report_run(ctx.handle, report.handle));

  if (!out.empty()) {
    check(ctx, autoseries_report_write(ctx.handle, report.handle, out.c_str(), format));
    print_rendered(ctx, report, AUTOSERIES_FORMAT_TEXT);
  } else {
    print_rendered(ctx, report, format);
  }
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  check(ctx, autoseries_report_counts(report.handle, &passed, &failed));
  return failed == 0 ? kExitPass : kExitFail;
}

int cmd_solve(const Context& ctx, const std::string& case_name, const std::string& k_text,
              const std::string& l_text, bool mint, bool verify_at_solution,
              const std::string& eps_text) {
  autoseries_case which;
  if (case_name == "zero") {
    which = AUTOSERIES_CASE_ZERO;
  } else if (case_name == "pows") {
    which = AUTOSERIES_CASE_POWS;
  } else if (case_name == "pows-minus-2") {
    which = AUTOSERIES_CASE_POWS_MINUS_2;
  } else {
    std::fprintf(stderr, "error: unknown case '%s' (zero, pows, pows-minus-2)\n",
                 case_name.c_str());
    return kExitUsage;
  }
  const long double k = parse_number(ctx, k_text);
  const long double l = parse_number(ctx, l_text);
  autoseries_solution sol;
  check(ctx, autoseries_solve(ctx.handle, which, k, l, &sol));
  std::printf("case             %s\nk                %.21Lg\nl                %.21Lg\n"
              "s                %.21Lg\nlambda residual  %.3Le\n",
              case_name.c_str(), sol.k, sol.l, sol.s, sol.lambda_residual);
  if (!sol.usable) {
    std::printf("note             s <= 1: the series do not converge there; not verifiable\n");
  }
  if (!mint && !verify_at_solution) return kExitPass;

  autoseries_identity_info info;
  check(ctx, autoseries_mint(ctx.handle, &sol, &info));
  std::printf("identity         %s\n                 %s\n", info.id, info.description);
  if (!verify_at_solution) return kExitPass;

  autoseries_record record;
  check(ctx, autoseries_verify_solution(ctx.handle, &sol, parse_number(ctx, eps_text), &record));
  std::printf("verify           %s  residual=%.3Le bound=%.3Le lhs=%.21Lg rhs=%.21Lg\n",
              record.pass ? "PASS" : "FAIL", record.residual, record.lhs_bound + record.rhs_bound,
              record.lhs, record.rhs);
  return record.pass ? kExitPass : kExitFail;
}

int run(int argc, char** argv) {
  CLI::App app{"Rigorous evaluation of Thue-Morse Dirichlet series and identity checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", autoseries_version());

  Settings flags;
  std::string config_path;
  app.add_option("--precision-bits", flags.precision_bits, "Unit roundoff 2^-bits (53..64)");
  app.add_option("--max-terms", flags.max_terms, "Cap on summed terms per series");
  app.add_option("--depth", flags.depth, "Functional-equation depth K");
  app.add_option("--threads", flags.threads, "Worker threads (0: all cores)");
  app.add_option("--config", config_path, "JSON configuration file");

  auto* eval = app.add_subcommand("eval", "Evaluate a series with an error bound");
  std::string series;
  std::string s_text;
  std::string eps_text = "1e-10";
  std::string method = "auto";
  eval->add_option("series", series, "f, g, phi, gamma, delta, odd-epsilon, composite9, zeta, "
                                     "digitsum:b, affine:a:b[:shifted]")
      ->required();
  eval->add_option("s", s_text, "Exponent s")->required();
  eval->add_option("eps", eps_text, "Absolute tolerance");
  eval->add_option("--method", method, "auto, naive, odd, fe, em");

  auto* verify = app.add_subcommand("verify", "Verify identities and write a report");
  std::vector<std::string> ids;
  bool all = false;
  std::string verify_s;
  std::string verify_eps = "1e-8";
  std::string out;
  std::string format;
  verify->add_option("ids", ids, "Identity ids (see list)");
  verify->add_flag("--all", all, "Every registered identity");
  verify->add_option("--s", verify_s, "Comma-separated s values");
  auto* verify_eps_opt = verify->add_option("--eps", verify_eps, "Absolute tolerance");
  verify->add_option("--out", out, "Write the report to this file");
  verify->add_option("--format", format, "json, csv or text");
  std::string verify_method = "auto";
  verify->add_option("--method", verify_method,
                     "Route for series the identity leaves on auto: auto, naive, odd, fe");

  auto* solve = app.add_subcommand("solve", "Solve lambda(s; k, l) for s and mint identities");
  std::string case_name;
  std::string k_text;
  std::string l_text;
  bool mint = false;
  bool verify_at_solution = false;
  std::string solve_eps = "1e-8";
  solve->add_option("case", case_name, "zero, pows or pows-minus-2")->required();
  solve->add_option("k", k_text, "k (p/q, decimals, sqrt2, ...)")->required();
  solve->add_option("l", l_text, "l (p/q, decimals, sqrt2, ...)")->required();
  solve->add_flag("--mint", mint, "Print the identity for the solution");
  solve->add_flag("--verify-at-solution", verify_at_solution, "Verify the minted identity");
  auto* solve_eps_opt =
      solve->add_option("--eps", solve_eps, "Tolerance for --verify-at-solution");

  auto* list = app.add_subcommand("list", "List the identity registry");

  for (auto* sub : {eval, verify, solve, list}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Context ctx;
  const Settings merged = configure(ctx, config_path, flags);
  if (merged.eps && verify_eps_opt->count() == 0) verify_eps = *merged.eps;
  if (merged.eps && solve_eps_opt->count() == 0) solve_eps = *merged.eps;
  if (*eval) return cmd_eval(ctx, series, s_text, eps_text, method);
  if (*verify) return cmd_verify(ctx, ids, all, verify_s, verify_eps, out, format, verify_method);
  if (*solve) return cmd_solve(ctx, case_name, k_text, l_text, mint, verify_at_solution, solve_eps);
  return cmd_list(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  }
}
