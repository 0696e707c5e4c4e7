#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace autoseries {

/// Working real type of the evaluation engine (64-bit mantissa on x86-64).
using real = long double;

enum class Method {
  Auto,
  Naive,
  OddDecomposition,
  FunctionalEquation,
  EulerMaclaurin,
};

std::string_view to_string(Method method) noexcept;
std::optional<Method> method_from_string(std::string_view name) noexcept;

/// Value of a series or special function together with a rigorous bound on
/// |value - exact|.
template <class Real>
struct BasicEvalResult {
  Real value{0};
  Real abs_error_bound{0};
  std::uint64_t terms_used{0};
  Method method{Method::Naive};
};

using EvalResult = BasicEvalResult<real>;

/// Precision request for the special-function routines.
struct Precision {
  int working_bits = 64;
  long double target_eps = 1e-12L;
};

/// Argument outside the mathematical domain of an operation (s <= 1, a guard
/// of the alphabet solver, an undefined sequence index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested tolerance needs more work than the configuration allows.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what, std::uint64_t required_terms = 0)
      : std::runtime_error(what), required_terms_(required_terms) {}

  /// Number of terms that would have been needed; 0 when not applicable.
  std::uint64_t required_terms() const noexcept { return required_terms_; }

 private:
  std::uint64_t required_terms_;
};

/// Malformed request from a caller: unknown series or identity name, bad
/// numeric literal.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A report or configuration file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int precision_bits = 64;
  std::uint64_t max_terms = 1'000'000'000ULL;
  int fe_depth = 40;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Unit roundoff 2^-precision_bits charged in rounding budgets.
  real unit_roundoff() const noexcept { return std::ldexp(1.0L, -precision_bits); }
  unsigned worker_count() const noexcept;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws UsageError on out-of-range settings.
void validate(const Config& config);

inline constexpr int kMinPrecisionBits = 53;
inline constexpr int kMaxPrecisionBits = 64;

}  // namespace autoseries
