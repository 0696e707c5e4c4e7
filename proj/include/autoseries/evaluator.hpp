#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autoseries/sequences.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

enum class Shift {
  None,   // sum_{n>=1} c_n / n^s
  ByOne,  // sum_{n>=0} c_n / (n+1)^s
};

enum class Denominator {
  PowerOfN,                 // n^s
  PowerOfOddN,              // sum_{m>=0} c_m / (2m+1)^s
  Composite9,               // sigma_n ((4n+3)^s - n^s) / (4n^2+3n)^s
  ReciprocalPronic,         // c_n / (n(n+1)), independent of s
  SquaredPronicDifference,  // c_n (2n+1) / (n^2 (n+1)^2), independent of s
};

struct SeriesSpec {
  CoefficientSequence coeffs = CoefficientSequence::ones();
  Shift shift = Shift::None;
  Denominator denom = Denominator::PowerOfN;

  /// Throws DomainError for combinations that reference undefined terms.
  void validate() const;
  bool depends_on_s() const noexcept;
  std::string describe() const;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

namespace series {
/// f(s) = sum eps_{n-1} / n^s
SeriesSpec f();
/// g(s) = sum eps_n / n^s
SeriesSpec g();
/// phi(s) = sum t_{n-1} / n^s
SeriesSpec phi();
/// gamma(s) = sum t_n / n^s
SeriesSpec gamma();
SeriesSpec delta();
/// A(s) = sum_{m>=0} eps_m / (2m+1)^s
SeriesSpec odd_epsilon();
SeriesSpec composite9();
SeriesSpec zeta();
SeriesSpec digit_sum(unsigned base);
/// sum s_b(n) / (n(n+1))
SeriesSpec shallit(unsigned base);
/// sum s_2(n) (2n+1) / (n^2 (n+1)^2)
SeriesSpec allouche_shallit();
/// sum c_n / n^s with c = a + (b-a) t_n, or c_{n-1} when shifted.
SeriesSpec affine(real a, real b, bool shifted);
}  // namespace series

/// Resolves a catalog name: f, g, phi, gamma, delta, odd-epsilon, composite9,
/// zeta, digitsum:b, affine:a:b[:shifted]. Throws UsageError.
SeriesSpec parse_series_name(std::string_view name);

/// Analytic majorant of the tail left after summing the first `terms`
/// denominator indices.
real tail_bound(const SeriesSpec& spec, real s, std::uint64_t terms);

/// Smallest number of terms whose tail_bound is <= target. Throws
/// ResourceError when it exceeds config.max_terms.
std::uint64_t required_terms(const SeriesSpec& spec, real s, real target, const Config& config);

/// Direct summation with a tail bound, terms chosen so the total bound <= eps.
EvalResult eval_naive(const SeriesSpec& spec, real s, real eps, const Config& config);

/// Direct summation of exactly `terms` terms; the bound covers the full series.
EvalResult eval_naive_terms(const SeriesSpec& spec, real s, std::uint64_t terms,
                            const Config& config);

/// A(s) = sum_{m>=0} eps_m / (2m+1)^s.
EvalResult eval_odd_series(real s, real eps, const Config& config);

/// 2^s / (2^s + 1): f(s) = odd_to_f_factor(s) * A(s).
real odd_to_f_factor(real s);

/// f(s) through the odd-index decomposition.
EvalResult eval_f_via_odd(real s, real eps, const Config& config);

/// binom(x + k - 1, k) as the rising product x (x+1) ... (x+k-1) / k!.
real rising_binomial(real x, int k);

/// Weight 2^{-s-k} binom(s+k-1, k) of f(s+k) in the functional equation.
real functional_equation_weight(real s, int k);

/// f(s) = sum_{k>=1} 2^{-s-k} binom(s+k-1, k) f(s+k), truncated at k = depth.
EvalResult eval_functional_equation(real s, real eps, int depth, const Config& config);

enum class PhiGamma { Phi, Gamma };

/// phi(s) = zeta(s)/2 - f(s)/2, gamma(s) = zeta(s)/2 - (1+2^s)/(2(1-2^s)) f(s).
EvalResult eval_phi_gamma(PhiGamma which, real s, real eps, const Config& config,
                          Method f_route = Method::FunctionalEquation);

EvalResult eval_composite9(real s, real eps, const Config& config);

/// zeta_coef * zeta(s) + f_coef * f(s).
struct LinearForm {
  real zeta_coef = 0;
  real f_coef = 0;
};

/// Expresses a power-denominator series over t, eps, delta or an alphabet
/// sequence as a combination of zeta(s) and f(s).
std::optional<LinearForm> f_linear_form(const SeriesSpec& spec, real s);

EvalResult eval_linear_form(const LinearForm& form, real s, real eps, const Config& config,
                            Method f_route);

/// Dispatches on method. Auto takes the functional-equation route whenever a
/// linear form exists and falls back to direct summation otherwise.
EvalResult evaluate(const SeriesSpec& spec, real s, real eps, const Config& config,
                    Method method = Method::Auto);

}  // namespace autoseries
