#include "autoseries/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "autoseries/parse.hpp"
#include "autoseries/special_functions.hpp"
#include "autoseries/summation.hpp"

namespace autoseries {
namespace {

constexpr std::uint64_t kSearchLimit = std::uint64_t{1} << 62;

void check_s(real s) {
  if (!(s > 1) || !std::isfinite(s)) throw DomainError("series requires real s > 1");
}

void check_eps(real eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("tolerance must be positive");
}

/// Exponent k when s is an integer small enough for repeated multiplication.
int integer_exponent(real s) {
  if (s == std::floor(s) && s >= 1 && s <= 64) return static_cast<int>(s);
  return 0;
}

real int_power(real x, int k) {
  real result = 1;
  for (; k != 0; k >>= 1) {
    if (k & 1) result *= x;
    x *= x;
  }
  return result;
}

/// x^-s, using exact-exponent multiplication for integer s.
struct InversePower {
  real s;
  int k;

  real operator()(real x) const { return k != 0 ? 1 / int_power(x, k) : std::pow(x, -s); }
};

std::uint64_t coefficient_offset(const SeriesSpec& spec) {
  switch (spec.denom) {
    case Denominator::PowerOfN:
      return spec.shift == Shift::ByOne ? 1 : 0;
    case Denominator::PowerOfOddN:
      return 1;
    default:
      return 0;
  }
}

template <class Fn>
decltype(auto) with_weight(const SeriesSpec& spec, real s, Fn&& fn) {
  const InversePower inv{s, integer_exponent(s)};
  switch (spec.denom) {
    case Denominator::PowerOfN:
      return fn([inv](std::uint64_t i) { return inv(static_cast<real>(i)); });
    case Denominator::PowerOfOddN:
      return fn([inv](std::uint64_t i) { return inv(static_cast<real>(2 * i - 1)); });
    case Denominator::Composite9:
      // (4i+3)^s / (i(4i+3))^s - i^s / (i(4i+3))^s
      return fn([inv](std::uint64_t i) {
        return inv(static_cast<real>(i)) - inv(static_cast<real>(4 * i + 3));
      });
    case Denominator::ReciprocalPronic:
      return fn([](std::uint64_t i) {
        return 1 / (static_cast<real>(i) * static_cast<real>(i + 1));
      });
    case Denominator::SquaredPronicDifference:
      return fn([](std::uint64_t i) {
        const real x = static_cast<real>(i);
        return (2 * x + 1) / (x * x * (x + 1) * (x + 1));
      });
  }
  throw std::logic_error("unknown denominator");
}

struct PartialSum {
  real value = 0;
  real magnitude = 0;
};

PartialSum sum_terms(const SeriesSpec& spec, real s, std::uint64_t terms, const Config& config) {
  const std::uint64_t offset = coefficient_offset(spec);
  return with_coefficient(spec.coeffs, [&](auto coef) {
    return with_weight(spec, s, [&](auto weight) {
      auto chunks = map_chunks(1, terms, config.worker_count(),
                               [&](std::uint64_t lo, std::uint64_t hi) {
                                 CompensatedSum<real> acc;
                                 for (std::uint64_t i = lo; i <= hi; ++i) {
                                   const real c = coef(i - offset);
                                   if (c != 0) acc.add(c * weight(i));
                                 }
                                 return acc;
                               });
      CompensatedSum<real> total;
      for (const auto& chunk : chunks) total.merge(chunk);
      return PartialSum{total.value(), total.magnitude};
    });
  });
}

/// sum over i <= terms[k-1] of c_{i-offset} i^{-(s+k)} for k = 1..K, in one
/// pass: i^{-(s+k)} = i^{-s} * (1/i)^k.
std::vector<PartialSum> sum_power_offsets(const SeriesSpec& spec, real s,
                                          const std::vector<std::uint64_t>& terms,
                                          const Config& config) {
  const std::uint64_t offset = coefficient_offset(spec);
  const std::size_t depth = terms.size();
  const std::uint64_t longest = *std::max_element(terms.begin(), terms.end());
  const InversePower inv{s, integer_exponent(s)};
  using Accumulators = std::vector<CompensatedSum<real>>;
  auto chunks = with_coefficient(spec.coeffs, [&](auto coef) {
    return map_chunks(1, longest, config.worker_count(), [&](std::uint64_t lo, std::uint64_t hi) {
      Accumulators acc(depth);
      std::size_t active = 0;
      for (std::size_t k = 0; k < depth; ++k) {
        if (terms[k] >= lo) active = k + 1;
      }
      for (std::uint64_t i = lo; i <= hi; ++i) {
        const real c = coef(i - offset);
        if (c == 0) continue;
        const real x = static_cast<real>(i);
        const real q = 1 / x;
        real w = inv(x);
        for (std::size_t k = 0; k < active; ++k) {
          w *= q;
          if (i <= terms[k]) acc[k].add(c * w);
        }
      }
      return acc;
    });
  });
  std::vector<PartialSum> out(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    CompensatedSum<real> total;
    for (const auto& chunk : chunks) total.merge(chunk[k]);
    out[k] = {total.value(), total.magnitude};
  }
  return out;
}

real rounding_budget(const PartialSum& sum, std::uint64_t terms, real u, real per_term_ulps) {
  const real n = static_cast<real>(terms);
  return per_term_ulps * u * sum.magnitude + 2 * u * std::fabs(sum.value) +
         n * u * u * sum.magnitude;
}

/// (b-1) * integral_N^inf (log_b x + 1) x^-p dx; the integrand decreases for
/// x >= 2 when p > 1 and b >= 2.
real digit_sum_integral(unsigned base, real n, real p) {
  const real log_b = std::log(static_cast<real>(base));
  return static_cast<real>(base - 1) * std::pow(n, 1 - p) / (p - 1) *
         (1 + (std::log(n) + 1 / (p - 1)) / log_b);
}

/// zeta(sigma) - 1 <= 2^-sigma + integral_2^inf x^-sigma dx.
real zeta_minus_one_upper(real sigma) {
  return std::pow(2.0L, -sigma) * (1 + 2 / (sigma - 1));
}

}  // namespace

// SeriesSpec

void SeriesSpec::validate() const {
  const bool from_zero = coeffs.first_index() == 0;
  if (shift == Shift::ByOne) {
    if (denom != Denominator::PowerOfN) {
      throw DomainError("index shift is only defined for n^s denominators");
    }
    if (!from_zero) throw DomainError(coeffs.name() + " has no term at n = 0");
  }
  switch (denom) {
    case Denominator::PowerOfN:
    case Denominator::ReciprocalPronic:
    case Denominator::SquaredPronicDifference:
      break;
    case Denominator::PowerOfOddN:
      if (!from_zero) throw DomainError(coeffs.name() + " has no term at m = 0");
      if (coeffs.kind() == SequenceKind::DigitSum) {
        throw DomainError("digit-sum coefficients need n^s or pronic denominators");
      }
      break;
    case Denominator::Composite9:
      if (coeffs.kind() != SequenceKind::PeriodDoubling) {
        throw DomainError("the composite denominator requires period-doubling coefficients");
      }
      break;
  }
}

bool SeriesSpec::depends_on_s() const noexcept {
  return denom != Denominator::ReciprocalPronic && denom != Denominator::SquaredPronicDifference;
}

std::string SeriesSpec::describe() const {
  const std::string c = coeffs.name();
  switch (denom) {
    case Denominator::PowerOfN:
      if (shift == Shift::ByOne) return "sum_{n>=0} " + c + "/(n+1)^s";
      return "sum_{n>=1} " + c + "/n^s";
    case Denominator::PowerOfOddN:
      return "sum_{n>=0} " + c + "/(2n+1)^s";
    case Denominator::Composite9:
      return "sum_{n>=1} " + c + "((4n+3)^s - n^s)/(4n^2+3n)^s";
    case Denominator::ReciprocalPronic:
      return "sum_{n>=1} " + c + "/(n(n+1))";
    case Denominator::SquaredPronicDifference:
      return "sum_{n>=1} " + c + "(2n+1)/(n^2(n+1)^2)";
  }
  return c;
}

namespace series {

SeriesSpec f() { return {CoefficientSequence::shifted_plus_minus()}; }
SeriesSpec g() { return {CoefficientSequence::plus_minus()}; }
SeriesSpec phi() { return {CoefficientSequence::shifted_thue_morse()}; }
SeriesSpec gamma() { return {CoefficientSequence::thue_morse()}; }
SeriesSpec delta() { return {CoefficientSequence::delta()}; }
SeriesSpec odd_epsilon() {
  return {CoefficientSequence::plus_minus(), Shift::None, Denominator::PowerOfOddN};
}
SeriesSpec composite9() {
  return {CoefficientSequence::period_doubling(), Shift::None, Denominator::Composite9};
}
SeriesSpec zeta() { return {CoefficientSequence::ones()}; }
SeriesSpec digit_sum(unsigned base) { return {CoefficientSequence::digit_sum(base)}; }
SeriesSpec shallit(unsigned base) {
  return {CoefficientSequence::digit_sum(base), Shift::None, Denominator::ReciprocalPronic};
}
SeriesSpec allouche_shallit() {
  return {CoefficientSequence::digit_sum(2), Shift::None, Denominator::SquaredPronicDifference};
}
SeriesSpec affine(real a, real b, bool shifted) {
  return {CoefficientSequence::affine(a, b), shifted ? Shift::ByOne : Shift::None,
          Denominator::PowerOfN};
}

}  // namespace series

SeriesSpec parse_series_name(std::string_view name) {
  if (name == "f") return series::f();
  if (name == "g") return series::g();
  if (name == "phi") return series::phi();
  if (name == "gamma") return series::gamma();
  if (name == "delta") return series::delta();
  if (name == "odd-epsilon") return series::odd_epsilon();
  if (name == "composite9") return series::composite9();
  if (name == "zeta") return series::zeta();
  if (name.starts_with("digitsum:")) {
    const real base = parse_real(name.substr(9));
    if (base != std::floor(base) || base < 2 || base > 1'000'000) {
      throw UsageError("digitsum base must be an integer >= 2");
    }
    return series::digit_sum(static_cast<unsigned>(base));
  }
  if (name.starts_with("affine:")) {
    std::vector<std::string_view> parts;
    std::string_view rest = name.substr(7);
    for (std::size_t colon = rest.find(':'); colon != std::string_view::npos;
         colon = rest.find(':')) {
      parts.push_back(rest.substr(0, colon));
      rest = rest.substr(colon + 1);
    }
    parts.push_back(rest);
    const bool shifted = parts.size() == 3 && parts[2] == "shifted";
    if (parts.size() != 2 && !shifted) {
      throw UsageError("expected affine:a:b or affine:a:b:shifted");
    }
    return series::affine(parse_real(parts[0]), parse_real(parts[1]), shifted);
  }
  throw UsageError("unknown series '" + std::string(name) + "'");
}

// Truncation

real tail_bound(const SeriesSpec& spec, real s, std::uint64_t terms) {
  const real n = static_cast<real>(std::max<std::uint64_t>(terms, 1));
  const auto uniform = spec.coeffs.uniform_bound();
  const auto partial = spec.coeffs.partial_sum_bound();
  const unsigned base = spec.coeffs.base();
  real integral = std::numeric_limits<real>::infinity();
  real abel = std::numeric_limits<real>::infinity();
  switch (spec.denom) {
    case Denominator::PowerOfN:
      integral = uniform ? *uniform * std::pow(n, 1 - s) / (s - 1)
                         : digit_sum_integral(base, std::max(n, real{2}), s);
      // Summation by parts with decreasing weights: |tail| <= 2 B w_{N+1}.
      if (partial) abel = 2 * *partial * std::pow(n + 1, -s);
      break;
    case Denominator::PowerOfOddN:
      integral = *uniform * std::pow(2 * n - 1, 1 - s) / (2 * (s - 1));
      if (partial) abel = 2 * *partial * std::pow(2 * n + 1, -s);
      break;
    case Denominator::Composite9:
      // each term is at most n^-s
      integral = std::pow(n, 1 - s) / (s - 1);
      break;
    case Denominator::ReciprocalPronic:
      integral = uniform ? *uniform / (n + 1) : digit_sum_integral(base, std::max(n, real{2}), 2);
      break;
    case Denominator::SquaredPronicDifference:
      integral = uniform ? *uniform / ((n + 1) * (n + 1))
                         : 2 * digit_sum_integral(base, std::max(n, real{2}), 3);
      break;
  }
  return std::min(integral, abel);
}

std::uint64_t required_terms(const SeriesSpec& spec, real s, real target, const Config& config) {
  const std::uint64_t first = spec.coeffs.kind() == SequenceKind::DigitSum ? 2 : 1;
  if (tail_bound(spec, s, first) <= target) return first;
  std::uint64_t lo = first;
  std::uint64_t hi = first * 2;
  while (tail_bound(spec, s, hi) > target) {
    lo = hi;
    if (hi >= kSearchLimit) {
      throw ResourceError(spec.describe() + ": tolerance needs more than 4.6e18 terms",
                          kSearchLimit);
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (tail_bound(spec, s, mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (hi > config.max_terms) {
    throw ResourceError(spec.describe() + ": tolerance needs N = " + std::to_string(hi) +
                            " terms, above the cap of " + std::to_string(config.max_terms),
                        hi);
  }
  return hi;
}

// Direct summation

EvalResult eval_naive_terms(const SeriesSpec& spec, real s, std::uint64_t terms,
                            const Config& config) {
  validate(config);
  spec.validate();
  if (spec.depends_on_s()) check_s(s);
  if (terms == 0) throw DomainError("at least one term is required");
  const PartialSum sum = sum_terms(spec, s, terms, config);
  EvalResult result;
  result.value = sum.value;
  result.abs_error_bound =
      tail_bound(spec, s, terms) + rounding_budget(sum, terms, config.unit_roundoff(), 32);
  result.terms_used = terms;
  result.method = Method::Naive;
  return result;
}

EvalResult eval_naive(const SeriesSpec& spec, real s, real eps, const Config& config) {
  validate(config);
  spec.validate();
  if (spec.depends_on_s()) check_s(s);
  check_eps(eps);
  const std::uint64_t terms = required_terms(spec, s, eps * 0.9L, config);
  EvalResult result = eval_naive_terms(spec, s, terms, config);
  if (result.abs_error_bound > eps) {
    throw ResourceError("tolerance is below the rounding level of the working precision");
  }
  return result;
}

EvalResult eval_odd_series(real s, real eps, const Config& config) {
  EvalResult result = eval_naive(series::odd_epsilon(), s, eps, config);
  result.method = Method::OddDecomposition;
  return result;
}

real odd_to_f_factor(real s) {
  const real p = std::pow(2.0L, s);
  return p / (p + 1);
}

EvalResult eval_f_via_odd(real s, real eps, const Config& config) {
  check_s(s);
  check_eps(eps);
  const real factor = odd_to_f_factor(s);
  const EvalResult odd = eval_odd_series(s, eps * 0.9L / factor, config);
  EvalResult result;
  result.value = factor * odd.value;
  result.abs_error_bound =
      factor * odd.abs_error_bound + 8 * config.unit_roundoff() * std::fabs(result.value);
  result.terms_used = odd.terms_used;
  result.method = Method::OddDecomposition;
  return result;
}

// Functional equation

real rising_binomial(real x, int k) {
  real result = 1;
  for (int j = 0; j < k; ++j) result = result * (x + j) / (j + 1);
  return result;
}

real functional_equation_weight(real s, int k) {
  return std::pow(2.0L, -s - k) * rising_binomial(s, k);
}

EvalResult eval_functional_equation(real s, real eps, int depth, const Config& config) {
  validate(config);
  check_s(s);
  check_eps(eps);
  if (depth < 1) throw DomainError("functional-equation depth must be >= 1");
  const real u = config.unit_roundoff();
  const std::size_t count = static_cast<std::size_t>(depth);

  // w_{k+1} = w_k (s+k) / (2(k+1)); this ratio decreases in k for s > 1.
  std::vector<real> weights(count + 1);
  weights[0] = s * std::pow(2.0L, -s - 1);
  for (std::size_t j = 1; j <= count; ++j) {
    weights[j] = weights[j - 1] * (s + static_cast<real>(j)) / (2 * static_cast<real>(j + 1));
  }
  const real ratio = (s + depth + 1) / (2 * static_cast<real>(depth + 2));
  if (ratio >= 1) {
    throw ResourceError("functional-equation depth " + std::to_string(depth) +
                        " is too small for s; increase --depth");
  }
  // sum_{k>K} w_k = (1 - 2^-s) - sum_{k<=K} w_k, and f(s+k) = 1 + O(zeta(s+k) - 1).
  CompensatedSum<real> tail_weight;
  tail_weight.add(1);
  tail_weight.add(-std::pow(2.0L, -s));
  for (std::size_t j = 0; j < count; ++j) tail_weight.add(-weights[j]);
  const real tail_weight_major = weights[count] / (1 - ratio);
  const real truncation = tail_weight_major * zeta_minus_one_upper(s + depth + 1) +
                          4 * static_cast<real>(depth + 2) * u;
  if (truncation > eps / 2) {
    throw ResourceError("functional-equation depth " + std::to_string(depth) +
                        " cannot reach the tolerance; increase --depth");
  }

  // Each inner evaluation contributes at most eps / (2K) after weighting.
  const SeriesSpec inner = series::f();
  std::vector<std::uint64_t> terms(count);
  for (std::size_t j = 0; j < count; ++j) {
    const real inner_eps = eps / (2 * static_cast<real>(depth) * weights[j]);
    terms[j] = required_terms(inner, s + static_cast<real>(j + 1), inner_eps * 0.8L, config);
  }
  const auto sums = sum_power_offsets(inner, s, terms, config);

  CompensatedSum<real> total;
  real inner_error = 0;
  for (std::size_t j = 0; j < count; ++j) {
    const real sigma = s + static_cast<real>(j + 1);
    const real err = tail_bound(inner, sigma, terms[j]) +
                     rounding_budget(sums[j], terms[j], u, 32 + 2 * static_cast<real>(j + 1));
    inner_error += weights[j] * err;
    total.add(weights[j] * sums[j].value);
  }
  total.add(tail_weight.value());

  EvalResult result;
  result.value = total.value();
  result.abs_error_bound = inner_error + truncation + 8 * u * total.magnitude;
  result.terms_used = *std::max_element(terms.begin(), terms.end());
  result.method = Method::FunctionalEquation;
  if (result.abs_error_bound > eps) {
    throw ResourceError("functional equation could not meet the tolerance at depth " +
                        std::to_string(depth));
  }
  return result;
}

// Linear forms in zeta and f

std::optional<LinearForm> f_linear_form(const SeriesSpec& spec, real s) {
  if (spec.denom != Denominator::PowerOfN) return std::nullopt;
  const real p = std::pow(2.0L, s);
  const real g_over_f = (1 + p) / (1 - p);
  int shift = spec.shift == Shift::ByOne ? 1 : 0;
  const auto& c = spec.coeffs;
  switch (c.kind()) {
    case SequenceKind::ShiftedThueMorse:
    case SequenceKind::ShiftedPlusMinus:
      ++shift;
      break;
    default:
      break;
  }
  if (shift > 1) return std::nullopt;
  switch (c.kind()) {
    case SequenceKind::ThueMorse:
    case SequenceKind::ShiftedThueMorse:
      // t = (1 - eps) / 2
      return shift == 0 ? LinearForm{0.5L, -g_over_f / 2} : LinearForm{0.5L, -0.5L};
    case SequenceKind::PlusMinus:
    case SequenceKind::ShiftedPlusMinus:
      return shift == 0 ? LinearForm{0, g_over_f} : LinearForm{0, 1};
    case SequenceKind::Delta:
      // gamma - phi
      if (shift != 0) return std::nullopt;
      return LinearForm{0, p / (p - 1)};
    case SequenceKind::Affine: {
      const real mean = (c.a() + c.b()) / 2;
      const real spread = c.b() - c.a();
      return shift == 0 ? LinearForm{mean, -spread * g_over_f / 2}
                        : LinearForm{mean, -spread / 2};
    }
    default:
      return std::nullopt;
  }
}

EvalResult eval_linear_form(const LinearForm& form, real s, real eps, const Config& config,
                            Method f_route) {
  validate(config);
  check_s(s);
  check_eps(eps);
  if (f_route != Method::FunctionalEquation && f_route != Method::OddDecomposition) {
    throw DomainError("f can only be evaluated by the functional equation or the odd route");
  }
  const real u = config.unit_roundoff();
  const bool has_zeta = form.zeta_coef != 0;
  const bool has_f = form.f_coef != 0;
  const real share = (has_zeta && has_f) ? eps * 0.45L : eps * 0.9L;

  EvalResult result;
  result.method = has_f ? f_route : Method::EulerMaclaurin;
  real zeta_part = 0;
  real f_part = 0;
  if (has_zeta) {
    const auto zeta = riemann_zeta<real>(
        s, Precision{config.precision_bits, share / std::fabs(form.zeta_coef)});
    zeta_part = form.zeta_coef * zeta.value;
    result.abs_error_bound += std::fabs(form.zeta_coef) * zeta.abs_error_bound;
    result.terms_used += zeta.terms_used;
  }
  if (has_f) {
    const real f_eps = share / std::fabs(form.f_coef);
    const EvalResult fv = f_route == Method::FunctionalEquation
                              ? eval_functional_equation(s, f_eps, config.fe_depth, config)
                              : eval_f_via_odd(s, f_eps, config);
    f_part = form.f_coef * fv.value;
    result.abs_error_bound += std::fabs(form.f_coef) * fv.abs_error_bound;
    result.terms_used += fv.terms_used;
  }
  result.value = zeta_part + f_part;
  // coefficients carry a few ulps from 2^s and the rational factors
  result.abs_error_bound += 16 * u * (std::fabs(zeta_part) + std::fabs(f_part));
  return result;
}

EvalResult eval_phi_gamma(PhiGamma which, real s, real eps, const Config& config, Method f_route) {
  const SeriesSpec spec = which == PhiGamma::Phi ? series::phi() : series::gamma();
  return eval_linear_form(*f_linear_form(spec, s), s, eps, config, f_route);
}

EvalResult eval_composite9(real s, real eps, const Config& config) {
  return eval_naive(series::composite9(), s, eps, config);
}

EvalResult evaluate(const SeriesSpec& spec, real s, real eps, const Config& config,
                    Method method) {
  spec.validate();
  const bool odd_epsilon = spec == series::odd_epsilon();
  switch (method) {
    case Method::Naive:
      return eval_naive(spec, s, eps, config);
    case Method::EulerMaclaurin: {
      if (spec != series::zeta()) {
        throw DomainError("Euler-Maclaurin applies only to the zeta coefficients");
      }
      check_s(s);
      check_eps(eps);
      validate(config);
      return riemann_zeta<real>(s, Precision{config.precision_bits, eps});
    }
    case Method::OddDecomposition:
      if (odd_epsilon) return eval_odd_series(s, eps, config);
      [[fallthrough]];
    case Method::FunctionalEquation: {
      if (spec.depends_on_s()) check_s(s);
      const auto form = f_linear_form(spec, s);
      if (!form) {
        throw DomainError(std::string(to_string(method)) + " does not apply to " +
                          spec.describe());
      }
      return eval_linear_form(*form, s, eps, config, method);
    }
    case Method::Auto: {
      if (odd_epsilon) return eval_odd_series(s, eps, config);
      if (spec.depends_on_s()) check_s(s);
      if (const auto form = f_linear_form(spec, s)) {
        return eval_linear_form(*form, s, eps, config, Method::FunctionalEquation);
      }
      return eval_naive(spec, s, eps, config);
    }
  }
  throw std::logic_error("unknown method");
}

}  // namespace autoseries
