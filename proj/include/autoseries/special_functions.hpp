#pragma once

// Riemann zeta, Dirichlet eta and Hurwitz zeta for real s > 1.
//
// zeta(s, a) = sum_{n<N} (n+a)^-s + (N+a)^{1-s}/(s-1) + (N+a)^-s / 2
//            + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1} + R,
// |R| <= 4 (s)_{2M} / (2 pi)^{2M} * (N+a)^{1-s-2M} / (s+2M-1),
// using |B~_{2M}(x)| <= |B_{2M}| <= 4 (2M)! / (2 pi)^{2M}.
//
// Templated on the real type so tests can re-run the same schedule in a
// wider type.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "autoseries/summation.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

namespace detail {

// B_2, B_4, ..., B_30 as numerator / denominator.
inline constexpr std::array<std::array<long long, 2>, 15> kBernoulliEven{{
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029LL, 870},
    {8615841276005LL, 14322},
}};

inline constexpr int kMaxEulerMaclaurinOrder = 15;

template <class Real>
Real pi_value() {
  using std::acos;
  return acos(Real(-1));
}

template <class Real>
void check_precision(const Precision& prec) {
  if (!(prec.target_eps > 0)) throw DomainError("target_eps must be positive");
  if (prec.working_bits < kMinPrecisionBits ||
      prec.working_bits > std::numeric_limits<Real>::digits) {
    throw UsageError("working precision must be between " + std::to_string(kMinPrecisionBits) +
                     " and " + std::to_string(std::numeric_limits<Real>::digits) + " bits");
  }
}

// Remainder bound after M Bernoulli corrections at cutoff N.
template <class Real>
Real euler_maclaurin_remainder(Real s, Real shifted_n, int order) {
  using std::pow;
  Real rising = 1;  // (s)_{2M}
  for (int i = 0; i < 2 * order; ++i) rising *= s + i;
  const Real two_pi = 2 * pi_value<Real>();
  return 4 * rising / pow(two_pi, 2 * order) * pow(shifted_n, 1 - s - 2 * order) /
         (s + 2 * order - 1);
}

}  // namespace detail

/// Hurwitz zeta sum_{n>=0} (n+a)^-s for s > 1, 0 < a <= 1.
template <class Real>
BasicEvalResult<Real> hurwitz_zeta(Real s, Real a, const Precision& prec) {
  using std::abs;
  using std::ceil;
  using std::ldexp;
  using std::pow;
  detail::check_precision<Real>(prec);
  if (!(s > 1)) throw DomainError("zeta requires s > 1");
  if (!(a > 0 && a <= 1)) throw DomainError("Hurwitz zeta requires 0 < a <= 1");

  const Real target = Real(prec.target_eps) * Real(0.9);
  const Real u = ldexp(Real(1), -prec.working_bits);

  // Smallest (N, M) on a doubling grid of N whose remainder meets the target.
  std::uint64_t cutoff = 10;
  if (s > 10) cutoff = static_cast<std::uint64_t>(static_cast<double>(ceil(s)));
  int order = 1;
  Real remainder = 0;
  for (;; cutoff *= 2) {
    if (cutoff > (std::uint64_t{1} << 40)) {
      throw ResourceError("Euler-Maclaurin cutoff exceeded for target " +
                          std::to_string(static_cast<double>(prec.target_eps)));
    }
    bool met = false;
    for (order = 1; order <= detail::kMaxEulerMaclaurinOrder; ++order) {
      remainder = detail::euler_maclaurin_remainder(s, Real(cutoff) + a, order);
      if (remainder <= target) {
        met = true;
        break;
      }
    }
    if (met) break;
  }

  CompensatedSum<Real> head;
  for (std::uint64_t n = 0; n < cutoff; ++n) head.add(pow(Real(n) + a, -s));

  const Real x = Real(cutoff) + a;
  CompensatedSum<Real> tail;
  const Real x_pow = pow(x, -s);
  tail.add(x * x_pow / (s - 1));
  tail.add(x_pow / 2);
  Real rising = s;  // (s)_{2j-1}
  Real factorial = 2;  // (2j)!
  Real x_power = x_pow / x;  // x^{-s-2j+1}
  for (int j = 1; j <= order; ++j) {
    const auto& bern = detail::kBernoulliEven[static_cast<std::size_t>(j - 1)];
    const Real b2j = Real(bern[0]) / Real(bern[1]);
    tail.add(b2j / factorial * rising * x_power);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= Real(2 * j + 1) * Real(2 * j + 2);
    x_power /= x * x;
  }

  head.merge(tail);
  BasicEvalResult<Real> result;
  result.value = head.value();
  // pow contributes a few ulps per term; compensated summation adds 2u|S|.
  const Real rounding = 16 * u * head.magnitude + 2 * u * abs(result.value);
  result.abs_error_bound = remainder + rounding;
  result.terms_used = cutoff + static_cast<std::uint64_t>(order);
  result.method = Method::EulerMaclaurin;
  if (result.abs_error_bound > Real(prec.target_eps)) {
    throw ResourceError("zeta: rounding error exceeds the requested tolerance");
  }
  return result;
}

template <class Real>
BasicEvalResult<Real> riemann_zeta(Real s, const Precision& prec) {
  return hurwitz_zeta<Real>(s, Real(1), prec);
}

/// Dirichlet eta (1 - 2^{1-s}) zeta(s).
template <class Real>
BasicEvalResult<Real> dirichlet_eta(Real s, const Precision& prec) {
  using std::abs;
  using std::ldexp;
  using std::pow;
  if (!(s > 1)) throw DomainError("eta requires s > 1");
  const Real factor = 1 - pow(Real(2), 1 - s);
  Precision inner = prec;
  inner.target_eps = prec.target_eps * 0.9L;
  auto zeta = riemann_zeta<Real>(s, inner);
  const Real u = ldexp(Real(1), -prec.working_bits);
  BasicEvalResult<Real> result;
  result.value = factor * zeta.value;
  result.abs_error_bound = abs(factor) * zeta.abs_error_bound + 8 * u * abs(result.value);
  result.terms_used = zeta.terms_used;
  result.method = Method::EulerMaclaurin;
  return result;
}

}  // namespace autoseries
