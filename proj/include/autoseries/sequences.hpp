#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>

#include "autoseries/types.hpp"

namespace autoseries {

/// Thue-Morse bit: parity of the number of 1-bits of n.
constexpr int thue_morse(std::uint64_t n) noexcept { return std::popcount(n) & 1; }

/// ±1 Thue-Morse sequence (-1)^t_n.
constexpr int pm_thue_morse(std::uint64_t n) noexcept { return 1 - 2 * thue_morse(n); }

/// t_n - t_{n-1}; throws DomainError for n = 0.
int delta(std::uint64_t n);

/// Period-doubling sequence: sigma(2n) = 0, sigma(4n+1) = 1,
/// sigma(4n+3) = sigma(n), sigma(0) = 0.
constexpr int period_doubling(std::uint64_t n) noexcept {
  while ((n & 3U) == 3U) n >>= 2;
  return (n & 3U) == 1U ? 1 : 0;
}

/// Sum of the base-b digits of n; throws DomainError for b < 2.
unsigned digit_sum(std::uint64_t n, unsigned base);

/// Substitution 0 -> a, 1 -> b applied to t_n.
constexpr real affine_seq(std::uint64_t n, real a, real b) noexcept {
  return thue_morse(n) == 0 ? a : b;
}

enum class SequenceKind {
  ThueMorse,
  ShiftedThueMorse,
  PlusMinus,
  ShiftedPlusMinus,
  Delta,
  PeriodDoubling,
  DigitSum,
  Affine,
};

/// An exact coefficient stream n -> c_n with a uniform majorant C(n) >= |c_n|.
class CoefficientSequence {
 public:
  static CoefficientSequence thue_morse() { return CoefficientSequence(SequenceKind::ThueMorse); }
  static CoefficientSequence shifted_thue_morse() {
    return CoefficientSequence(SequenceKind::ShiftedThueMorse);
  }
  static CoefficientSequence plus_minus() { return CoefficientSequence(SequenceKind::PlusMinus); }
  static CoefficientSequence shifted_plus_minus() {
    return CoefficientSequence(SequenceKind::ShiftedPlusMinus);
  }
  static CoefficientSequence delta() { return CoefficientSequence(SequenceKind::Delta); }
  static CoefficientSequence period_doubling() {
    return CoefficientSequence(SequenceKind::PeriodDoubling);
  }
  static CoefficientSequence digit_sum(unsigned base);
  /// a where t_n = 0, b where t_n = 1.
  static CoefficientSequence affine(real a, real b);
  /// c_n = 1, the coefficients of the Riemann zeta function.
  static CoefficientSequence ones() { return affine(1, 1); }

  SequenceKind kind() const noexcept { return kind_; }
  real a() const noexcept { return a_; }
  real b() const noexcept { return b_; }
  unsigned base() const noexcept { return base_; }

  /// Smallest index at which the sequence is defined.
  std::uint64_t first_index() const noexcept;

  /// c_n; throws DomainError below first_index().
  real value(std::uint64_t n) const;

  /// C(n) with |c_n| <= C(n).
  real value_bound(std::uint64_t n) const noexcept;

  /// Largest constant majorant, when one exists (every kind except DigitSum).
  std::optional<real> uniform_bound() const noexcept;

  /// B with |c_{first} + ... + c_n| <= B for every n, when such B exists.
  std::optional<real> partial_sum_bound() const noexcept;

  std::string name() const;

  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;

 private:
  explicit CoefficientSequence(SequenceKind kind) : kind_(kind) {}

  SequenceKind kind_;
  real a_ = 0;
  real b_ = 0;
  unsigned base_ = 2;
};

/// Calls fn with a callable coef(n) -> real specialized for the sequence kind,
/// so hot summation loops avoid a per-term dispatch.
template <class Fn>
decltype(auto) with_coefficient(const CoefficientSequence& seq, Fn&& fn) {
  switch (seq.kind()) {
    case SequenceKind::ThueMorse:
      return fn([](std::uint64_t n) -> real { return static_cast<real>(thue_morse(n)); });
    case SequenceKind::ShiftedThueMorse:
      return fn([](std::uint64_t n) -> real { return static_cast<real>(thue_morse(n - 1)); });
    case SequenceKind::PlusMinus:
      return fn([](std::uint64_t n) -> real { return static_cast<real>(pm_thue_morse(n)); });
    case SequenceKind::ShiftedPlusMinus:
      return fn([](std::uint64_t n) -> real { return static_cast<real>(pm_thue_morse(n - 1)); });
    case SequenceKind::Delta:
      return fn([](std::uint64_t n) -> real {
        return static_cast<real>(thue_morse(n) - thue_morse(n - 1));
      });
    case SequenceKind::PeriodDoubling:
      return fn([](std::uint64_t n) -> real { return static_cast<real>(period_doubling(n)); });
    case SequenceKind::DigitSum: {
      const unsigned base = seq.base();
      if (base == 2) {
        return fn([](std::uint64_t n) -> real { return static_cast<real>(std::popcount(n)); });
      }
      return fn([base](std::uint64_t n) -> real {
        unsigned total = 0;
        for (; n != 0; n /= base) total += static_cast<unsigned>(n % base);
        return static_cast<real>(total);
      });
    }
    case SequenceKind::Affine: {
      const real a = seq.a();
      const real b = seq.b();
      return fn([a, b](std::uint64_t n) -> real { return affine_seq(n, a, b); });
    }
  }
  throw std::logic_error("unknown sequence kind");
}

}  // namespace autoseries
