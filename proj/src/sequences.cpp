#include "autoseries/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace autoseries {

int delta(std::uint64_t n) {
  if (n == 0) throw DomainError("delta(n) is defined for n >= 1");
  return thue_morse(n) - thue_morse(n - 1);
}

unsigned digit_sum(std::uint64_t n, unsigned base) {
  if (base < 2) throw DomainError("digit_sum requires base >= 2");
  unsigned total = 0;
  for (; n != 0; n /= base) total += static_cast<unsigned>(n % base);
  return total;
}

CoefficientSequence CoefficientSequence::digit_sum(unsigned base) {
  if (base < 2) throw DomainError("digit-sum sequence requires base >= 2");
  CoefficientSequence seq(SequenceKind::DigitSum);
  seq.base_ = base;
  return seq;
}

CoefficientSequence CoefficientSequence::affine(real a, real b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("affine sequence parameters must be finite");
  }
  CoefficientSequence seq(SequenceKind::Affine);
  seq.a_ = a;
  seq.b_ = b;
  return seq;
}

std::uint64_t CoefficientSequence::first_index() const noexcept {
  switch (kind_) {
    case SequenceKind::ShiftedThueMorse:
    case SequenceKind::ShiftedPlusMinus:
    case SequenceKind::Delta:
      return 1;
    default:
      return 0;
  }
}

real CoefficientSequence::value(std::uint64_t n) const {
  if (n < first_index()) {
    throw DomainError(name() + " is undefined at n = " + std::to_string(n));
  }
  return with_coefficient(*this, [n](auto coef) { return coef(n); });
}

real CoefficientSequence::value_bound(std::uint64_t n) const noexcept {
  if (kind_ == SequenceKind::DigitSum) {
    // s_b(n) <= (b - 1) * (number of base-b digits of n)
    std::uint64_t digits = 1;
    for (std::uint64_t m = n / base_; m != 0; m /= base_) ++digits;
    return static_cast<real>(base_ - 1) * static_cast<real>(digits);
  }
  return *uniform_bound();
}

std::optional<real> CoefficientSequence::uniform_bound() const noexcept {
  switch (kind_) {
    case SequenceKind::DigitSum:
      return std::nullopt;
    case SequenceKind::Affine:
      return std::max(std::fabs(a_), std::fabs(b_));
    default:
      return real{1};
  }
}

std::optional<real> CoefficientSequence::partial_sum_bound() const noexcept {
  switch (kind_) {
    // eps_{2m} + eps_{2m+1} = 0, so partial sums from any start stay in [-2, 2].
    case SequenceKind::PlusMinus:
    case SequenceKind::ShiftedPlusMinus:
      return real{2};
    // telescopes to t_n - t_0
    case SequenceKind::Delta:
      return real{1};
    case SequenceKind::Affine:
      if (a_ + b_ == 0) return 2 * std::fabs(a_);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::string CoefficientSequence::name() const {
  switch (kind_) {
    case SequenceKind::ThueMorse:
      return "t(n)";
    case SequenceKind::ShiftedThueMorse:
      return "t(n-1)";
    case SequenceKind::PlusMinus:
      return "eps(n)";
    case SequenceKind::ShiftedPlusMinus:
      return "eps(n-1)";
    case SequenceKind::Delta:
      return "delta(n)";
    case SequenceKind::PeriodDoubling:
      return "sigma(n)";
    case SequenceKind::DigitSum:
      return "s_" + std::to_string(base_) + "(n)";
    case SequenceKind::Affine: {
      std::ostringstream out;
      out.precision(12);
      out << "{" << static_cast<double>(a_) << "," << static_cast<double>(b_) << "}(n)";
      return out.str();
    }
  }
  return "?";
}

}  // namespace autoseries
