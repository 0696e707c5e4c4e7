#pragma once

#include <string>
#include <string_view>
#include <optional>

#include "autoseries/identities.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

/// Which value lambda(s; k, l) takes: 0, 2^s or 2^s - 2.
enum class AlphabetCase { Zero, PowS, PowSMinus2 };

std::string_view to_string(AlphabetCase which) noexcept;
std::optional<AlphabetCase> alphabet_case_from_string(std::string_view name) noexcept;

struct AlphabetSolution {
  real k = 0;
  real l = 0;
  AlphabetCase which = AlphabetCase::Zero;
  real s = 0;
  /// |lambda(s; k, l) - target(s)| at the solved s.
  real lambda_residual = 0;

  /// The series only converge, and the identity is only verifiable, for s > 1.
  bool usable() const noexcept { return s > 1; }
};

/// lambda(s; k, l) = 2^s - (2^s (k - l) + (k + l)).
real lambda_fn(real s, real k, real l);

/// 0, 2^s or 2^s - 2.
real case_target(AlphabetCase which, real s);

/// Solves lambda(s; k, l) = target(s) for real s. Throws DomainError naming
/// the violated guard. Solutions with s <= 1 are returned, with usable() false.
AlphabetSolution solve_case(AlphabetCase which, real k, real l);

/// The identity for q_n = t_n - k, r_n = t_n + l:
///   Zero:       sum q_{n-1}/n^s = (1-2^s)/(1+2^s) sum r_n/n^s
///   PowS:       (2^s+1) sum q_{n-1}/n^s + (2^s-1) sum r_n/n^s = 2^s zeta(s)
///   PowSMinus2: the same left side = 2^s eta(s)
Identity alphabet_identity(AlphabetCase which, real k, real l, Domain domain, real fixed_s = 0);

/// alphabet_identity at the solved s. Throws DomainError when s <= 1.
Identity mint_identity(const AlphabetSolution& solution);

}  // namespace autoseries
