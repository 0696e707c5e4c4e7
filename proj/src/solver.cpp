#include "autoseries/solver.hpp"

#include <cmath>
#include <sstream>

namespace autoseries {

std::string_view to_string(AlphabetCase which) noexcept {
  switch (which) {
    case AlphabetCase::Zero:
      return "zero";
    case AlphabetCase::PowS:
      return "pows";
    case AlphabetCase::PowSMinus2:
      return "pows-minus-2";
  }
  return "unknown";
}

std::optional<AlphabetCase> alphabet_case_from_string(std::string_view name) noexcept {
  if (name == "zero") return AlphabetCase::Zero;
  if (name == "pows" || name == "zeta") return AlphabetCase::PowS;
  if (name == "pows-minus-2" || name == "powsminus2" || name == "eta") {
    return AlphabetCase::PowSMinus2;
  }
  return std::nullopt;
}

real lambda_fn(real s, real k, real l) {
  const real p = std::pow(2.0L, s);
  return p - (p * (k - l) + (k + l));
}

real case_target(AlphabetCase which, real s) {
  switch (which) {
    case AlphabetCase::Zero:
      return 0;
    case AlphabetCase::PowS:
      return std::pow(2.0L, s);
    case AlphabetCase::PowSMinus2:
      return std::pow(2.0L, s) - 2;
  }
  return 0;
}

AlphabetSolution solve_case(AlphabetCase which, real k, real l) {
  if (!std::isfinite(k) || !std::isfinite(l)) throw DomainError("k and l must be finite");
  real ratio = 0;
  switch (which) {
    case AlphabetCase::Zero:
      // 2^s (1 - k + l) = k + l
      if (k == l + 1) throw DomainError("case zero requires k != l + 1");
      if (k + l == 0) throw DomainError("case zero requires k + l != 0");
      ratio = (k + l) / (-k + l + 1);
      if (!(ratio > 0)) throw DomainError("case zero requires (k + l)/(-k + l + 1) > 0");
      break;
    case AlphabetCase::PowS:
      // 2^s (k - l) + (k + l) = 0
      if (k == l) throw DomainError("case pows requires k != l");
      if (k + l == 0) throw DomainError("case pows requires k + l != 0");
      ratio = -(k + l) / (k - l);
      if (!(ratio > 0)) throw DomainError("case pows requires -(k + l)/(k - l) > 0");
      break;
    case AlphabetCase::PowSMinus2:
      // 2^s (k - l) + (k + l) = 2
      if (k == l) throw DomainError("case pows-minus-2 requires k != l");
      if (k + l == 2) throw DomainError("case pows-minus-2 requires k + l != 2");
      ratio = -(k + l - 2) / (k - l);
      if (!(ratio > 0)) throw DomainError("case pows-minus-2 requires -(k + l - 2)/(k - l) > 0");
      break;
  }
  if (!std::isfinite(ratio)) throw DomainError("solution ratio overflows");

  AlphabetSolution solution{k, l, which, std::log2(ratio), 0};
  const real p = std::pow(2.0L, solution.s);
  solution.lambda_residual = std::fabs(lambda_fn(solution.s, k, l) - case_target(which, solution.s));
  if (solution.lambda_residual > 1e-12L * (1 + p)) {
    throw DomainError("solution is numerically ill-conditioned (lambda residual " +
                      std::to_string(static_cast<double>(solution.lambda_residual)) + ")");
  }
  return solution;
}

Identity alphabet_identity(AlphabetCase which, real k, real l, Domain domain, real fixed_s) {
  // q_{n-1} summed against n^s is q_n summed against (n+1)^s.
  const SeriesSpec q = series::affine(-k, 1 - k, /*shifted=*/true);
  const SeriesSpec r = series::affine(l, 1 + l, /*shifted=*/false);
  std::ostringstream name;
  name.precision(17);
  name << "alphabet:" << to_string(which) << ":k=" << static_cast<double>(k)
       << ":l=" << static_cast<double>(l);
  Identity identity;
  identity.id = name.str();
  identity.domain = domain;
  identity.fixed_s = fixed_s;
  switch (which) {
    case AlphabetCase::Zero:
      identity.lhs = {{CoefficientFunction::constant(1), q}};
      identity.rhs = Expr::ratio_factor() * Expr::series(r);
      identity.description =
          "sum q(n-1)/n^s = (1-2^s)/(1+2^s) sum r(n)/n^s, q = t - k, r = t + l";
      break;
    case AlphabetCase::PowS:
    case AlphabetCase::PowSMinus2:
      identity.lhs = {{{1, 1}, q}, {{1, -1}, r}};
      identity.rhs = Expr::power(2, 1) *
                     (which == AlphabetCase::PowS ? Expr::zeta() : Expr::eta());
      identity.description = std::string("(2^s+1) sum q(n-1)/n^s + (2^s-1) sum r(n)/n^s = 2^s ") +
                             (which == AlphabetCase::PowS ? "zeta(s)" : "eta(s)") +
                             ", q = t - k, r = t + l";
      break;
  }
  return identity;
}

Identity mint_identity(const AlphabetSolution& solution) {
  if (!solution.usable()) {
    throw DomainError("solution s = " + std::to_string(static_cast<double>(solution.s)) +
                      " is not > 1; the series do not converge there");
  }
  return alphabet_identity(solution.which, solution.k, solution.l, Domain::FixedS, solution.s);
}

}  // namespace autoseries
