#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autoseries/evaluator.hpp"
#include "autoseries/expression.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

struct LhsTerm {
  CoefficientFunction coefficient;
  SeriesSpec series;
  Method method = Method::Auto;
};

enum class Domain {
  AllS,         // every real s > 1
  FixedS,       // only at Identity::fixed_s
  Independent,  // the identity does not involve s
};

enum class IdentityForm {
  Series,               // sum of lhs terms = rhs
  WoodsRobbinsProduct,  // checked by a partial product
};

struct Identity {
  std::string id;
  std::string description;
  std::vector<LhsTerm> lhs;
  Expr rhs = Expr::constant(0);
  Domain domain = Domain::AllS;
  real fixed_s = 0;
  /// Smallest tolerance the identity can be verified to within the default
  /// term cap; verify() never goes below it.
  real min_eps = 0;
  IdentityForm form = IdentityForm::Series;

  bool accepts(real s) const;
  Expr lhs_expression() const;
  /// s values verified by default: {2, 3, 4} for all-s identities, the fixed
  /// point, or nothing for s-independent ones.
  std::vector<real> default_s() const;
};

struct VerificationRecord {
  std::string identity_id;
  std::optional<real> s;
  real eps = 0;
  real lhs = 0;
  real lhs_bound = 0;
  real rhs = 0;
  real rhs_bound = 0;
  real residual = 0;
  bool pass = false;
  bool heuristic = false;
  std::uint64_t terms_used = 0;
  double wall_time_seconds = 0;
  /// Set when the check could not be carried out (the record then fails).
  std::string error;

  friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

struct VerifyOptions {
  /// Replaces Method::Auto on every series leaf.
  std::optional<Method> series_method;
};

/// Evaluates both sides to eps/2 each; pass iff |lhs - rhs| <= lhs_bound + rhs_bound.
VerificationRecord verify(const Identity& identity, std::optional<real> s, real eps,
                          const Config& config, const VerifyOptions& options = {});

/// u(s) phi(s) + v(s) gamma(s) = (u+v)/2 zeta(s) - f(s)/2 (u + v (1+2^s)/(1-2^s)).
/// f_method selects the route for f on the right-hand side.
Identity phi_gamma_combination(CoefficientFunction u, CoefficientFunction v,
                               Method f_method = Method::OddDecomposition);

/// Checks phi_gamma_combination with phi and gamma summed directly on the left
/// and zeta (Euler-Maclaurin) and f (functional equation) on the right.
VerificationRecord verify_phi_gamma_combination(CoefficientFunction u, CoefficientFunction v,
                                                real s, real eps, const Config& config);

/// sum_{n>=1} s_b(n) / (n(n+1)) = b/(b-1) log b.
Identity shallit(unsigned base);

inline constexpr std::uint64_t kWoodsRobbinsTerms = 1'000'000;
inline constexpr real kWoodsRobbinsThreshold = 1e-3L;

/// log of prod_{n<N} ((2n+1)/(2n+2))^eps_n.
real woods_robbins_log_product(std::uint64_t terms, bool pairing);

/// Partial product against sqrt(2)/2 with the heuristic threshold 1e-3.
VerificationRecord verify_woods_robbins(std::uint64_t terms, bool pairing);

/// Every built-in identity in a fixed order.
const std::vector<Identity>& builtin_registry();

/// Registry lookup; also resolves the parametric family shallit:b.
/// Throws UsageError for unknown ids.
Identity find_identity(std::string_view id);

}  // namespace autoseries
