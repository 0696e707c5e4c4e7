#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autoseries/evaluator.hpp"
#include "autoseries/types.hpp"

namespace autoseries {

/// alpha * 2^s + beta. Covers every coefficient function used by the
/// identities: 2^s + 1, 2^s - 1 and constants.
struct CoefficientFunction {
  real alpha = 0;
  real beta = 0;

  static CoefficientFunction constant(real c) { return {0, c}; }
  real operator()(real s) const;
  std::string describe() const;

  friend bool operator==(const CoefficientFunction&, const CoefficientFunction&) = default;
};

/// Value of an expression with a bound on its absolute error.
struct Evaluation {
  real value = 0;
  real bound = 0;
  std::uint64_t terms = 0;
};

/// Closed-form expression tree over zeta(s), eta(s), zeta(s, a), series
/// leaves, pi, logarithms and constants. Leaves that need a tolerance are
/// "inexact"; a product or quotient may contain at most one inexact factor
/// (the numerator for quotients), which is what lets an absolute tolerance be
/// pushed down to the leaves exactly.
class Expr {
 public:
  enum class Kind {
    Constant,
    Pi,
    Log,
    Sqrt,
    Power,        // base^(scale * s)
    Coefficient,  // alpha 2^s + beta
    RatioFactor,  // (1 - 2^s) / (1 + 2^s)
    Zeta,
    Eta,
    Hurwitz,
    Series,
    Sum,
    Product,
    Quotient,
  };

  static Expr constant(real value);
  static Expr rational(long long numerator, long long denominator);
  static Expr pi();
  static Expr log(real x);
  static Expr sqrt(real x);
  static Expr power(real base, real scale);
  static Expr coefficient(CoefficientFunction c);
  static Expr ratio_factor();
  static Expr zeta();
  static Expr eta();
  static Expr hurwitz(real a);
  static Expr series(SeriesSpec spec, Method method = Method::Auto);

  friend Expr operator+(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& operand);
  friend Expr operator*(const Expr& lhs, const Expr& rhs);
  friend Expr operator/(const Expr& lhs, const Expr& rhs);

  Kind kind() const;
  /// True when no leaf needs a tolerance.
  bool exact() const;
  std::string describe() const;

  /// Evaluates at s so that the reported bound is close to (and normally
  /// below) eps. series_method, when set, replaces Method::Auto on series
  /// leaves.
  Evaluation evaluate(real s, real eps, const Config& config,
                      std::optional<Method> series_method = std::nullopt) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static std::shared_ptr<const Node> leaf(Kind kind, real a = 0, real b = 0);
  static Expr combine(Kind kind, const Expr& lhs, const Expr& rhs);

  std::shared_ptr<const Node> node_;
};

}  // namespace autoseries
