#include "autoseries/expression.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "autoseries/special_functions.hpp"
#include "autoseries/summation.hpp"

namespace autoseries {

real CoefficientFunction::operator()(real s) const {
  return alpha == 0 ? beta : alpha * std::pow(2.0L, s) + beta;
}

std::string CoefficientFunction::describe() const {
  std::ostringstream out;
  out.precision(12);
  if (alpha == 0) {
    out << static_cast<double>(beta);
    return out.str();
  }
  if (alpha != 1) out << static_cast<double>(alpha) << "*";
  out << "2^s";
  if (beta > 0) out << "+" << static_cast<double>(beta);
  if (beta < 0) out << "-" << static_cast<double>(-beta);
  return out.str();
}

struct Expr::Node {
  Kind kind = Kind::Constant;
  real a = 0;
  real b = 0;
  CoefficientFunction coefficient{};
  SeriesSpec spec{};
  Method method = Method::Auto;
  std::vector<Expr> children;
};

namespace {

std::string format_number(real v) {
  std::ostringstream out;
  out.precision(12);
  out << static_cast<double>(v);
  return out.str();
}

}  // namespace

std::shared_ptr<const Expr::Node> Expr::leaf(Kind kind, real a, real b) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->a = a;
  node->b = b;
  return node;
}

Expr Expr::constant(real value) { return Expr(leaf(Kind::Constant, value)); }

Expr Expr::rational(long long numerator, long long denominator) {
  return constant(static_cast<real>(numerator) / static_cast<real>(denominator));
}

Expr Expr::pi() { return Expr(leaf(Kind::Pi)); }

Expr Expr::log(real x) {
  if (!(x > 0)) throw DomainError("log of a non-positive constant");
  return Expr(leaf(Kind::Log, x));
}

Expr Expr::sqrt(real x) {
  if (x < 0) throw DomainError("sqrt of a negative constant");
  return Expr(leaf(Kind::Sqrt, x));
}

Expr Expr::power(real base, real scale) {
  if (!(base > 0)) throw DomainError("power base must be positive");
  return Expr(leaf(Kind::Power, base, scale));
}

Expr Expr::coefficient(CoefficientFunction c) {
  Node node;
  node.kind = Kind::Coefficient;
  node.coefficient = c;
  return Expr(std::make_shared<Node>(std::move(node)));
}

Expr Expr::ratio_factor() { return Expr(leaf(Kind::RatioFactor)); }
Expr Expr::zeta() { return Expr(leaf(Kind::Zeta)); }
Expr Expr::eta() { return Expr(leaf(Kind::Eta)); }

Expr Expr::hurwitz(real a) {
  if (!(a > 0 && a <= 1)) throw DomainError("Hurwitz parameter must lie in (0, 1]");
  return Expr(leaf(Kind::Hurwitz, a));
}

Expr Expr::series(SeriesSpec spec, Method method) {
  spec.validate();
  Node node;
  node.kind = Kind::Series;
  node.spec = std::move(spec);
  node.method = method;
  return Expr(std::make_shared<Node>(std::move(node)));
}

Expr Expr::combine(Kind kind, const Expr& lhs, const Expr& rhs) {
  Node node;
  node.kind = kind;
  for (const Expr* operand : {&lhs, &rhs}) {
    if (kind != Kind::Quotient && operand->kind() == kind) {
      node.children.insert(node.children.end(), operand->node_->children.begin(),
                           operand->node_->children.end());
    } else {
      node.children.push_back(*operand);
    }
  }
  if (kind == Kind::Product) {
    int inexact = 0;
    for (const auto& child : node.children) inexact += child.exact() ? 0 : 1;
    if (inexact > 1) throw std::logic_error("a product may contain one inexact factor");
  }
  if (kind == Kind::Quotient && !node.children[1].exact()) {
    throw std::logic_error("quotient denominators must be exact");
  }
  return Expr(std::make_shared<Node>(std::move(node)));
}

Expr operator+(const Expr& lhs, const Expr& rhs) { return Expr::combine(Expr::Kind::Sum, lhs, rhs); }
Expr operator-(const Expr& operand) { return Expr::constant(-1) * operand; }
Expr operator-(const Expr& lhs, const Expr& rhs) { return lhs + (-rhs); }
Expr operator*(const Expr& lhs, const Expr& rhs) {
  return Expr::combine(Expr::Kind::Product, lhs, rhs);
}
Expr operator/(const Expr& lhs, const Expr& rhs) {
  return Expr::combine(Expr::Kind::Quotient, lhs, rhs);
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::exact() const {
  switch (node_->kind) {
    case Kind::Zeta:
    case Kind::Eta:
    case Kind::Hurwitz:
    case Kind::Series:
      return false;
    case Kind::Sum:
    case Kind::Product:
    case Kind::Quotient:
      for (const auto& child : node_->children) {
        if (!child.exact()) return false;
      }
      return true;
    default:
      return true;
  }
}

std::string Expr::describe() const {
  const Node& n = *node_;
  auto join = [&](const char* op) {
    std::string out = "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i != 0) out += op;
      out += n.children[i].describe();
    }
    return out + ")";
  };
  switch (n.kind) {
    case Kind::Constant:
      return format_number(n.a);
    case Kind::Pi:
      return "pi";
    case Kind::Log:
      return "log(" + format_number(n.a) + ")";
    case Kind::Sqrt:
      return "sqrt(" + format_number(n.a) + ")";
    case Kind::Power:
      return format_number(n.a) + "^(" + (n.b == 1 ? std::string() : format_number(n.b) + "*") +
             "s)";
    case Kind::Coefficient:
      return "(" + n.coefficient.describe() + ")";
    case Kind::RatioFactor:
      return "(1-2^s)/(1+2^s)";
    case Kind::Zeta:
      return "zeta(s)";
    case Kind::Eta:
      return "eta(s)";
    case Kind::Hurwitz:
      return "zeta(s," + format_number(n.a) + ")";
    case Kind::Series:
      return "[" + n.spec.describe() + "]";
    case Kind::Sum:
      return join(" + ");
    case Kind::Product:
      return join("*");
    case Kind::Quotient:
      return join("/");
  }
  return "?";
}

namespace {

struct Evaluator {
  real s;
  const Config& config;
  std::optional<Method> series_method;
  real u = config.unit_roundoff();

  Precision precision(real eps) const { return Precision{config.precision_bits, eps}; }

  Evaluation exact_leaf(real value, real ulps) const {
    return {value, ulps * u * std::fabs(value), 0};
  }

  template <class Result>
  static Evaluation from(const Result& r) {
    return {r.value, r.abs_error_bound, r.terms_used};
  }
};

}  // namespace

Evaluation Expr::evaluate(real s, real eps, const Config& config,
                          std::optional<Method> series_method) const {
  const Evaluator ctx{s, config, series_method};
  // Recursive worker; budget is the absolute error allowed for this subtree.
  auto eval = [&ctx](const Expr& e, real budget, auto&& self) -> Evaluation {
    const Node& n = *e.node_;
    const real u = ctx.u;
    const real leaf_eps = budget * 0.9L;
    switch (n.kind) {
      case Kind::Constant:
        return {n.a, 0, 0};
      case Kind::Pi:
        return ctx.exact_leaf(std::numbers::pi_v<real>, 1);
      case Kind::Log:
        return ctx.exact_leaf(std::log(n.a), 2);
      case Kind::Sqrt:
        return ctx.exact_leaf(std::sqrt(n.a), 1);
      case Kind::Power:
        return ctx.exact_leaf(std::pow(n.a, n.b * ctx.s), 4 + 2 * std::fabs(n.b * ctx.s));
      case Kind::Coefficient:
        return ctx.exact_leaf(n.coefficient(ctx.s), 8);
      case Kind::RatioFactor: {
        const real p = std::pow(2.0L, ctx.s);
        return ctx.exact_leaf((1 - p) / (1 + p), 8);
      }
      case Kind::Zeta:
        return Evaluator::from(riemann_zeta<real>(ctx.s, ctx.precision(leaf_eps)));
      case Kind::Eta:
        return Evaluator::from(dirichlet_eta<real>(ctx.s, ctx.precision(leaf_eps)));
      case Kind::Hurwitz:
        return Evaluator::from(hurwitz_zeta<real>(ctx.s, n.a, ctx.precision(leaf_eps)));
      case Kind::Series: {
        const Method m = (n.method == Method::Auto && ctx.series_method) ? *ctx.series_method
                                                                         : n.method;
        return Evaluator::from(autoseries::evaluate(n.spec, ctx.s, leaf_eps, ctx.config, m));
      }
      case Kind::Sum: {
        std::size_t inexact = 0;
        for (const auto& child : n.children) inexact += child.exact() ? 0 : 1;
        const real share = inexact == 0 ? budget : budget / static_cast<real>(inexact);
        CompensatedSum<real> acc;
        Evaluation out;
        for (const auto& child : n.children) {
          const Evaluation v = self(child, share, self);
          acc.add(v.value);
          out.bound += v.bound;
          out.terms += v.terms;
        }
        out.value = acc.value();
        out.bound += 2 * u * acc.magnitude;
        return out;
      }
      case Kind::Product: {
        real value = 1;
        real rel = 0;  // relative bound of the exact factors
        const Expr* inexact = nullptr;
        for (const auto& child : n.children) {
          if (!child.exact()) {
            inexact = &child;
            continue;
          }
          const Evaluation v = self(child, budget, self);
          value *= v.value;
          rel += v.value == 0 ? 0 : v.bound / std::fabs(v.value);
          rel += u;
        }
        if (inexact == nullptr || value == 0) return {value, rel * std::fabs(value), 0};
        const real scale = std::fabs(value) * (1 + rel);
        const Evaluation v = self(*inexact, budget / scale, self);
        const real product = value * v.value;
        return {product, scale * v.bound + rel * std::fabs(product) + u * std::fabs(product),
                v.terms};
      }
      case Kind::Quotient: {
        const Evaluation den = self(n.children[1], budget, self);
        if (den.value == 0 || den.bound >= std::fabs(den.value)) {
          throw DomainError("division by a vanishing closed form");
        }
        const real den_low = std::fabs(den.value) - den.bound;
        const Evaluation num = self(n.children[0], budget * den_low * 0.5L, self);
        const real value = num.value / den.value;
        const real bound = (num.bound + std::fabs(value) * den.bound) / den_low +
                           2 * u * std::fabs(value);
        return {value, bound, num.terms};
      }
    }
    throw std::logic_error("unknown expression node");
  };
  return eval(*this, eps, eval);
}

}  // namespace autoseries
