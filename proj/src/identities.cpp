#include "autoseries/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <numbers>
#include <string>

#include "autoseries/sequences.hpp"
#include "autoseries/solver.hpp"
#include "autoseries/summation.hpp"

namespace autoseries {

namespace {

constexpr real kFixedSTolerance = 1e-9L;

Identity fixed(Identity identity, real s) {
  identity.domain = Domain::FixedS;
  identity.fixed_s = s;
  return identity;
}

Identity with_id(Identity identity, std::string id, std::string description) {
  identity.id = std::move(id);
  identity.description = std::move(description);
  return identity;
}

std::vector<Identity> make_registry() {
  std::vector<Identity> out;
  const auto c = [](real value) { return CoefficientFunction::constant(value); };

  {
    Identity id;
    id.id = "f-g-ratio";
    id.description = "f(s) = (1-2^s)/(1+2^s) g(s)";
    id.lhs = {{c(1), series::f(), Method::FunctionalEquation}};
    id.rhs = Expr::ratio_factor() * Expr::series(series::g(), Method::Naive);
    out.push_back(std::move(id));
  }
  out.push_back(with_id(phi_gamma_combination({1, 0}, c(1)), "phi-gamma-combination",
                        "2^s phi(s) + gamma(s) as a combination of zeta(s) and f(s)"));
  {
    Identity id;
    id.id = "zeta-combination";
    id.description = "(2^s+1) phi(s) + (2^s-1) gamma(s) = 2^s zeta(s)";
    id.lhs = {{{1, 1}, series::phi()}, {{1, -1}, series::gamma()}};
    id.rhs = Expr::power(2, 1) * Expr::zeta();
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "zeta-combination-s2";
    id.description = "5 phi(2) + 3 gamma(2) = 2 pi^2 / 3";
    id.lhs = {{c(5), series::phi()}, {c(3), series::gamma()}};
    id.rhs = Expr::rational(2, 3) * Expr::pi() * Expr::pi();
    out.push_back(fixed(std::move(id), 2));
  }
  {
    Identity id;
    id.id = "zeta-combination-s3";
    id.description = "9 phi(3) + 7 gamma(3) = 8 zeta(3)";
    id.lhs = {{c(9), series::phi()}, {c(7), series::gamma()}};
    id.rhs = Expr::constant(8) * Expr::zeta();
    out.push_back(fixed(std::move(id), 3));
  }

  out.push_back(with_id(alphabet_identity(AlphabetCase::Zero, 0.5L, -0.5L, Domain::AllS),
                        "alphabet-zero",
                        "q = t - 1/2, r = t - 1/2: sum q(n-1)/n^s = (1-2^s)/(1+2^s) sum r(n)/n^s"));
  out.push_back(with_id(alphabet_identity(AlphabetCase::PowS, 0, 0, Domain::AllS),
                        "alphabet-zeta",
                        "q = r = t: (2^s+1) sum q(n-1)/n^s + (2^s-1) sum r(n)/n^s = 2^s zeta(s)"));
  out.push_back(with_id(alphabet_identity(AlphabetCase::PowSMinus2, 1, 1, Domain::AllS),
                        "alphabet-eta",
                        "q = t - 1, r = t + 1: (2^s+1) sum q(n-1)/n^s + (2^s-1) sum r(n)/n^s = "
                        "2^s eta(s)"));
  {
    Identity id;
    id.id = "alphabet-zero-s2";
    id.description = "q in {-1, 0}, r in {1/3, 4/3}: 5 sum q(n-1)/n^2 + 3 sum r(n)/n^2 = 0";
    id.lhs = {{c(5), series::affine(-1, 0, true)},
              {c(3), series::affine(1.0L / 3, 4.0L / 3, false)}};
    out.push_back(fixed(std::move(id), 2));
  }
  {
    const real l = 9.0L / 7;
    Identity id = alphabet_identity(AlphabetCase::PowS, 1, l, Domain::FixedS, 3);
    id.id = "alphabet-zeta-s3";
    id.description = "q in {-1, 0}, r in {9/7, 16/7}: 9 sum q(n-1)/n^3 + 7 sum r(n)/n^3 = 8 zeta(3)";
    id.lhs = {{c(9), series::affine(-1, 0, true)}, {c(7), series::affine(l, 1 + l, false)}};
    id.rhs = Expr::constant(8) * Expr::zeta();
    out.push_back(std::move(id));
  }
  {
    const real k = std::numbers::sqrt2_v<real>;
    const real l = (17 * k - 2) / 15;
    Identity id;
    id.id = "alphabet-eta-s4";
    id.description =
        "k = sqrt2, l = (17 sqrt2 - 2)/15: 17 sum q(n-1)/n^4 + 15 sum r(n)/n^4 = 16 eta(4)";
    id.lhs = {{c(17), series::affine(-k, 1 - k, true)}, {c(15), series::affine(l, 1 + l, false)}};
    id.rhs = Expr::constant(16) * Expr::eta();
    out.push_back(fixed(std::move(id), 4));
  }
  {
    Identity id;
    id.id = "delta-odd";
    id.description = "sum delta(n)/n^s = 4^s/(4^s-1) sum_{m>=0} eps(m)/(2m+1)^s";
    id.lhs = {{c(1), series::delta()}};
    id.rhs = Expr::power(4, 1) / (Expr::power(4, 1) - Expr::constant(1)) *
             Expr::series(series::odd_epsilon(), Method::OddDecomposition);
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "period-doubling-hurwitz";
    id.description =
        "sum sigma(n) ((4n+3)^s - n^s)/(4n^2+3n)^s = 4^-s zeta(s, 1/4)";
    id.lhs = {{c(1), series::composite9()}};
    id.rhs = Expr::power(4, -1) * Expr::hurwitz(0.25L);
    out.push_back(std::move(id));
  }
  for (unsigned base : {2u, 3u, 10u}) out.push_back(shallit(base));
  {
    Identity id;
    id.id = "allouche-shallit";
    id.description = "sum s_2(n) (2n+1)/(n^2 (n+1)^2) = pi^2/9";
    id.lhs = {{c(1), series::allouche_shallit()}};
    id.rhs = Expr::pi() * Expr::pi() / Expr::constant(9);
    id.domain = Domain::Independent;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "woods-robbins";
    id.description = "prod ((2n+1)/(2n+2))^eps(n) = 1/sqrt2 (partial product, heuristic)";
    id.domain = Domain::Independent;
    id.form = IdentityForm::WoodsRobbinsProduct;
    out.push_back(std::move(id));
  }
  return out;
}

}  // namespace

bool Identity::accepts(real s) const {
  switch (domain) {
    case Domain::AllS:
      return s > 1;
    case Domain::FixedS:
      return std::fabs(s - fixed_s) <= kFixedSTolerance * std::max<real>(1, std::fabs(s));
    case Domain::Independent:
      return true;
  }
  return false;
}

Expr Identity::lhs_expression() const {
  Expr out = Expr::constant(0);
  bool first = true;
  for (const auto& term : lhs) {
    Expr piece = Expr::series(term.series, term.method);
    if (!(term.coefficient == CoefficientFunction::constant(1))) {
      piece = Expr::coefficient(term.coefficient) * piece;
    }
    out = first ? piece : out + piece;
    first = false;
  }
  return out;
}

std::vector<real> Identity::default_s() const {
  switch (domain) {
    case Domain::AllS:
      return {2, 3, 4};
    case Domain::FixedS:
      return {fixed_s};
    case Domain::Independent:
      return {};
  }
  return {};
}

VerificationRecord verify(const Identity& identity, std::optional<real> s, real eps,
                          const Config& config, const VerifyOptions& options) {
  validate(config);
  if (!(eps > 0) || !std::isfinite(eps)) throw UsageError("eps must be a positive number");
  if (identity.form == IdentityForm::WoodsRobbinsProduct) {
    return verify_woods_robbins(kWoodsRobbinsTerms, true);
  }

  const auto start = std::chrono::steady_clock::now();
  VerificationRecord record;
  record.identity_id = identity.id;
  record.eps = std::max(eps, identity.min_eps);

  real at = 2;  // placeholder for identities that do not involve s
  if (identity.domain == Domain::Independent) {
    record.s = std::nullopt;
  } else {
    if (!s) {
      if (identity.domain != Domain::FixedS) {
        throw UsageError("identity " + identity.id + " needs a value of s");
      }
      s = identity.fixed_s;
    }
    if (!identity.accepts(*s)) {
      throw DomainError("identity " + identity.id + " does not hold at s = " +
                        std::to_string(static_cast<double>(*s)));
    }
    at = *s;
    record.s = s;
  }

  const Evaluation lhs = identity.lhs_expression().evaluate(at, record.eps / 2, config,
                                                            options.series_method);
  const Evaluation rhs = identity.rhs.evaluate(at, record.eps / 2, config, options.series_method);
  record.lhs = lhs.value;
  record.lhs_bound = lhs.bound;
  record.rhs = rhs.value;
  record.rhs_bound = rhs.bound;
  record.residual = std::fabs(lhs.value - rhs.value);
  record.pass = record.residual <= record.lhs_bound + record.rhs_bound;
  record.terms_used = lhs.terms + rhs.terms;
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

Identity phi_gamma_combination(CoefficientFunction u, CoefficientFunction v, Method f_method) {
  Identity id;
  id.id = "phi-gamma:" + u.describe() + ":" + v.describe();
  id.description = "(" + u.describe() + ") phi(s) + (" + v.describe() + ") gamma(s) = (u+v)/2 "
                   "zeta(s) - f(s)/2 (u + v (1+2^s)/(1-2^s))";
  id.lhs = {{u, series::phi()}, {v, series::gamma()}};
  const CoefficientFunction sum{u.alpha + v.alpha, u.beta + v.beta};
  const Expr half = Expr::rational(1, 2);
  const Expr f_coefficient =
      Expr::coefficient(u) + Expr::coefficient(v) / Expr::ratio_factor();
  id.rhs = half * Expr::coefficient(sum) * Expr::zeta() -
           half * f_coefficient * Expr::series(series::f(), f_method);
  return id;
}

VerificationRecord verify_phi_gamma_combination(CoefficientFunction u, CoefficientFunction v,
                                                real s, real eps, const Config& config) {
  Identity id = phi_gamma_combination(u, v, Method::FunctionalEquation);
  for (auto& term : id.lhs) term.method = Method::Naive;
  return verify(id, s, eps, config);
}

Identity shallit(unsigned base) {
  if (base < 2) throw UsageError("digit-sum base must be at least 2");
  Identity id;
  id.id = "shallit:" + std::to_string(base);
  id.description = "sum s_" + std::to_string(base) + "(n)/(n(n+1)) = b/(b-1) log b, b = " +
                   std::to_string(base);
  id.lhs = {{CoefficientFunction::constant(1), series::shallit(base)}};
  const real b = base;
  id.rhs = Expr::constant(b / (b - 1)) * Expr::log(b);
  id.domain = Domain::Independent;
  // The tail decays like log(N)/N; 1e-5 keeps the term count near 1e7 for b = 10.
  id.min_eps = 1e-5L;
  return id;
}

real woods_robbins_log_product(std::uint64_t terms, bool pairing) {
  if (terms == 0) return 0;
  const auto chunks = map_chunks(0, terms - 1, 1,
                                 [&](std::uint64_t lo, std::uint64_t hi) {
    CompensatedSum<real> acc;
    if (!pairing) {
      for (std::uint64_t n = lo; n <= hi; ++n) {
        const real x = static_cast<real>(n);
        acc.add(pm_thue_morse(n) * std::log1p(-1 / (2 * x + 2)));
      }
      return acc;
    }
    // Factors 2m and 2m+1 share |eps| and differ in sign, so each pair
    // collapses to eps_m log(1 - 2/(16m^2 + 20m + 6)).
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (n % 2 == 1) continue;
      const std::uint64_t m = n / 2;
      const real x = static_cast<real>(m);
      if (n + 1 < terms) {
        acc.add(pm_thue_morse(m) * std::log1p(-2 / (16 * x * x + 20 * x + 6)));
      } else {
        acc.add(pm_thue_morse(n) * std::log1p(-1 / (2 * static_cast<real>(n) + 2)));
      }
    }
    return acc;
  });
  CompensatedSum<real> total;
  for (const auto& chunk : chunks) total.merge(chunk);
  return total.value();
}

VerificationRecord verify_woods_robbins(std::uint64_t terms, bool pairing) {
  const auto start = std::chrono::steady_clock::now();
  VerificationRecord record;
  record.identity_id = "woods-robbins";
  record.heuristic = true;
  record.eps = kWoodsRobbinsThreshold;
  record.lhs = std::exp(woods_robbins_log_product(terms, pairing));
  record.lhs_bound = kWoodsRobbinsThreshold;
  record.rhs = std::numbers::sqrt2_v<real> / 2;
  record.residual = std::fabs(record.lhs - record.rhs);
  record.pass = record.residual <= kWoodsRobbinsThreshold;
  record.terms_used = terms;
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

const std::vector<Identity>& builtin_registry() {
  static const std::vector<Identity> registry = make_registry();
  return registry;
}

Identity find_identity(std::string_view id) {
  for (const auto& identity : builtin_registry()) {
    if (identity.id == id) return identity;
  }
  constexpr std::string_view prefix = "shallit:";
  if (id.substr(0, prefix.size()) == prefix) {
    const std::string digits(id.substr(prefix.size()));
    char* end = nullptr;
    const unsigned long base = std::strtoul(digits.c_str(), &end, 10);
    if (!digits.empty() && end == digits.c_str() + digits.size() && base >= 2 && base <= 1000) {
      return shallit(static_cast<unsigned>(base));
    }
  }
  throw UsageError("unknown identity: " + std::string(id));
}

}  // namespace autoseries
