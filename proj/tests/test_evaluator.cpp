#include <doctest.h>

#include <cmath>
#include <numbers>

#include "autoseries/evaluator.hpp"
#include "autoseries/sequences.hpp"
#include "autoseries/special_functions.hpp"

using namespace autoseries;

namespace {

const Config kConfig{};

real zeta(real s, real eps = 1e-13L) { return riemann_zeta<real>(s, Precision{64, eps}).value; }

void check_agree(const EvalResult& a, const EvalResult& b) {
  CHECK(std::fabs(a.value - b.value) <= a.abs_error_bound + b.abs_error_bound);
}

}  // namespace

TEST_CASE("series specs") {
  CHECK(series::f().coeffs == CoefficientSequence::shifted_plus_minus());
  CHECK_THROWS_AS(
      (SeriesSpec{CoefficientSequence::delta(), Shift::ByOne, Denominator::PowerOfN}.validate()),
      DomainError);
  CHECK_THROWS_AS((SeriesSpec{CoefficientSequence::thue_morse(), Shift::None,
                              Denominator::Composite9}
                       .validate()),
                  DomainError);
  CHECK_THROWS_AS((SeriesSpec{CoefficientSequence::thue_morse(), Shift::ByOne,
                              Denominator::PowerOfOddN}
                       .validate()),
                  DomainError);
  CHECK(parse_series_name("f") == series::f());
  CHECK(parse_series_name("odd-epsilon") == series::odd_epsilon());
  CHECK(parse_series_name("digitsum:10") == series::digit_sum(10));
  CHECK(parse_series_name("affine:-1:0:shifted") == series::affine(-1, 0, true));
  CHECK_THROWS_AS(parse_series_name("nope"), UsageError);
  CHECK_THROWS_AS(parse_series_name("affine:1"), UsageError);
  CHECK_FALSE(series::shallit(2).depends_on_s());
  CHECK(series::f().depends_on_s());
}

TEST_CASE("naive zeta coefficients") {
  constexpr real pi = std::numbers::pi_v<real>;
  const auto r = eval_naive(series::zeta(), 2, 1e-6L, kConfig);
  CHECK(std::fabs(r.value - pi * pi / 6) <= 1e-6L);
  CHECK(r.abs_error_bound <= 1e-6L);
  CHECK(r.method == Method::Naive);
}

TEST_CASE("shifted and unshifted forms of f are the same object") {
  // sum eps_{n-1}/n^s versus sum_{n>=0} eps_n/(n+1)^s.
  const SeriesSpec by_one{CoefficientSequence::plus_minus(), Shift::ByOne, Denominator::PowerOfN};
  for (real s : {1.5L, 2.0L, 3.5L}) {
    const auto a = eval_naive(series::f(), s, 1e-8L, kConfig);
    const auto b = eval_naive(by_one, s, 1e-8L, kConfig);
    CHECK(a.value == b.value);
    CHECK(a.abs_error_bound == b.abs_error_bound);
  }
}

TEST_CASE("gamma eight-term prefix") {
  // t_1..t_8 = 1,1,0,1,0,0,1,1.
  const real expected = 1.0L + 1.0L / 4 + 1.0L / 16 + 1.0L / 49 + 1.0L / 64;
  const auto r = eval_naive_terms(series::gamma(), 2, 8, kConfig);
  CHECK(std::fabs(r.value - expected) <= 1e-18L);
  CHECK(r.terms_used == 8);
}

TEST_CASE("functional equation weights") {
  for (int k = 1; k <= 20; ++k) CHECK(std::fabs(rising_binomial(2, k) - (k + 1)) <= 1e-15L * k);
  // Weights sum to 1 - 2^{-s}.
  for (real s : {1.5L, 2.0L, 4.0L}) {
    real sum = 0;
    for (int k = 1; k <= 400; ++k) sum += functional_equation_weight(s, k);
    CHECK(std::fabs(sum - (1 - std::pow(2.0L, -s))) <= 1e-15L);
  }
}

TEST_CASE("f: functional equation against naive summation") {
  for (real s : {1.5L, 2.0L, 3.0L, 4.0L, 6.0L}) {
    CAPTURE(static_cast<double>(s));
    const auto fe = eval_functional_equation(s, 1e-10L, kConfig.fe_depth, kConfig);
    const auto naive = eval_naive(series::f(), s, 1e-10L, kConfig);
    CHECK(fe.method == Method::FunctionalEquation);
    CHECK(fe.abs_error_bound <= 1e-10L);
    check_agree(fe, naive);
  }
  const auto fe2 = eval_functional_equation(2, 1e-10L, kConfig.fe_depth, kConfig);
  const auto naive2 = eval_naive(series::f(), 2, 1e-10L, kConfig);
  CHECK(std::fabs(fe2.value - naive2.value) <= 2e-10L);
}

TEST_CASE("f: odd-index decomposition") {
  const auto f4 = eval_functional_equation(4, 1e-12L, kConfig.fe_depth, kConfig);
  const auto a4 = eval_odd_series(4, 1e-12L, kConfig);
  CHECK(a4.method == Method::OddDecomposition);
  const real factor = 16.0L / 17;
  CHECK(std::fabs(f4.value - factor * a4.value) <=
        f4.abs_error_bound + factor * a4.abs_error_bound + 1e-18L);
  CHECK(odd_to_f_factor(4) == factor);
  for (real s : {2.0L, 3.0L}) check_agree(eval_f_via_odd(s, 1e-9L, kConfig),
                                         eval_functional_equation(s, 1e-9L, 40, kConfig));

  // Even/odd split: A(s) = sum eps_m/(2m)^s - sum eps_m/m^s = (2^-s - 1) g(s).
  const auto a2 = eval_odd_series(2, 1e-9L, kConfig);
  const auto g2 = eval_naive(series::g(), 2, 1e-9L, kConfig);
  CHECK(std::fabs(a2.value - (0.25L - 1) * g2.value) <=
        a2.abs_error_bound + 0.75L * g2.abs_error_bound);

  // First-term dominance: A(6) = 1 - 3^-6 - 5^-6 + 7^-6 - ...
  const auto a6 = eval_odd_series(6, 1e-12L, kConfig);
  CHECK(std::fabs(a6.value - 1) < std::pow(3.0L, -6) * 1.1L);
}

TEST_CASE("f and g: ratio") {
  for (real s : {2.0L, 3.0L, 4.0L}) {
    const auto f = eval_functional_equation(s, 1e-10L, 40, kConfig);
    const auto g = eval_naive(series::g(), s, 1e-10L, kConfig);
    const real p = std::pow(2.0L, s);
    const real ratio = (1 - p) / (1 + p);
    CHECK(std::fabs(f.value - ratio * g.value) <=
          f.abs_error_bound + std::fabs(ratio) * g.abs_error_bound);
  }
  const auto f2 = eval_functional_equation(2, 1e-10L, 40, kConfig);
  const auto g2 = eval_naive(series::g(), 2, 1e-10L, kConfig);
  CHECK(std::fabs(f2.value + 0.6L * g2.value) <= 1e-9L);
}

TEST_CASE("phi and gamma") {
  for (real s : {2.0L, 2.5L, 3.0L, 4.0L}) {
    CAPTURE(static_cast<double>(s));
    const auto phi = eval_phi_gamma(PhiGamma::Phi, s, 1e-9L, kConfig);
    const auto gamma = eval_phi_gamma(PhiGamma::Gamma, s, 1e-9L, kConfig);
    // Nonzero-mean tails decay like N^{1-s}; keep direct summation affordable.
    const real naive_eps = s < 2.5L ? 1e-7L : 1e-9L;
    check_agree(phi, eval_naive(series::phi(), s, naive_eps, kConfig));
    check_agree(gamma, eval_naive(series::gamma(), s, naive_eps, kConfig));
    // Splitting both into odd and even indices:
    // gamma + phi - 2^-s (gamma - phi) = zeta.
    const real q = std::pow(2.0L, -s);
    const real residual = gamma.value + phi.value - q * (gamma.value - phi.value) - zeta(s);
    CHECK(std::fabs(residual) <= (1 + q) * (phi.abs_error_bound + gamma.abs_error_bound) + 1e-13L);
  }
  // The odd route gives an independent f.
  const auto via_odd = eval_phi_gamma(PhiGamma::Phi, 2, 1e-9L, kConfig, Method::OddDecomposition);
  check_agree(via_odd, eval_phi_gamma(PhiGamma::Phi, 2, 1e-9L, kConfig));
}

TEST_CASE("delta series and the odd series") {
  for (real s : {2.0L, 3.0L}) {
    const auto d = eval_naive(series::delta(), s, 1e-9L, kConfig);
    const auto a = eval_odd_series(s, 1e-9L, kConfig);
    const real p = std::pow(4.0L, s);
    const real factor = p / (p - 1);
    CHECK(std::fabs(d.value - factor * a.value) <= d.abs_error_bound + factor * a.abs_error_bound);
  }
}

TEST_CASE("composite period-doubling series") {
  const auto h2 = hurwitz_zeta<real>(2, 0.25L, Precision{64, 1e-12L});
  const auto c2 = eval_composite9(2, 1e-6L, kConfig);
  CHECK(std::fabs(c2.value - h2.value / 16) <= c2.abs_error_bound + h2.abs_error_bound / 16);
  const auto h3 = hurwitz_zeta<real>(3, 0.25L, Precision{64, 1e-12L});
  const auto c3 = eval_composite9(3, 1e-8L, kConfig);
  CHECK(std::fabs(c3.value - h3.value / 64) <= c3.abs_error_bound + h3.abs_error_bound / 64);
  // Even indices carry sigma = 0, so dropping them changes nothing.
  for (std::uint64_t n = 0; n < 100'000; n += 2) REQUIRE(period_doubling(n) == 0);
}

TEST_CASE("linear forms") {
  const real s = 3;
  const auto form = f_linear_form(series::phi(), s);
  REQUIRE(form.has_value());
  CHECK(form->zeta_coef == 0.5L);
  CHECK(form->f_coef == -0.5L);
  CHECK_FALSE(f_linear_form(series::composite9(), s).has_value());
  CHECK_FALSE(f_linear_form(series::digit_sum(2), s).has_value());
  for (const auto& spec : {series::affine(-1, 0, true), series::affine(1.0L / 3, 4.0L / 3, false),
                           series::delta(), series::g(), series::gamma()}) {
    CAPTURE(spec.describe());
    const auto lf = f_linear_form(spec, s);
    REQUIRE(lf.has_value());
    check_agree(eval_linear_form(*lf, s, 1e-10L, kConfig, Method::FunctionalEquation),
                eval_naive(spec, s, 1e-10L, kConfig));
  }
}

TEST_CASE("auto dispatch") {
  CHECK(evaluate(series::f(), 2, 1e-10L, kConfig).method == Method::FunctionalEquation);
  CHECK(evaluate(series::odd_epsilon(), 2, 1e-10L, kConfig).method == Method::OddDecomposition);
  CHECK(evaluate(series::zeta(), 2, 1e-10L, kConfig).method == Method::EulerMaclaurin);
  CHECK(evaluate(series::composite9(), 3, 1e-8L, kConfig).method == Method::Naive);
  CHECK(evaluate(series::f(), 2, 1e-10L, kConfig, Method::Naive).method == Method::Naive);
}

TEST_CASE("digit-sum series without s") {
  const auto r = eval_naive(series::shallit(2), 2, 1e-5L, kConfig);
  CHECK(std::fabs(r.value - 2 * std::log(2.0L)) <= r.abs_error_bound);
  const auto as = eval_naive(series::allouche_shallit(), 2, 1e-8L, kConfig);
  constexpr real pi = std::numbers::pi_v<real>;
  CHECK(std::fabs(as.value - pi * pi / 9) <= as.abs_error_bound);
}

TEST_CASE("determinism across thread counts") {
  Config one = kConfig;
  one.threads = 1;
  Config four = kConfig;
  four.threads = 4;
  for (const auto& spec : {series::f(), series::gamma(), series::composite9()}) {
    const auto a = eval_naive(spec, 2, 1e-7L, one);
    const auto b = eval_naive(spec, 2, 1e-7L, four);
    const auto c = eval_naive(spec, 2, 1e-7L, four);
    CHECK(a.value == b.value);
    CHECK(a.abs_error_bound == b.abs_error_bound);
    CHECK(b.value == c.value);
    CHECK(a.terms_used == b.terms_used);
  }
  const auto fe1 = eval_functional_equation(2, 1e-12L, 40, one);
  const auto fe4 = eval_functional_equation(2, 1e-12L, 40, four);
  CHECK(fe1.value == fe4.value);
}

TEST_CASE("tail bounds and term requirements") {
  const auto spec = series::gamma();
  CHECK(tail_bound(spec, 2, 1000) > tail_bound(spec, 2, 2000));
  const std::uint64_t n = required_terms(spec, 2, 1e-4L, kConfig);
  CHECK(tail_bound(spec, 2, n) <= 1e-4L);
  CHECK(tail_bound(spec, 2, n - 1) > 1e-4L);
  // The bound really dominates the tail: compare a short sum with a long one.
  const auto short_sum = eval_naive_terms(spec, 2, 1000, kConfig);
  const auto long_sum = eval_naive_terms(spec, 2, 2'000'000, kConfig);
  CHECK(std::fabs(short_sum.value - long_sum.value) <= tail_bound(spec, 2, 1000));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(evaluate(series::f(), 1, 1e-8L, kConfig), DomainError);
  CHECK_THROWS_AS(evaluate(series::f(), 0.5L, 1e-8L, kConfig), DomainError);
  CHECK_THROWS_AS(evaluate(series::f(), 2, 0, kConfig), DomainError);
  Config tiny = kConfig;
  tiny.max_terms = 100;
  try {
    eval_naive(series::gamma(), 2, 1e-8L, tiny);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(e.required_terms() > 100);
  }
}
