#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "autoseries/sequences.hpp"

using namespace autoseries;

namespace {

// Independent bit-count oracle: clears the lowest set bit until none remain.
int parity_by_kernighan(std::uint64_t n) {
  int parity = 0;
  while (n != 0) {
    n &= n - 1;
    parity ^= 1;
  }
  return parity;
}

// Thue-Morse prefix by the substitution 0 -> 01, 1 -> 10.
std::vector<int> thue_morse_by_substitution(std::size_t length) {
  std::vector<int> word{0};
  while (word.size() < length) {
    std::vector<int> next;
    for (int bit : word) {
      next.push_back(bit);
      next.push_back(1 - bit);
    }
    word = std::move(next);
  }
  word.resize(length);
  return word;
}

// Period-doubling by its defining recurrence, memoized bottom-up.
std::vector<int> period_doubling_by_recurrence(std::size_t length) {
  std::vector<int> out(length, 0);
  for (std::size_t n = 0; n < length; ++n) {
    if (n % 2 == 0) out[n] = 0;
    else if (n % 4 == 1) out[n] = 1;
    else out[n] = out[(n - 3) / 4];
  }
  return out;
}

}  // namespace

TEST_CASE("thue-morse prefix and powers of two") {
  const int prefix[] = {0, 1, 1, 0, 1, 0, 0, 1};
  for (int n = 0; n < 8; ++n) CHECK(thue_morse(n) == prefix[n]);
  for (int k = 0; k < 63; ++k) CHECK(thue_morse(std::uint64_t{1} << k) == 1);
  CHECK(thue_morse(1'000'000) == parity_by_kernighan(1'000'000));
}

TEST_CASE("thue-morse agrees with the substitution word") {
  const auto word = thue_morse_by_substitution(1 << 17);
  for (std::size_t n = 0; n < word.size(); ++n) REQUIRE(thue_morse(n) == word[n]);
}

TEST_CASE("plus-minus prefix and laws") {
  const int prefix[] = {1, -1, -1, 1};
  for (int n = 0; n < 4; ++n) CHECK(pm_thue_morse(n) == prefix[n]);
  for (std::uint64_t n = 0; n <= 1000; ++n) {
    CHECK(pm_thue_morse(2 * n) == pm_thue_morse(n));
    CHECK(pm_thue_morse(2 * n + 1) == -pm_thue_morse(n));
  }
}

TEST_CASE("delta values and domain") {
  CHECK(delta(1) == 1);
  CHECK(delta(3) == -1);
  CHECK(delta(6) == 0);
  CHECK_THROWS_AS(delta(0), DomainError);
}

TEST_CASE("first indices with t(n-1) = t(n) = 0") {
  std::vector<std::uint64_t> found;
  for (std::uint64_t n = 1; found.size() < 4; ++n) {
    if (thue_morse(n - 1) == 0 && thue_morse(n) == 0) found.push_back(n);
  }
  CHECK(found == std::vector<std::uint64_t>{6, 10, 18, 24});
}

TEST_CASE("period-doubling prefix and recurrence") {
  const int prefix[] = {0, 1, 0, 0, 0, 1, 0, 1};
  for (int n = 0; n < 8; ++n) CHECK(period_doubling(n) == prefix[n]);
  const auto oracle = period_doubling_by_recurrence(100'001);
  for (std::size_t n = 0; n < oracle.size(); ++n) REQUIRE(period_doubling(n) == oracle[n]);
}

TEST_CASE("digit sums") {
  CHECK(digit_sum(255, 2) == 8);
  CHECK(digit_sum(1000, 10) == 1);
  CHECK(digit_sum(7, 3) == 3);
  CHECK(digit_sum(0, 10) == 0);
  CHECK_THROWS_AS(digit_sum(5, 1), DomainError);
}

TEST_CASE("affine substitution") {
  CHECK(affine_seq(0, -1, 0) == -1);
  CHECK(affine_seq(1, -1, 0) == 0);
  CHECK(affine_seq(2, -1, 0) == 0);
  CHECK(affine_seq(3, -1, 0) == -1);
  for (std::uint64_t n = 0; n <= 1000; ++n) CHECK(affine_seq(n, 0, 1) == thue_morse(n));
  const real r2 = std::numbers::sqrt2_v<real>;
  const auto q = CoefficientSequence::affine(-r2, 1 - r2);
  CHECK(q.value(0) == -r2);
  CHECK(q.value(1) == 1 - r2);
  CHECK(q.uniform_bound().value() == r2);
}

TEST_CASE("sequence laws hold exhaustively up to 1e5") {
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    REQUIRE(thue_morse(2 * n) == thue_morse(n));
    REQUIRE(thue_morse(2 * n + 1) == 1 - thue_morse(n));
    REQUIRE(pm_thue_morse(2 * n) == pm_thue_morse(n));
    REQUIRE(pm_thue_morse(2 * n + 1) == -pm_thue_morse(n));
    REQUIRE(period_doubling(2 * n) == 0);
    REQUIRE(period_doubling(4 * n + 1) == 1);
    REQUIRE(period_doubling(4 * n + 3) == period_doubling(n));
    REQUIRE(static_cast<int>(digit_sum(n, 2) % 2) == thue_morse(n));
    const int d = delta(n);
    REQUIRE((d >= -1 && d <= 1));
    REQUIRE((d == 0) == (thue_morse(n - 1) == thue_morse(n)));
  }
  for (std::uint64_t n = 0; n <= 100'000; ++n) REQUIRE(pm_thue_morse(n) == 1 - 2 * thue_morse(n));
  CHECK(thue_morse(0) == 0);
  CHECK(period_doubling(0) == 0);
}

TEST_CASE("plus-minus partial sums vanish over even-length prefixes") {
  long long partial = 0;
  for (std::uint64_t n = 0; n < 200'000; ++n) {
    partial += pm_thue_morse(n);
    if (n % 2 == 1) REQUIRE(partial == 0);
    else REQUIRE(std::llabs(partial) == 1);
  }
}

TEST_CASE("digit-sum majorant") {
  for (unsigned b : {2u, 3u, 7u, 10u, 16u}) {
    const auto seq = CoefficientSequence::digit_sum(b);
    for (std::uint64_t n = 1; n <= 100'000; n += (n < 1000 ? 1 : 37)) {
      const real bound = (b - 1) * (std::floor(std::log(static_cast<real>(n)) / std::log(static_cast<real>(b)) + 1e-12L) + 1);
      REQUIRE(digit_sum(n, b) <= bound);
      REQUIRE(seq.value(n) <= seq.value_bound(n));
    }
  }
}

TEST_CASE("coefficient streams") {
  SUBCASE("first indices") {
    CHECK(CoefficientSequence::thue_morse().first_index() == 0);
    CHECK(CoefficientSequence::shifted_thue_morse().first_index() == 1);
    CHECK(CoefficientSequence::shifted_plus_minus().first_index() == 1);
    CHECK(CoefficientSequence::delta().first_index() == 1);
    CHECK_THROWS_AS(CoefficientSequence::delta().value(0), DomainError);
  }
  SUBCASE("values match the scalar functions") {
    for (std::uint64_t n = 1; n < 5000; ++n) {
      CHECK(CoefficientSequence::shifted_thue_morse().value(n) == thue_morse(n - 1));
      CHECK(CoefficientSequence::shifted_plus_minus().value(n) == pm_thue_morse(n - 1));
      CHECK(CoefficientSequence::period_doubling().value(n) == period_doubling(n));
      CHECK(CoefficientSequence::digit_sum(3).value(n) == digit_sum(n, 3));
    }
  }
  SUBCASE("kind-specialized coefficients agree with value()") {
    for (const auto& seq : {CoefficientSequence::thue_morse(), CoefficientSequence::plus_minus(),
                            CoefficientSequence::shifted_plus_minus(),
                            CoefficientSequence::delta(), CoefficientSequence::period_doubling(),
                            CoefficientSequence::digit_sum(2), CoefficientSequence::digit_sum(10),
                            CoefficientSequence::affine(0.25L, -3)}) {
      with_coefficient(seq, [&](auto coef) {
        for (std::uint64_t n = seq.first_index(); n < 3000; ++n) REQUIRE(coef(n) == seq.value(n));
      });
    }
  }
  SUBCASE("bounds") {
    CHECK(CoefficientSequence::plus_minus().partial_sum_bound().has_value());
    CHECK_FALSE(CoefficientSequence::thue_morse().partial_sum_bound().has_value());
    CHECK_FALSE(CoefficientSequence::digit_sum(2).uniform_bound().has_value());
    CHECK(CoefficientSequence::affine(-2, 5).uniform_bound().value() == 5);
    // Bounded partial sums: checked against the actual partial sums.
    for (const auto& seq : {CoefficientSequence::plus_minus(), CoefficientSequence::delta(),
                            CoefficientSequence::affine(-0.5L, 0.5L)}) {
      const real bound = seq.partial_sum_bound().value();
      real partial = 0;
      for (std::uint64_t n = seq.first_index(); n < 100'000; ++n) {
        partial += seq.value(n);
        REQUIRE(std::fabs(partial) <= bound);
      }
    }
  }
  SUBCASE("purity") {
    const auto seq = CoefficientSequence::digit_sum(10);
    for (std::uint64_t n = 0; n < 1000; ++n) CHECK(seq.value(n) == seq.value(n));
  }
}
