#include <cmath>
#include <cstdint>
#include <random>

#include "dioph/logreal.hpp"
#include "doctest.h"

using dioph::LogReal;

TEST_SUITE("logreal") {

TEST_CASE("round trip through doubles") {
  for (double v : {1.0, -1.0, 0.5, 3.25e17, -7.5e-200, 1e300, -1e-300}) {
    const LogReal x = LogReal::from_double(v);
    CHECK(x.to_double() == doctest::Approx(v).epsilon(1e-15));
    CHECK(x.sign() == (v > 0 ? 1 : -1));
  }
  CHECK(LogReal::from_double(0.0).is_zero());
  CHECK(LogReal::zero().to_double() == 0.0);
  CHECK(LogReal::one().to_double() == 1.0);
  CHECK_THROWS_AS(LogReal::from_double(std::nan("")), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with doubles in the safe range") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  std::bernoulli_distribution flip(0.5);
  for (int i = 0; i < 2000; ++i) {
    const double a = (flip(gen) ? 1 : -1) * std::pow(10.0, mag(gen));
    const double b = (flip(gen) ? 1 : -1) * std::pow(10.0, mag(gen));
    const LogReal la = LogReal::from_double(a), lb = LogReal::from_double(b);
    CHECK((la * lb).to_double() == doctest::Approx(a * b).epsilon(1e-12));
    CHECK((la / lb).to_double() == doctest::Approx(a / b).epsilon(1e-12));
    const double s = a + b;
    if (std::fabs(s) > 1e-13 * (std::fabs(a) + std::fabs(b)))
      CHECK((la + lb).to_double() == doctest::Approx(s).epsilon(1e-10));
    const double d = a - b;
    if (std::fabs(d) > 1e-13 * (std::fabs(a) + std::fabs(b)))
      CHECK((la - lb).to_double() == doctest::Approx(d).epsilon(1e-10));
  }
}

TEST_CASE("addition handles signs, zero, and exact cancellation") {
  const LogReal two = LogReal::from_double(2.0);
  const LogReal mtwo = LogReal::from_double(-2.0);
  CHECK((two + mtwo).is_zero());
  CHECK((two - two).is_zero());
  CHECK((LogReal::zero() + two).to_double() == 2.0);
  CHECK((two + LogReal::zero()).to_double() == 2.0);
  CHECK((LogReal::zero() - two).to_double() == -2.0);
  // near-cancellation keeps relative accuracy via expm1
  const LogReal a = LogReal::from_double(1.0);
  const LogReal b = LogReal::from_double(1.0 - 1e-12);
  CHECK((a - b).to_double() == doctest::Approx(1e-12).epsilon(1e-3));
}

TEST_CASE("huge magnitudes never overflow") {
  const LogReal big = LogReal::from_log10(5.0e7);
  const LogReal tiny = LogReal::from_log10(-5.0e7);
  const LogReal p = big * big;
  CHECK(p.log10_abs() == doctest::Approx(1.0e8));
  CHECK((big * tiny).log10_abs() == doctest::Approx(0.0));
  CHECK((big + big).log10_abs() ==
        doctest::Approx(5.0e7 + std::log10(2.0)).epsilon(1e-15));
  // the dominant term wins outright when the other is 10^-1e8 smaller
  CHECK((big + tiny).log10_abs() == doctest::Approx(5.0e7));
}

TEST_CASE("pow and sqrt") {
  const LogReal x = LogReal::from_double(9.0);
  CHECK(x.sqrt().to_double() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(x.pow(0.0).to_double() == 1.0);
  CHECK(x.pow(-1.0).to_double() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(x.pow(100.0).log10_abs() == doctest::Approx(100.0 * std::log10(9.0)));
  CHECK(LogReal::zero().pow(2.0).is_zero());
  CHECK_THROWS_AS(LogReal::zero().pow(-1.0), std::domain_error);
  CHECK_THROWS_AS(LogReal::zero().pow(0.0), std::domain_error);
  CHECK_THROWS_AS(LogReal::from_double(-2.0).pow(0.5), std::domain_error);
  CHECK_THROWS_AS(LogReal::one() / LogReal::zero(), std::domain_error);
}

TEST_CASE("ordering is the real-number order") {
  const LogReal n_big = LogReal::from_double(-100.0);
  const LogReal n_small = LogReal::from_double(-0.01);
  const LogReal z = LogReal::zero();
  const LogReal p_small = LogReal::from_double(0.01);
  const LogReal p_big = LogReal::from_double(100.0);
  CHECK(n_big < n_small);
  CHECK(n_small < z);
  CHECK(z < p_small);
  CHECK(p_small < p_big);
  CHECK(!(p_big < p_small));
  CHECK(!(z < z));
  CHECK(p_big > n_big);
  CHECK(z <= z);
  CHECK(p_big >= p_small);
  CHECK(min(p_big, n_big).to_double() == -100.0);
  CHECK(max(p_big, n_big).to_double() == 100.0);
  CHECK(LogReal::from_double(5.0) == LogReal::from_double(5.0));
}

TEST_CASE("linear mirror window") {
  CHECK(LogReal::zero().linear_or_nan() == 0.0);
  CHECK(LogReal::from_log10(279.0).linear_or_nan() == doctest::Approx(1e279));
  CHECK(std::isnan(LogReal::from_log10(280.0).linear_or_nan()));
  CHECK(std::isnan(LogReal::from_log10(-280.0).linear_or_nan()));
  CHECK(LogReal::from_log10(-279.0, -1).linear_or_nan() == doctest::Approx(-1e-279));
}

TEST_CASE("factorial from the exact product below 21, lgamma beyond") {
  CHECK(dioph::factorial_log(0).to_double() == 1.0);
  CHECK(dioph::factorial_log(1).to_double() == 1.0);
  CHECK(dioph::factorial_log(5).to_double() == doctest::Approx(120.0).epsilon(1e-15));
  CHECK(dioph::factorial_log(20).to_double() ==
        doctest::Approx(2432902008176640000.0).epsilon(1e-14));
  const double lg100 = std::lgamma(101.0) / std::log(10.0);
  CHECK(dioph::factorial_log(100).log10_abs() == doctest::Approx(lg100).epsilon(1e-14));
}

TEST_CASE("pow_log survives exponents far outside double range") {
  const LogReal t = dioph::pow_log(10.0, -900.0);
  CHECK(t.log10_abs() == doctest::Approx(-900.0));
  CHECK(t.positive());
  CHECK(dioph::pow_log(2.0, 10.0).to_double() == doctest::Approx(1024.0).epsilon(1e-14));
  CHECK_THROWS_AS(dioph::pow_log(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(dioph::pow_log(-3.0, 2.0), std::domain_error);
}

}  // TEST_SUITE
