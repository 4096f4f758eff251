#include <doctest.h>

#include "crm/log_space.hpp"
#include "support.hpp"

using crm::LogComplex;
using crm::LogReal;
using crm::test::rel_err;
using crm::test::uniform;
using LR = LogReal<double>;
using LC = LogComplex<double>;
using cd = std::complex<double>;

TEST_CASE("log real round trip and arithmetic") {
  for (int i = 0; i < 200; ++i) {
    const double x = uniform(-50, 50);
    const double y = uniform(-50, 50);
    const LR lx = LR::from_value(x);
    const LR ly = LR::from_value(y);
    CHECK(rel_err(lx.value(), x) < 1e-14);
    CHECK(rel_err((lx * ly).value(), x * y) < 1e-13);
    CHECK(rel_err((lx / ly).value(), x / y) < 1e-13);
    const double s = x + y;
    if (std::abs(s) > 1e-3) CHECK(std::abs((lx + ly).value() - s) < 1e-12 * (std::abs(x) + std::abs(y)));
    CHECK(std::abs((lx - ly).value() - (x - y)) < 1e-12 * (std::abs(x) + std::abs(y)));
  }
}

TEST_CASE("log real handles magnitudes outside binary64") {
  const LR tiny = LR::from_log(-2000.0);
  const LR sum = tiny + tiny;
  CHECK(sum.sign == 1);
  CHECK(sum.log_abs == doctest::Approx(-2000.0 + std::log(2.0)).epsilon(1e-15));
  CHECK((tiny - tiny).is_zero());
  CHECK((LR::one() + tiny).log_abs == doctest::Approx(0.0));
  CHECK(pow(tiny, 0.5).log_abs == doctest::Approx(-1000.0));
  CHECK_THROWS_AS(LR::one() / LR::zero(), crm::DomainError);
}

TEST_CASE("log real ordering") {
  CHECK(LR::from_value(-3.0) < LR::from_value(-2.0));
  CHECK(LR::from_value(-1.0) < LR::zero());
  CHECK(LR::zero() < LR::from_log(-900.0));
  CHECK(LR::from_log(-900.0) < LR::from_log(-899.0));
  CHECK(LR::from_value(2.0) <= LR::from_value(2.0));
}

TEST_CASE("log_add_exp") {
  CHECK(crm::log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(crm::log_add_exp(-1e300, 5.0) == 5.0);
  CHECK(crm::log_add_exp(-800.0, -801.0) == doctest::Approx(-800.0 + std::log1p(std::exp(-1.0))));
}

TEST_CASE("log complex arithmetic") {
  for (int i = 0; i < 200; ++i) {
    const cd z(uniform(-3, 3), uniform(-3, 3));
    const cd w(uniform(-3, 3), uniform(-3, 3));
    const LC lz = LC::from_value(z);
    const LC lw = LC::from_value(w);
    CHECK(rel_err(lz.value(), z) < 1e-14);
    CHECK(rel_err((lz * lw).value(), z * w) < 1e-13);
    CHECK(rel_err((lz / lw).value(), z / w) < 1e-13);
    CHECK(std::abs((lz + lw).value() - (z + w)) < 1e-13 * (std::abs(z) + std::abs(w)));
    CHECK(std::abs((lz - lw).value() - (z - w)) < 1e-13 * (std::abs(z) + std::abs(w)));
    CHECK(rel_err(sqrt(lz).value(), std::sqrt(z)) < 1e-13);
    CHECK(rel_err(conj(lz).value(), std::conj(z)) < 1e-14);
    CHECK(rel_err(inverse(lz).value(), 1.0 / z) < 1e-13);
  }
}

TEST_CASE("log complex parts keep the exponent") {
  const LC z = LC::from_log_polar(-1500.0, 0.25);
  CHECK(z.real().log_abs == doctest::Approx(-1500.0 + std::log(std::cos(0.25))));
  CHECK(z.imag().log_abs == doctest::Approx(-1500.0 + std::log(std::sin(0.25))));
  CHECK(z.arg() == doctest::Approx(0.25));
  CHECK(z.modulus().log_abs == -1500.0);
}

TEST_CASE("complex log1p and expm1 are accurate near zero") {
  const cd z(1e-12, -3e-13);
  CHECK(rel_err(crm::log1p(z), z - z * z / 2.0) < 1e-14);
  CHECK(rel_err(crm::expm1(z), z + z * z / 2.0) < 1e-14);
  for (int i = 0; i < 100; ++i) {
    const cd w(uniform(-0.9, 2), uniform(-2, 2));
    CHECK(rel_err(crm::log1p(w), std::log(1.0 + w)) < 1e-12);
    CHECK(rel_err(crm::expm1(w), std::exp(w) - 1.0) < 1e-12);
  }
}
