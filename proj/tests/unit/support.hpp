#ifndef CRM_TEST_SUPPORT_HPP
#define CRM_TEST_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>

namespace crm::test {

inline constexpr double kPi = 3.14159265358979323846;

inline double rel_err(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

inline double rel_err(std::complex<double> value, std::complex<double> reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// Relative error of e^{log_value} against e^{log_reference}.
inline double log_rel_err(double log_value, double log_reference) {
  return std::abs(std::expm1(log_value - log_reference));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

}  // namespace crm::test

#endif  // CRM_TEST_SUPPORT_HPP
