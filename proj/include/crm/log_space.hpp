#ifndef CRM_LOG_SPACE_HPP
#define CRM_LOG_SPACE_HPP

// Sign/phase plus natural-log magnitude representations. Quantities such as
// 1-L ~ exp(pi^2/(4a)) leave the range of binary64 long before a reaches the
// regime of interest; everything that can be that small or large is carried
// as a LogReal or LogComplex and only converted back when it is O(1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "crm/errors.hpp"

namespace crm {

template <typename T>
struct LogReal {
  int sign = 0;  // -1, 0 or +1
  T log_abs = -std::numeric_limits<T>::infinity();

  static LogReal zero() { return {}; }
  static LogReal one() { return {1, T(0)}; }

  static LogReal from_value(const T& v) {
    using std::abs;
    using std::log;
    if (v == 0) return {};
    return {v > 0 ? 1 : -1, log(abs(v))};
  }

  static LogReal from_log(const T& log_abs, int sign = 1) {
    if (sign == 0) return {};
    return {sign > 0 ? 1 : -1, log_abs};
  }

  T value() const {
    using std::exp;
    if (sign == 0) return T(0);
    return sign > 0 ? exp(log_abs) : -exp(log_abs);
  }

  bool is_zero() const { return sign == 0; }
};

template <typename T>
LogReal<T> operator-(const LogReal<T>& x) {
  return {-x.sign, x.log_abs};
}

template <typename T>
LogReal<T> operator*(const LogReal<T>& x, const LogReal<T>& y) {
  if (x.sign == 0 || y.sign == 0) return {};
  return {x.sign * y.sign, x.log_abs + y.log_abs};
}

template <typename T>
LogReal<T> operator/(const LogReal<T>& x, const LogReal<T>& y) {
  if (y.sign == 0) throw DomainError("LogReal: division by zero");
  if (x.sign == 0) return {};
  return {x.sign * y.sign, x.log_abs - y.log_abs};
}

template <typename T>
LogReal<T> inverse(const LogReal<T>& x) {
  if (x.sign == 0) throw DomainError("LogReal: inverse of zero");
  return {x.sign, -x.log_abs};
}

template <typename T>
LogReal<T> abs(const LogReal<T>& x) {
  return {x.sign == 0 ? 0 : 1, x.log_abs};
}

// x^p for x > 0.
template <typename T>
LogReal<T> pow(const LogReal<T>& x, const T& p) {
  if (x.sign < 0) throw DomainError("LogReal: real power of a negative value");
  if (x.sign == 0) {
    if (p > 0) return {};
    throw DomainError("LogReal: non-positive power of zero");
  }
  return {1, p * x.log_abs};
}

// Signed log-sum-exp.
template <typename T>
LogReal<T> operator+(const LogReal<T>& x, const LogReal<T>& y) {
  using std::exp;
  using std::log1p;
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const LogReal<T>& big = (x.log_abs >= y.log_abs) ? x : y;
  const LogReal<T>& small = (x.log_abs >= y.log_abs) ? y : x;
  const T ratio = exp(small.log_abs - big.log_abs);
  if (big.sign == small.sign) return {big.sign, big.log_abs + log1p(ratio)};
  if (ratio == T(1)) return {};
  return {big.sign, big.log_abs + log1p(-ratio)};
}

template <typename T>
LogReal<T> operator-(const LogReal<T>& x, const LogReal<T>& y) {
  return x + (-y);
}

template <typename T>
bool operator<(const LogReal<T>& x, const LogReal<T>& y) {
  if (x.sign != y.sign) return x.sign < y.sign;
  if (x.sign == 0) return false;
  return x.sign > 0 ? x.log_abs < y.log_abs : x.log_abs > y.log_abs;
}

template <typename T>
bool operator<=(const LogReal<T>& x, const LogReal<T>& y) {
  return !(y < x);
}

// log(exp(x) + exp(y)) for plain log values.
template <typename T>
T log_add_exp(const T& x, const T& y) {
  using std::exp;
  using std::log1p;
  using std::max;
  using std::min;
  if (x == -std::numeric_limits<T>::infinity()) return y;
  if (y == -std::numeric_limits<T>::infinity()) return x;
  const T hi = max(x, y);
  return hi + log1p(exp(min(x, y) - hi));
}

template <typename T>
struct LogComplex {
  T log_abs = -std::numeric_limits<T>::infinity();
  std::complex<T> phase{1, 0};  // unit modulus

  static LogComplex zero() { return {}; }

  static LogComplex from_value(const std::complex<T>& z) {
    using std::abs;
    using std::log;
    const T m = abs(z);
    if (m == 0) return {};
    return {log(m), z / m};
  }

  static LogComplex from_log_polar(const T& log_abs, const T& arg) {
    using std::cos;
    using std::sin;
    return {log_abs, {cos(arg), sin(arg)}};
  }

  static LogComplex from_real(const LogReal<T>& x) {
    if (x.sign == 0) return {};
    return {x.log_abs, {T(x.sign), T(0)}};
  }

  bool is_zero() const { return log_abs == -std::numeric_limits<T>::infinity(); }

  std::complex<T> value() const {
    using std::exp;
    if (is_zero()) return {0, 0};
    return exp(log_abs) * phase;
  }

  T arg() const {
    using std::atan2;
    return atan2(phase.imag(), phase.real());
  }

  LogReal<T> real() const {
    if (is_zero()) return {};
    return LogReal<T>::from_value(phase.real()) * LogReal<T>::from_log(log_abs);
  }

  LogReal<T> imag() const {
    if (is_zero()) return {};
    return LogReal<T>::from_value(phase.imag()) * LogReal<T>::from_log(log_abs);
  }

  LogReal<T> modulus() const {
    if (is_zero()) return {};
    return LogReal<T>::from_log(log_abs);
  }
};

namespace detail {

template <typename T>
std::complex<T> unit(const std::complex<T>& z) {
  using std::abs;
  return z / abs(z);
}

}  // namespace detail

template <typename T>
LogComplex<T> operator*(const LogComplex<T>& x, const LogComplex<T>& y) {
  if (x.is_zero() || y.is_zero()) return {};
  return {x.log_abs + y.log_abs, detail::unit(x.phase * y.phase)};
}

template <typename T>
LogComplex<T> operator/(const LogComplex<T>& x, const LogComplex<T>& y) {
  if (y.is_zero()) throw DomainError("LogComplex: division by zero");
  if (x.is_zero()) return {};
  return {x.log_abs - y.log_abs, detail::unit(x.phase * std::conj(y.phase))};
}

template <typename T>
LogComplex<T> operator-(const LogComplex<T>& x) {
  return {x.log_abs, -x.phase};
}

template <typename T>
LogComplex<T> conj(const LogComplex<T>& x) {
  return {x.log_abs, std::conj(x.phase)};
}

template <typename T>
LogComplex<T> inverse(const LogComplex<T>& x) {
  if (x.is_zero()) throw DomainError("LogComplex: inverse of zero");
  return {-x.log_abs, std::conj(x.phase)};
}

// Principal square root.
template <typename T>
LogComplex<T> sqrt(const LogComplex<T>& x) {
  using std::sqrt;
  if (x.is_zero()) return {};
  return {x.log_abs / 2, detail::unit(sqrt(x.phase))};
}

template <typename T>
LogComplex<T> operator+(const LogComplex<T>& x, const LogComplex<T>& y) {
  using std::abs;
  using std::exp;
  using std::log;
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const T hi = std::max(x.log_abs, y.log_abs);
  const std::complex<T> z = exp(x.log_abs - hi) * x.phase + exp(y.log_abs - hi) * y.phase;
  const T m = abs(z);
  if (m == 0) return {};
  return {hi + log(m), z / m};
}

template <typename T>
LogComplex<T> operator-(const LogComplex<T>& x, const LogComplex<T>& y) {
  return x + (-y);
}

// log(1+z) and exp(z)-1 for complex z, accurate for small |z|.
template <typename T>
std::complex<T> log1p(const std::complex<T>& z) {
  using std::atan2;
  using std::log1p;
  const T x = z.real();
  const T y = z.imag();
  return {log1p(2 * x + x * x + y * y) / 2, atan2(y, 1 + x)};
}

template <typename T>
std::complex<T> expm1(const std::complex<T>& z) {
  using std::cos;
  using std::exp;
  using std::expm1;
  using std::sin;
  const T x = z.real();
  const T y = z.imag();
  const T s = sin(y / 2);
  return {expm1(x) * cos(y) - 2 * s * s, exp(x) * sin(y)};
}

}  // namespace crm

#endif  // CRM_LOG_SPACE_HPP
