#ifndef CRM_ELLIPTIC_HPP
#define CRM_ELLIPTIC_HPP

// Jacobi theta functions for purely imaginary tau, in the (v | tau) convention
//
//   theta1(v|tau) = 2 sum_{n>=0} (-1)^n h^{(n+1/2)^2} sin((2n+1) pi v)
//   theta2(v|tau) = 2 sum_{n>=0}        h^{(n+1/2)^2} cos((2n+1) pi v)
//   theta3(v|tau) = 1 + 2 sum_{n>=1}        h^{n^2} cos(2 n pi v)
//   theta0(v|tau) = 1 + 2 sum_{n>=1} (-1)^n h^{n^2} cos(2 n pi v)
//
// with nome h = exp(i pi tau). For the annulus {e^a < |z| < 1} the nome is
// h = e^{4a} and the transformed nome (tau -> -1/tau) is h' = e^{pi^2/(4a)}.
// The direct series is used for |a| >= pi/4 and the transformed one below;
// at a = -pi/4 both nomes equal e^{-pi}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include "crm/errors.hpp"
#include "crm/log_space.hpp"

namespace crm {

template <typename T>
T pi_v() {
  using std::acos;
  return acos(T(-1));
}

template <typename T>
struct AnnulusParams {
  T a;       // log of the inner radius, a < 0
  T q;       // inner radius e^a
  T log_h;   // 4a
  T log_hp;  // pi^2 / (4a)
  T im_tau;  // tau = i * im_tau, im_tau = 4|a| / pi

  static AnnulusParams from_log_radius(const T& a) {
    using std::exp;
    if (!(a < 0)) throw DomainError("annulus log-radius a must be negative");
    const T pi = pi_v<T>();
    return {a, exp(a), 4 * a, pi * pi / (4 * a), -4 * a / pi};
  }

  // True when the direct nome h is the faster-converging branch.
  bool direct_branch() const { return -a >= pi_v<T>() / 4; }
};

enum class ThetaKind { theta1, theta2, theta3, theta0 };

namespace detail {

template <typename T>
T imag_part(const T&) {
  return T(0);
}

template <typename T>
T imag_part(const std::complex<T>& z) {
  return z.imag();
}

template <typename T>
struct real_of {
  using type = T;
};

template <typename T>
struct real_of<std::complex<T>> {
  using type = T;
};

template <typename T>
T series_threshold() {
  using std::ldexp;
  const T two_m60 = ldexp(T(1), -60);
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  return eps < two_m60 ? eps : two_m60;
}

inline constexpr int kMaxSeriesTerms = 200;

}  // namespace detail

// Truncated theta series. Arg is a real scalar or std::complex<double>.
// Terms are dropped once their envelope 2 h^e cosh(k pi Im v) falls below the
// threshold relative to the partial sum while decreasing; the envelope is used
// instead of the term itself so that accidental zeros of the trigonometric
// factor cannot stop the summation early.
template <typename Arg, typename Real>
Arg theta_series(ThetaKind kind, const Arg& v, const Real& log_nome) {
  using std::abs;
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::sin;
  using R = typename detail::real_of<Arg>::type;
  static_assert(std::is_same_v<R, Real>, "argument and nome must share a scalar type");

  if (!(log_nome < 0)) throw DomainError("theta_series: nome must lie in (0,1)");

  const Real pi = pi_v<Real>();
  const Real thr = detail::series_threshold<Real>();
  const Real im_v = abs(detail::imag_part(v));
  const bool half_integer = (kind == ThetaKind::theta1 || kind == ThetaKind::theta2);
  const bool alternating = (kind == ThetaKind::theta1 || kind == ThetaKind::theta0);

  Arg sum = half_integer ? Arg(0) : Arg(1);
  Real prev_env = std::numeric_limits<Real>::infinity();
  Real first_env = -1;

  for (int i = 0; i < detail::kMaxSeriesTerms; ++i) {
    const int n = half_integer ? i : i + 1;
    const Real e = half_integer ? (Real(n) + Real(0.5)) * (Real(n) + Real(0.5)) : Real(n) * Real(n);
    const Real k = half_integer ? Real(2 * n + 1) : Real(2 * n);
    const Real weight = 2 * exp(e * log_nome);
    const Real env = weight * cosh(k * pi * im_v);
    const Arg trig = (kind == ThetaKind::theta1) ? Arg(sin(k * pi * v)) : Arg(cos(k * pi * v));
    const Real sgn = (alternating && (n % 2 == 1)) ? Real(-1) : Real(1);
    sum += Arg(sgn * weight) * trig;

    if (first_env < 0) first_env = env;
    Real ref = abs(sum);
    if (ref < thr * first_env) ref = thr * first_env;
    if (env <= thr * ref && env <= prev_env) return sum;
    prev_env = env;
  }
  throw NonConvergent("theta_series: no convergence within 200 terms");
}

// Theta nulls on the direct nome h = e^{4a}.
template <typename T>
struct DirectThetaNulls {
  T theta2;
  T theta3;
};

template <typename T>
DirectThetaNulls<T> direct_theta_nulls(const AnnulusParams<T>& p) {
  return {theta_series(ThetaKind::theta2, T(0), p.log_h), theta_series(ThetaKind::theta3, T(0), p.log_h)};
}

// Theta nulls on the transformed nome h' = e^{pi^2/(4a)}. The difference
// theta3 - theta0 = 4 sum_{n odd} h'^{n^2} is summed directly and returned
// in log form so that 1 - L never involves subtracting near-equal numbers.
template <typename T>
struct TransformedThetaNulls {
  T theta3;
  T log_theta3_minus_theta0;
};

template <typename T>
TransformedThetaNulls<T> transformed_theta_nulls(const AnnulusParams<T>& p) {
  using std::exp;
  using std::log;
  const T thr = detail::series_threshold<T>();
  const T lh = p.log_hp;
  if (!(lh < 0)) throw DomainError("transformed nome must lie in (0,1)");

  // sum_{n odd} h'^{n^2 - 1}, leading term 1.
  T odd = 1;
  bool done = false;
  for (int n = 3; n < 2 * detail::kMaxSeriesTerms; n += 2) {
    const T t = exp((T(n) * T(n) - 1) * lh);
    odd += t;
    if (t <= thr * odd) {
      done = true;
      break;
    }
  }
  if (!done) throw NonConvergent("transformed theta null: no convergence");
  return {theta_series(ThetaKind::theta3, T(0), lh), log(T(4)) + lh + log(odd)};
}

// Slit half-width L = theta2(0|tau)/theta3(0|tau) and 1 - L.
template <typename T>
struct SlitWidth {
  T L;
  LogReal<T> one_minus_L;
};

template <typename T>
SlitWidth<T> slit_width_direct(const AnnulusParams<T>& p) {
  const auto nulls = direct_theta_nulls(p);
  const T L = nulls.theta2 / nulls.theta3;
  return {L, LogReal<T>::from_value(T(1) - L)};
}

template <typename T>
SlitWidth<T> slit_width_transformed(const AnnulusParams<T>& p) {
  using std::exp;
  using std::log;
  const auto nulls = transformed_theta_nulls(p);
  const T log_oml = nulls.log_theta3_minus_theta0 - log(nulls.theta3);
  return {T(1) - exp(log_oml), LogReal<T>::from_log(log_oml)};
}

template <typename T>
SlitWidth<T> slit_width(const AnnulusParams<T>& p) {
  return p.direct_branch() ? slit_width_direct(p) : slit_width_transformed(p);
}

// K = (pi/2) theta3(0|tau)^2, using theta3(0|tau)^2 = theta3(0|-1/tau)^2 / im_tau
// on the transformed branch.
template <typename T>
T complete_elliptic_K(const AnnulusParams<T>& p) {
  const T pi = pi_v<T>();
  if (p.direct_branch()) {
    const T t3 = theta_series(ThetaKind::theta3, T(0), p.log_h);
    return pi / 2 * t3 * t3;
  }
  const T t3 = theta_series(ThetaKind::theta3, T(0), p.log_hp);
  return pi / 2 * t3 * t3 / p.im_tau;
}

// Complementary integral K' = K * im_tau, from h = exp(-pi K'/K).
template <typename T>
T complete_elliptic_K_prime(const AnnulusParams<T>& p) {
  return complete_elliptic_K(p) * p.im_tau;
}

enum class TransformedRatio { L_ratio, f_ratio };

// Pieces of the transformed-nome quotient
//   theta1(v|tau)/theta0(v|tau) = i theta1(v/tau|-1/tau)/theta2(v/tau|-1/tau)
//                               = (X-1)/(X+1) * Pi,   X = exp(2 i pi v / tau),
// with Pi the infinite product over (1 -+ h'^{2n} X^{+-1}) factors. Re v is
// first reduced to [-1/2, 1/2] using f(v) = -f(v-1); `negated` records that.
struct TransformedQuotient {
  LogComplex<double> X;
  LogComplex<double> one_minus_pi;
  bool negated = false;
  LogComplex<double> value;            // theta1(v|tau)/theta0(v|tau)
  LogComplex<double> one_minus_value;  // 1 - value, without cancellation
};

TransformedQuotient transformed_quotient(const AnnulusParams<double>& p, std::complex<double> v);

// L-ratio theta0(0|-1/tau)/theta3(0|-1/tau) or f-ratio i theta1(v/tau|-1/tau)/theta2(v/tau|-1/tau).
// Valid for |a| <= pi/2.
LogComplex<double> theta_ratio_transformed(const AnnulusParams<double>& p, TransformedRatio which,
                                           std::complex<double> v = {});

}  // namespace crm

#endif  // CRM_ELLIPTIC_HPP
