#ifndef CRM_RESTRICTION_HPP
#define CRM_RESTRICTION_HPP

// Restriction-measure probabilities in the upper half-plane and the resulting
// lower/upper bounds on
//
//   F(a, b, x) = P^b_{U, e^{ix}, 1}(gamma inside {e^a < |z| < 1}).
//
// All probabilities are LogReal; sums are log-sum-exp.

#include <cmath>

#include "crm/confmap.hpp"
#include "crm/errors.hpp"
#include "crm/log_space.hpp"

namespace crm {

inline constexpr double kMinExponent = 5.0 / 8.0;

struct RestrictionExponent {
  double b;

  explicit RestrictionExponent(double value) : b(value) {
    if (!(value >= kMinExponent)) throw DomainError("restriction exponent must be >= 5/8");
  }
};

// P^b_{H,c,-c}(gamma avoids i(0,d]) = [c^2/(c^2+d^2)]^{2b}.
LogReal<double> avoid_segment(const LogReal<double>& c, const LogReal<double>& d, double b);
LogReal<double> avoid_segment(double c, double d, double b);

// P^b_{H,c,-c}(gamma avoids i[s,inf)); equal to avoid_segment(1/c, 1/s, b)
// through the inversion z -> -1/z.
LogReal<double> avoid_ray(const LogReal<double>& c, const LogReal<double>& s, double b);
LogReal<double> avoid_ray(double c, double s, double b);

// P^b_{H,u,-u}(gamma meets both i(0,(1-L)/(1+L)) and i((1+L)/(1-L),inf)).
//
// With r = ((1-L)/(1+L))^2, s1 = r u^2, s2 = r/u^2, kappa = (1-L)^4/(8(L+L^3))
// and g(t) = (1+t)^{-2b} the probability is
//   g(s1 + eps) - g(s1) - g(s2) + 1,   eps = s2 + kappa (2 + s1 + s2),
// whose value ~ b(2b-1)/8 (1-L)^4 is far below its individual terms. It is
// evaluated as the Taylor series in eps around s1,
//   sum_{m>=1} (-1)^m (2b)_m / m! [(1+s1)^{-2b-m} eps^m - s2^m],
// scaled by r^2, which has no cancellation between O(s1) pieces. Outside the
// series domain (eps >= (1+s1)/10 or s2 >= 1/10) the closed form is evaluated
// directly with log1p/expm1.
LogReal<double> hit_both_slits(const LogReal<double>& one_minus_L, const LogReal<double>& u, double b);
LogReal<double> hit_both_slits(const Endpoints& ep, const SlitMapData& data, double b);

// Closed form evaluated term by term at the working precision of T. Only
// meaningful with a wide multiprecision T; used to generate reference values.
template <typename T>
T hit_both_slits_direct(const T& one_minus_L, const T& u, const T& b) {
  using std::pow;
  const T L = T(1) - one_minus_L;
  const T r = pow(one_minus_L / (T(1) + L), 2);
  const T s1 = r * u * u;
  const T s2 = r / (u * u);
  const T kappa = pow(one_minus_L, 4) / (8 * (L + L * L * L));
  const T Q = T(1) + s1 + s2 + kappa * (T(2) + s1 + s2);
  const T beta = 2 * b;
  return (T(1) - pow(T(1) + s2, -beta)) + (T(1) - pow(T(1) + s1, -beta)) - T(1) + pow(Q, -beta);
}

// |f'(z1)(z1 - z2)/(w1 - w2)|^{2b} for the symmetric endpoints z1,2 = e^{+-ix/2}.
LogReal<double> change_prefactor(const Endpoints& ep, const SlitMapData& data, double b);

struct BoundTerms {
  LogReal<double> t1;         // avoid i(0, R] from +-u,        R = (1+L)/(1-L)
  LogReal<double> t2;         // avoid i(0, R] from +-1/u
  LogReal<double> t2_ray;     // avoid i[1/R, inf) from +-u (equals t2 by inversion)
  LogReal<double> cross;      // hit_both_slits
  LogReal<double> prefactor;  // change_prefactor
};

struct BoundPair {
  double a = 0;
  double b = 0;
  double x = 0;  // folded into (0, pi]
  LogReal<double> lower;
  LogReal<double> upper;      // min(upper_raw, 1)
  LogReal<double> upper_raw;  // (t1 + t2_ray + cross) * prefactor; exceeds 1 for large b
  BoundTerms terms;

  double log_lower() const { return lower.log_abs; }
  double log_upper() const { return upper.log_abs; }
};

// Maps x in (0, 2pi) to (0, pi] by reflection; rejects other angles.
double fold_angle(double x);

BoundPair avoidance_bounds(double a, double b, double x);
BoundPair avoidance_bounds(const SlitMapData& data, double b, double x);

// Upper bound for b >= 5/4 from splitting b into n = ceil(b) equal exponents
// in [5/8, 1]: F(a,b,x) <= F_upper(a, b/n, x)^n.
LogReal<double> decomposition_upper(double a, double b, double x);
LogReal<double> decomposition_upper(const SlitMapData& data, double b, double x);

}  // namespace crm

#endif  // CRM_RESTRICTION_HPP
