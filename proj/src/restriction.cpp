#include "crm/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crm {

namespace {

using LR = LogReal<double>;

constexpr double kPi = 3.14159265358979323846;
const double kLogTenth = std::log(0.1);
const double kThreshold = std::ldexp(1.0, -60);

double log1p_from_log(double log_s) {
  // log(1 + e^{log_s}) without overflow.
  if (log_s > 30.0) return log_s + std::log1p(std::exp(-log_s));
  return std::log1p(std::exp(log_s));
}

struct CrossInputs {
  double beta;
  double L;
  double log_r;
  double log_u;
  double log_s1;
  double log_s2;
  double log_kappa_over_r2;
};

CrossInputs cross_inputs(const LR& one_minus_L, const LR& u, double b) {
  if (!(b > 0.5)) throw DomainError("cross term requires b > 1/2");
  if (one_minus_L.sign <= 0) throw DomainError("1 - L must be positive");
  if (u.sign == 0) throw DomainError("u must be non-zero");
  CrossInputs in;
  in.beta = 2.0 * b;
  in.L = 1.0 - one_minus_L.value();
  if (!(in.L > 0)) throw DomainError("slit half-width must be positive");
  in.log_r = 2.0 * (one_minus_L.log_abs - std::log1p(in.L));
  in.log_u = u.log_abs;
  in.log_s1 = in.log_r + 2.0 * in.log_u;
  in.log_s2 = in.log_r - 2.0 * in.log_u;
  in.log_kappa_over_r2 = 4.0 * std::log1p(in.L) - std::log(8.0) - std::log(in.L * (1.0 + in.L * in.L));
  return in;
}

// Closed form with one-plus-accurate primitives; returns the linear value.
double cross_direct(const CrossInputs& in, double* condition = nullptr) {
  const double s1 = std::exp(in.log_s1);
  const double s2 = std::exp(in.log_s2);
  const double kappa = std::exp(in.log_kappa_over_r2 + 2.0 * in.log_r);
  const double S = s1 + s2 + kappa * (2.0 + s1 + s2);
  const double d1 = -std::expm1(-in.beta * std::log1p(s1));
  const double d2 = -std::expm1(-in.beta * std::log1p(s2));
  const double dc = -std::expm1(-in.beta * std::log1p(S));
  const double value = d1 + d2 - dc;
  if (condition != nullptr) *condition = (d1 + d2 + dc) / std::abs(value);
  return value;
}

}  // namespace

LR avoid_segment(const LR& c, const LR& d, double b) {
  if (c.sign == 0) throw DomainError("avoid_segment requires c != 0");
  if (d.sign < 0) throw DomainError("avoid_segment requires d >= 0");
  if (d.sign == 0) return LR::one();
  const double log_c2 = 2.0 * c.log_abs;
  return LR::from_log(2.0 * b * (log_c2 - log_add_exp(log_c2, 2.0 * d.log_abs)));
}

LR avoid_segment(double c, double d, double b) {
  return avoid_segment(LR::from_value(c), LR::from_value(d), b);
}

LR avoid_ray(const LR& c, const LR& s, double b) {
  if (s.sign <= 0) throw DomainError("avoid_ray requires s > 0");
  return avoid_segment(inverse(c), inverse(s), b);
}

LR avoid_ray(double c, double s, double b) {
  if (c == 0) throw DomainError("avoid_ray requires c != 0");
  if (std::isinf(s)) return LR::one();
  return avoid_ray(LR::from_value(c), LR::from_value(s), b);
}

LR hit_both_slits(const LR& one_minus_L, const LR& u, double b) {
  const CrossInputs in = cross_inputs(one_minus_L, u, b);
  const double beta = in.beta;
  const double l1p_s1 = log1p_from_log(in.log_s1);
  const double log_two_plus_sigma = log_add_exp(std::log(2.0), log_add_exp(in.log_s1, in.log_s2));
  const double log_kprime = in.log_kappa_over_r2 + 2.0 * in.log_r + log_two_plus_sigma;
  const double log_eps = log_add_exp(in.log_s2, log_kprime);

  const bool series_ok = (log_eps - l1p_s1 <= kLogTenth) && (in.log_s2 <= kLogTenth);
  if (!series_ok) return LR::from_value(cross_direct(in));

  // Everything below is divided by r^2.
  double log_a1_over_r;  // [1 - (1+s1)^{-beta-1}] / r
  if (in.log_s1 < -30.0) {
    const double s1 = std::exp(in.log_s1);
    log_a1_over_r = std::log(beta + 1.0) + 2.0 * in.log_u + std::log1p(-(beta + 2.0) * s1 / 2.0);
  } else {
    log_a1_over_r = std::log(-std::expm1(-(beta + 1.0) * l1p_s1)) - in.log_r;
  }
  const double term1 = beta * std::exp(log_a1_over_r - 2.0 * in.log_u);
  const double term2 = -beta * std::exp(-(beta + 1.0) * l1p_s1 + in.log_kappa_over_r2 + log_two_plus_sigma);
  double sum = term1 + term2;

  const double log_eps_over_r = log_eps - in.log_r;
  const double log_s2_over_r = -2.0 * in.log_u;
  double coef = beta;
  bool converged = false;
  for (int m = 2; m <= 200; ++m) {
    coef *= (beta + m - 1) / m;
    const double A = std::exp(-(beta + m) * l1p_s1 + 2.0 * log_eps_over_r + (m - 2) * log_eps);
    const double B = std::exp(2.0 * log_s2_over_r + (m - 2) * in.log_s2);
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * coef * (A - B);
    if (coef * std::max(A, B) <= kThreshold * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergent("cross-term expansion did not converge");

  LR result = LR::from_value(sum);
  result.log_abs += 2.0 * in.log_r;

  if (in.log_s1 > std::log(1e-2) && in.log_s1 < 0.0) {
    double condition = 0;
    const double direct = cross_direct(in, &condition);
    if (condition * 1e-15 < 1e-7) {
      const double series = result.value();
      if (std::abs(direct - series) > 1e-6 * std::abs(series)) {
        throw ExpansionDomain("cross-term expansion disagrees with the closed form");
      }
    }
  }
  return result;
}

LR hit_both_slits(const Endpoints& ep, const SlitMapData& data, double b) {
  return hit_both_slits(data.one_minus_L, ep.u, b);
}

LR change_prefactor(const Endpoints& ep, const SlitMapData& data, double b) {
  const LogComplex<double> fp = slit_map_derivative(ep.z1(), data);
  const double log_z_gap = std::log(2.0 * std::sin(ep.x / 2.0));
  const double log_w_gap = std::log(2.0) + ep.one_minus_w1.imag().log_abs;
  return LR::from_log(2.0 * b * (fp.log_abs + log_z_gap - log_w_gap));
}

double fold_angle(double x) {
  if (!(x > 0 && x < 2 * kPi)) throw DomainError("angle must lie in (0, 2pi)");
  return x > kPi ? 2 * kPi - x : x;
}

BoundPair avoidance_bounds(const SlitMapData& data, double b, double x) {
  const RestrictionExponent exponent(b);
  BoundPair out;
  out.a = data.params.a;
  out.b = exponent.b;
  out.x = fold_angle(x);

  const Endpoints ep = endpoints(out.x, data);
  const LR R = LR::from_log(std::log1p(data.L) - data.one_minus_L.log_abs);
  BoundTerms& t = out.terms;
  t.t1 = avoid_segment(ep.u, R, b);
  t.t2 = avoid_segment(inverse(ep.u), R, b);
  t.t2_ray = avoid_ray(ep.u, inverse(R), b);
  t.cross = hit_both_slits(ep, data, b);
  t.prefactor = change_prefactor(ep, data, b);

  out.lower = (t.t1 + t.t2) * t.prefactor;
  out.upper_raw = (t.t1 + t.t2_ray + t.cross) * t.prefactor;
  out.upper = out.upper_raw.log_abs > 0 ? LR::one() : out.upper_raw;
  return out;
}

BoundPair avoidance_bounds(double a, double b, double x) {
  RestrictionExponent{b};
  fold_angle(x);
  return avoidance_bounds(slit_map_data(a), b, x);
}

LR decomposition_upper(const SlitMapData& data, double b, double x) {
  if (!(b >= 1.25)) throw DomainError("decomposition bound requires b >= 5/4");
  const double n = std::ceil(b);
  const BoundPair part = avoidance_bounds(data, b / n, x);
  return LR::from_log(n * part.upper.log_abs, part.upper.sign);
}

LR decomposition_upper(double a, double b, double x) {
  if (!(b >= 1.25)) throw DomainError("decomposition bound requires b >= 5/4");
  return decomposition_upper(slit_map_data(a), b, x);
}

}  // namespace crm
