#include "crm/confmap.hpp"

#include <algorithm>
#include <cmath>

namespace crm {

namespace {

using LC = LogComplex<double>;
using LR = LogReal<double>;
using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kRadiusTol = 1e-12;
constexpr double kTipTol = 1e-12;

cd v_of(cd z, const AnnulusParams<double>& p) {
  return {0.5 - std::arg(z) / kPi, (std::log(std::abs(z)) - p.a) / kPi};
}

void check_radius(cd z, const AnnulusParams<double>& p) {
  const double r = std::abs(z);
  if (!(r >= p.q * (1 - kRadiusTol) && r <= 1 + kRadiusTol)) {
    throw DomainError("point outside the closed annulus q <= |z| <= 1");
  }
}

cd direct_quotient(cd v, const AnnulusParams<double>& p) {
  return theta_series(ThetaKind::theta1, v, p.log_h) / theta_series(ThetaKind::theta0, v, p.log_h);
}

LC one_minus_unchecked(cd z, const SlitMapData& data) {
  const cd v = v_of(z, data.params);
  if (data.params.direct_branch()) return LC::from_value(1.0 - direct_quotient(v, data.params));
  return transformed_quotient(data.params, v).one_minus_value;
}

}  // namespace

SlitMapData slit_map_data(const AnnulusParams<double>& params) {
  const auto width = slit_width(params);
  const LR p_minus_1 = width.one_minus_L * width.one_minus_L / LR::from_value(2.0 * width.L);
  return {params, width.L, width.one_minus_L, p_minus_1, complete_elliptic_K(params)};
}

SlitMapData slit_map_data(double a) {
  return slit_map_data(AnnulusParams<double>::from_log_radius(a));
}

cd slit_map(cd z, const SlitMapData& data) {
  check_radius(z, data.params);
  const cd v = v_of(z, data.params);
  if (data.params.direct_branch()) return direct_quotient(v, data.params);
  return transformed_quotient(data.params, v).value.value();
}

LC slit_map_one_minus(cd z, const SlitMapData& data) {
  check_radius(z, data.params);
  return one_minus_unchecked(z, data);
}

LC slit_map_derivative(cd z, const SlitMapData& data) {
  check_radius(z, data.params);
  const double L = data.L;
  const LC one_minus_f = one_minus_unchecked(z, data);
  const LC one_minus_L = LC::from_real(data.one_minus_L);
  const LC one_plus_L = LC::from_value({1.0 + L, 0.0});
  const LC L_c = LC::from_value({L, 0.0});

  const LC L_minus_f = one_minus_f - one_minus_L;
  const LC L_plus_f = one_plus_L - one_minus_f;
  // Tolerance relative to the operands of each difference: 1 - L can itself be
  // far below 1e-12, so an absolute test would reject every boundary point.
  const double log_tol = std::log(kTipTol);
  const double scale_minus = std::max(one_minus_f.log_abs, one_minus_L.log_abs);
  const double scale_plus = std::max(one_minus_f.log_abs, one_plus_L.log_abs);
  if (L_minus_f.log_abs < log_tol + scale_minus || L_plus_f.log_abs < log_tol + scale_plus) {
    throw SlitTipSingularity("f(z) coincides with a slit tip");
  }
  const LC one_minus_Lf = one_minus_L + L_c * one_minus_f;
  const LC one_plus_Lf = one_plus_L - L_c * one_minus_f;

  const LC root = sqrt(L_minus_f * L_plus_f * one_minus_Lf * one_plus_Lf);
  LC candidate = LC::from_value(cd{0.0, 2.0 * data.K / kPi} / z) * root;

  // The two branches differ by sign; pick the one continuing f'(1) > 0 by
  // comparing with a tangential difference quotient (the rotations keep |z|).
  const double q = data.params.q;
  const double tip_dist = std::min(std::abs(z - q), std::abs(z + q));
  const double eta = std::min(1e-4, 0.05 * tip_dist / std::abs(z));
  const LC diff = one_minus_unchecked(z * std::polar(1.0, -eta), data) -
                  one_minus_unchecked(z * std::polar(1.0, eta), data);
  const LC fd = diff / LC::from_value(cd{0.0, 2.0 * eta} * z);
  if ((candidate.phase * std::conj(fd.phase)).real() < 0) candidate = -candidate;
  return candidate;
}

Endpoints endpoints(double x, const SlitMapData& data) {
  if (!(x > 0 && x <= kPi)) throw DomainError("endpoint angle must lie in (0, pi]");
  Endpoints ep;
  ep.x = x;
  ep.v = {0.5 - x / (2 * kPi), -data.params.a / kPi};
  if (x == kPi) {
    ep.one_minus_w1 = LC::from_value({1.0, -1.0});
    ep.u = LR::from_value(-1.0);
    return ep;
  }
  ep.one_minus_w1 = one_minus_unchecked(ep.z1(), data);
  const cd one_plus_w1 = 2.0 - ep.one_minus_w1.value();
  const LC u = LC::from_value(cd{0.0, 1.0} * one_plus_w1) / ep.one_minus_w1;
  if (std::abs(u.phase.imag()) > 1e-9) throw NonConvergent("endpoint image is not on the unit circle");
  ep.u = LR::from_log(u.log_abs, u.phase.real() < 0 ? -1 : 1);
  return ep;
}

cd halfplane_slit_removal(double c, double d, cd z) {
  if (c == 0) throw DomainError("slit removal requires c != 0");
  if (!(d >= 0)) throw DomainError("slit height must be non-negative");
  if (z.imag() < 0) throw DomainError("point below the real axis");
  if (z == cd{0.0, 0.0} || (z.real() == 0 && z.imag() <= d)) throw DomainError("point on the slit");
  const double k = std::abs(c) / std::hypot(c, d);
  return k * z * std::sqrt(1.0 + d * d / (z * z));
}

cd halfplane_slit_removal_derivative(double c, double d, cd z) {
  const cd g = halfplane_slit_removal(c, d, z);
  const double k = std::abs(c) / std::hypot(c, d);
  // g' = k z / sqrt(z^2 + d^2) = k^2 z / g
  return k * k * z / g;
}

double halfplane_slit_removal_derivative_product(double c, double d) {
  const double c2 = c * c;
  const double s = c2 + d * d;
  return c2 * c2 / (s * s);
}

cd double_slit_removal(cd w, const SlitMapData& data) {
  const double r = std::abs(w);
  const double L = data.L;
  const double p = data.p();
  if (r > 1 + kRadiusTol) throw DomainError("point outside the unit disk");
  if (w.imag() == 0 && std::abs(w.real()) >= L) throw DomainError("point on a slit");
  if (std::abs(r - 1) <= kRadiusTol) {
    const double c = std::cos(std::arg(w));
    const double y = std::sqrt(std::max(0.0, 1 - c * c / (p * p)));
    return {c / p, w.imag() > 0 ? y : -y};
  }
  if (w == cd{0.0, 0.0}) return {0.0, 0.0};
  const cd t = w + 1.0 / w;
  const cd s = std::sqrt(1.0 - 4.0 * p * p / (t * t));
  return t * (1.0 - s) / (2.0 * p);
}

}  // namespace crm
