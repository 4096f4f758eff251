#include "crm/elliptic.hpp"

#include <cmath>
#include <vector>

namespace crm {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kLogRelThreshold = std::log(std::ldexp(1.0, -60));

}  // namespace

TransformedQuotient transformed_quotient(const AnnulusParams<double>& p, std::complex<double> v) {
  using LC = LogComplex<double>;
  TransformedQuotient out;
  if (v.real() > 0.5) {
    v -= 1.0;
    out.negated = true;
  } else if (v.real() < -0.5) {
    v += 1.0;
    out.negated = true;
  }

  // 2 i pi v / tau with tau = i * im_tau.
  const double scale = 2.0 * kPi / p.im_tau;
  out.X = LC::from_log_polar(scale * v.real(), scale * v.imag());
  const LC x_inv = inverse(out.X);
  const LC x_sum = out.X + x_inv;

  // 1 - factor_n = 2 eps (X + 1/X) / ((1 + eps X)(1 + eps/X)),  eps = h'^{2n}.
  // Truncation is relative to the first factor: X (1 - Pi) can be O(1) even
  // when every factor is below any absolute threshold.
  std::vector<LC> deltas;
  double max_log_delta = -std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int n = 1; n <= detail::kMaxSeriesTerms; ++n) {
    const double log_eps = 2.0 * n * p.log_hp;
    const LC eps_x{log_eps + out.X.log_abs, out.X.phase};
    const LC eps_xi{log_eps + x_inv.log_abs, x_inv.phase};
    const std::complex<double> den = (1.0 + eps_x.value()) * (1.0 + eps_xi.value());
    const LC delta = LC{std::log(2.0) + log_eps, {1.0, 0.0}} * x_sum / LC::from_value(den);
    if (delta.is_zero() || (!deltas.empty() && delta.log_abs < deltas.front().log_abs + kLogRelThreshold)) {
      converged = true;
      break;
    }
    max_log_delta = std::max(max_log_delta, delta.log_abs);
    deltas.push_back(delta);
  }
  if (!converged) throw NonConvergent("transformed theta product: no convergence within 200 factors");

  if (deltas.empty()) {
    out.one_minus_pi = LC::zero();
  } else if (max_log_delta < -30.0) {
    // Second-order terms are below e^-30 relative; sum the first-order part.
    LC acc = LC::zero();
    for (const auto& d : deltas) acc = acc + d;
    out.one_minus_pi = acc;
  } else {
    std::complex<double> log_pi{0.0, 0.0};
    for (const auto& d : deltas) log_pi += log1p(-d.value());
    out.one_minus_pi = LC::from_value(-expm1(log_pi));
  }

  const LC one = LC::from_value({1.0, 0.0});
  const std::complex<double> pi_c = 1.0 - out.one_minus_pi.value();
  const LC x_minus_1 = out.X - one;
  const LC x_plus_1 = out.X + one;
  const LC ratio = x_minus_1 / x_plus_1 * LC::from_value(pi_c);

  if (!out.negated) {
    out.value = ratio;
    out.one_minus_value = (out.X * out.one_minus_pi + LC::from_value(1.0 + pi_c)) / x_plus_1;
  } else {
    out.value = -ratio;
    out.one_minus_value = (out.X * LC::from_value(1.0 + pi_c) + out.one_minus_pi) / x_plus_1;
  }
  return out;
}

LogComplex<double> theta_ratio_transformed(const AnnulusParams<double>& p, TransformedRatio which,
                                           std::complex<double> v) {
  if (-p.a > kPi / 2 * (1 + 1e-15)) {
    throw DomainError("transformed theta ratio requires |a| <= pi/2");
  }
  if (which == TransformedRatio::L_ratio) {
    const auto w = slit_width_transformed(p);
    return LogComplex<double>::from_value({w.L, 0.0});
  }
  return transformed_quotient(p, v).value;
}

}  // namespace crm
