#ifndef CRM_CONFMAP_HPP
#define CRM_CONFMAP_HPP

// Conformal map f of the annulus {q < |z| < 1} onto the slit disk U \ [-L, L],
// normalized by f(1) = 1:
//
//   f(z) = L sn((2iK/pi) log(z/q) + K; q^4) = theta1(v|tau) / theta0(v|tau),
//   v = (i/pi) log(z/q) + 1/2,
//
// plus the explicit slit-removal maps used by the avoidance probabilities.
// The quantities 1 - L, 1 - f and u are carried in log form throughout.

#include <complex>

#include "crm/elliptic.hpp"
#include "crm/log_space.hpp"

namespace crm {

struct SlitMapData {
  AnnulusParams<double> params;
  double L;                     // slit half-width, (0, 1)
  LogReal<double> one_minus_L;  // authoritative when L rounds to 1
  LogReal<double> p_minus_1;    // p - 1 = (1-L)^2 / (2L), where 2p = L + 1/L
  double K;                     // complete elliptic integral at modulus L^2

  double p() const { return 1.0 + p_minus_1.value(); }
};

SlitMapData slit_map_data(const AnnulusParams<double>& params);
SlitMapData slit_map_data(double a);

// f(z) for q <= |z| <= 1.
std::complex<double> slit_map(std::complex<double> z, const SlitMapData& data);

// 1 - f(z), accurate when f(z) is exponentially close to 1.
LogComplex<double> slit_map_one_minus(std::complex<double> z, const SlitMapData& data);

// f'(z) = (2iK/(pi z)) [(L^2 - f^2)(1 - L^2 f^2)]^{1/2}, with the square-root
// branch continued from f'(1) > 0. Throws SlitTipSingularity when f(z) is
// within 1e-12 of +-L.
LogComplex<double> slit_map_derivative(std::complex<double> z, const SlitMapData& data);

// Images of the symmetric boundary pair z1 = e^{ix/2}, z2 = e^{-ix/2}.
struct Endpoints {
  double x = 0;                          // (0, pi]
  std::complex<double> v;                // (i/pi) log(z1/q) + 1/2
  LogComplex<double> one_minus_w1;       // 1 - f(z1)
  LogReal<double> u;                     // i (1 + w1)/(1 - w1), real and <= -1

  std::complex<double> z1() const { return std::polar(1.0, x / 2); }
  std::complex<double> w1() const { return 1.0 - one_minus_w1.value(); }
};

Endpoints endpoints(double x, const SlitMapData& data);

// g_{c,d}(z) = |c|/sqrt(c^2+d^2) sqrt(z^2+d^2): H \ i(0,d] onto H fixing +-c.
std::complex<double> halfplane_slit_removal(double c, double d, std::complex<double> z);
std::complex<double> halfplane_slit_removal_derivative(double c, double d, std::complex<double> z);
// |g'(c) g'(-c)| = c^4 / (c^2 + d^2)^2
double halfplane_slit_removal_derivative_product(double c, double d);

// g_L(w) = (1 + w^2 - sqrt((1+w^2)^2 - 4 p^2 w^2)) / (2 p w): removes the two
// radial slits (-1,-L] and [L,1) from the unit disk, branch fixed by g_L(i) = i.
std::complex<double> double_slit_removal(std::complex<double> w, const SlitMapData& data);

}  // namespace crm

#endif  // CRM_CONFMAP_HPP
