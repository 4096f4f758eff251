#ifndef CRM_ORACLE_HPP
#define CRM_ORACLE_HPP

// Arithmetic-geometric mean and the complete elliptic integral K(k) from it,
// independent of the theta-series machinery.

#include <cmath>

#include "crm/elliptic.hpp"
#include "crm/errors.hpp"

namespace crm {

template <typename T>
T agm(T x, T y) {
  using std::abs;
  using std::sqrt;
  if (!(x > 0 && y > 0)) throw DomainError("agm requires positive arguments");
  const T tol = std::numeric_limits<T>::epsilon() * 4;
  for (int i = 0; i < 100; ++i) {
    const T m = (x + y) / 2;
    const T g = sqrt(x * y);
    if (abs(m - g) <= tol * m) return m;
    x = m;
    y = g;
  }
  throw NonConvergent("agm did not converge");
}

// K in terms of the complementary modulus k' = sqrt(1 - k^2).
template <typename T>
T elliptic_K_agm(const T& k_prime) {
  return pi_v<T>() / (2 * agm(T(1), k_prime));
}

}  // namespace crm

#endif  // CRM_ORACLE_HPP
