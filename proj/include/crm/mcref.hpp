#ifndef CRM_MCREF_HPP
#define CRM_MCREF_HPP

// Monte Carlo reference for b = 1: Brownian excursions in the unit disk from
// e^{ix} to 1, and the probability that they avoid the disk |z| <= q.
//
// The excursion is simulated in the upper half-plane through
// w = i(1+z)/(1-z), which sends 1 to infinity. There the excursion towards
// infinity is (X, Y) with X a Brownian motion and Y a 3-dimensional Bessel
// process (the norm of a 3d Brownian motion), so every sampled path reaches
// the target and increments are exact in distribution. Only inner-disk
// detection between steps is discretized: steps are taken in half-plane time
// with length max(disk step, (0.3 * distance to the inner disk)^2) and each
// chord is tested against the disk.

#include <cstdint>
#include <random>

#include "crm/errors.hpp"

namespace crm {

struct McConfig {
  double q = 0.36787944117144233;  // inner radius, [0, 1)
  double x = 3.14159265358979323846;  // endpoint angle, (0, 2pi)
  std::uint64_t n_samples = 100000;
  double step = 1e-5;         // disk-time step near the inner disk, <= delta^2 / 10
  double delta = 0.01;        // launch distance from the boundary, (0, 0.1]
  double target_arc = 0.01;   // stop once |1 - z| < target_arc, (0, 0.1]
  std::uint64_t seed = 1;

  void validate() const;  // DomainError on violated invariants
};

struct McEstimate {
  std::uint64_t n_accepted = 0;
  std::uint64_t n_avoid = 0;
  double p_hat = 0;
  double ci_halfwidth = 0;  // 3 sigma, normal approximation
  std::uint64_t seed = 0;

  double sigma() const { return ci_halfwidth / 3.0; }
};

struct ExcursionOutcome {
  bool accepted = false;
  bool avoided = false;
};

inline constexpr std::uint64_t kMcStepBudget = 100000000;
inline constexpr std::uint64_t kMcBlockSize = 4096;

ExcursionOutcome sample_excursion(const McConfig& cfg, std::mt19937_64& rng);

// Samples are grouped in blocks of kMcBlockSize; block k uses an independent
// generator seeded from splitmix64(seed, k), so the estimate does not depend
// on the number of worker threads.
McEstimate estimate_avoidance(const McConfig& cfg);

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream);

}  // namespace crm

#endif  // CRM_MCREF_HPP
