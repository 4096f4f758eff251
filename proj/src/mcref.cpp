#include "crm/mcref.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "crm/asympt.hpp"

namespace crm {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kStepFactor = 0.3;

// Squared distance from the origin to the segment [p, p + d].
double segment_dist2(double px, double py, double dx, double dy) {
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? -(px * dx + py * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = px + t * dx;
  const double ey = py + t * dy;
  return ex * ex + ey * ey;
}

}  // namespace

void McConfig::validate() const {
  if (!(q >= 0 && q < 1)) throw DomainError("q must lie in [0, 1)");
  if (!(x > 0 && x < 2 * kPi)) throw DomainError("x must lie in (0, 2pi)");
  if (n_samples < 1) throw DomainError("n_samples must be positive");
  if (!(delta > 0 && delta <= 0.1)) throw DomainError("delta must lie in (0, 0.1]");
  if (!(target_arc > 0 && target_arc <= 0.1)) throw DomainError("target_arc must lie in (0, 0.1]");
  if (!(step > 0 && step <= delta * delta / 10)) throw DomainError("step must lie in (0, delta^2/10]");
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ExcursionOutcome sample_excursion(const McConfig& cfg, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);

  const cd z0 = std::polar(1.0 - cfg.delta, cfg.x);
  const cd w0 = cd{0.0, 1.0} * (1.0 + z0) / (1.0 - z0);

  // Inner disk |z| <= q in half-plane coordinates.
  const double q2 = cfg.q * cfg.q;
  const double centre = (1 + q2) / (1 - q2);
  const double radius = 2 * cfg.q / (1 - q2);
  const double radius2 = radius * radius;
  const bool has_disk = cfg.q > 0;
  // |1 - z| = 2 / |w + i|
  const double exit_modulus = 2.0 / cfg.target_arc;

  double X = w0.real();
  double y1 = w0.imag();
  double y2 = 0;
  double y3 = 0;
  double Y = y1;

  for (std::uint64_t n = 0; n < kMcStepBudget; ++n) {
    const double mod2 = X * X + (Y + 1) * (Y + 1);  // |w + i|^2
    double dt = cfg.step * mod2 * mod2 / 4;
    if (has_disk) {
      const double dist = std::hypot(X, Y - centre) - radius;
      dt = std::max(dt, (kStepFactor * dist) * (kStepFactor * dist));
    }
    const double s = std::sqrt(dt);
    const double nX = X + s * normal(rng);
    y1 += s * normal(rng);
    y2 += s * normal(rng);
    y3 += s * normal(rng);
    const double nY = std::sqrt(y1 * y1 + y2 * y2 + y3 * y3);

    if (has_disk && segment_dist2(X, Y - centre, nX - X, nY - Y) <= radius2) return {true, false};
    X = nX;
    Y = nY;
    if (std::hypot(X, Y + 1) > exit_modulus) return {true, true};
  }
  throw StepBudgetExceeded("excursion exceeded the step budget");
}

McEstimate estimate_avoidance(const McConfig& cfg) {
  cfg.validate();
  const std::uint64_t n_blocks = (cfg.n_samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<std::uint64_t> accepted(n_blocks, 0);
  std::vector<std::uint64_t> avoided(n_blocks, 0);
  parallel_for(n_blocks, [&](std::size_t k) {
    std::mt19937_64 rng(splitmix64(cfg.seed, k));
    const std::uint64_t begin = k * kMcBlockSize;
    const std::uint64_t end = std::min(cfg.n_samples, begin + kMcBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const ExcursionOutcome o = sample_excursion(cfg, rng);
      accepted[k] += o.accepted;
      avoided[k] += o.accepted && o.avoided;
    }
  });

  McEstimate est;
  est.seed = cfg.seed;
  for (std::uint64_t k = 0; k < n_blocks; ++k) {
    est.n_accepted += accepted[k];
    est.n_avoid += avoided[k];
  }
  if (est.n_accepted < 100) throw InsufficientAcceptance("fewer than 100 accepted excursions");
  est.p_hat = static_cast<double>(est.n_avoid) / static_cast<double>(est.n_accepted);
  est.ci_halfwidth = 3.0 * std::sqrt(est.p_hat * (1 - est.p_hat) / static_cast<double>(est.n_accepted));
  return est;
}

}  // namespace crm
