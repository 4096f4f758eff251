#include <doctest.h>

#include "crm/mcref.hpp"
#include "crm/restriction.hpp"
#include "support.hpp"

using namespace crm;
using crm::test::kPi;

namespace {

McConfig base(double q, double x, std::uint64_t n, std::uint64_t seed = 11) {
  McConfig c;
  c.q = q;
  c.x = x;
  c.n_samples = n;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  McConfig c = base(0.3, 1.0, 100);
  CHECK_NOTHROW(c.validate());
  c.step = 1e-4;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = base(1.0, 1.0, 100);
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = base(0.3, 0.0, 100);
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = base(0.3, 1.0, 100);
  c.delta = 0.2;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = base(0.3, 1.0, 100);
  c.target_arc = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  CHECK_THROWS_AS(estimate_avoidance(base(0.3, 1.0, 50)), InsufficientAcceptance);
}

TEST_CASE("no inner disk means every excursion avoids it") {
  const McEstimate e = estimate_avoidance(base(0.0, 2.0, 2000));
  CHECK(e.n_accepted == 2000);
  CHECK(e.n_avoid == 2000);
  CHECK(e.p_hat == 1.0);
}

TEST_CASE("large inner disk is almost never avoided") {
  const McEstimate e = estimate_avoidance(base(0.95, kPi, 2000));
  CHECK(e.p_hat < 0.01);
}

TEST_CASE("single excursions replay bit-identically") {
  const McConfig c = base(0.4, 2.0, 1);
  std::mt19937_64 r1(5), r2(5);
  for (int i = 0; i < 200; ++i) {
    const ExcursionOutcome a = sample_excursion(c, r1);
    const ExcursionOutcome b = sample_excursion(c, r2);
    CHECK(a.accepted == b.accepted);
    CHECK(a.avoided == b.avoided);
  }
}

TEST_CASE("estimates are deterministic and thread-count independent") {
  const McConfig c = base(0.3, 2.5, 10000, 99);
  setenv("RESTRICTION_THREADS", "1", 1);
  const McEstimate a = estimate_avoidance(c);
  setenv("RESTRICTION_THREADS", "3", 1);
  const McEstimate b = estimate_avoidance(c);
  unsetenv("RESTRICTION_THREADS");
  CHECK(a.n_avoid == b.n_avoid);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.seed == 99);
  CHECK(splitmix64(1, 0) != splitmix64(1, 1));
  CHECK(splitmix64(1, 0) != splitmix64(2, 0));
}

TEST_CASE("reflection x -> 2pi - x") {
  const McEstimate a = estimate_avoidance(base(0.3, 1.2, 20000, 3));
  const McEstimate b = estimate_avoidance(base(0.3, 2 * kPi - 1.2, 20000, 3));
  CHECK(std::abs(a.p_hat - b.p_hat) < 3 * std::max(a.sigma(), b.sigma()));
}

TEST_CASE("avoidance decreases in q") {
  const McEstimate small = estimate_avoidance(base(0.2, 2.0, 20000, 4));
  const McEstimate large = estimate_avoidance(base(0.4, 2.0, 20000, 5));
  CHECK(small.p_hat >= large.p_hat - 3 * large.sigma());
}

TEST_CASE("confidence interval scales like one over root n") {
  const McEstimate a = estimate_avoidance(base(0.2, 2.0, 20000, 6));
  const McEstimate b = estimate_avoidance(base(0.2, 2.0, 40000, 7));
  CHECK(std::abs(b.ci_halfwidth / a.ci_halfwidth - 1 / std::sqrt(2.0)) < 0.1 / std::sqrt(2.0));
}

TEST_CASE("estimate within the rigorous bounds for a moderate annulus") {
  const double a = -0.7;
  const McEstimate e = estimate_avoidance(base(std::exp(a), 2.0, 20000, 8));
  const BoundPair bp = avoidance_bounds(a, 1.0, 2.0);
  CHECK(e.p_hat >= bp.lower.value() - e.ci_halfwidth);
  CHECK(e.p_hat <= bp.upper.value() + e.ci_halfwidth);
}
