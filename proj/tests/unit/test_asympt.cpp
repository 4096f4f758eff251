#include <doctest.h>

#include <cstdlib>
#include <numeric>

#include "crm/asympt.hpp"
#include "support.hpp"

using namespace crm;
using crm::test::kPi;
using crm::test::uniform;

TEST_CASE("classifier examples") {
  CHECK(classify(0.7, 3.0) == RegionVerdict::CoveredByCondition1);
  CHECK(classify(1.2, 2.0) == RegionVerdict::CoveredByCondition2);
  CHECK(classify(1.2, 3.0) == RegionVerdict::Conjectured);
  CHECK(classify(0.6, 1.0) == RegionVerdict::Invalid);
  CHECK(classify(1.0, 0.0) == RegionVerdict::Invalid);
  CHECK(classify(1.0, 3.2) == RegionVerdict::Invalid);
  CHECK(classify(std::nan(""), 1.0) == RegionVerdict::Invalid);
  CHECK(std::string(to_string(RegionVerdict::Conjectured)) == "Conjectured");
}

TEST_CASE("classifier is total") {
  for (int i = 0; i < 500; ++i) {
    const double b = uniform(0, 3);
    const double x = uniform(-1, 4);
    const RegionVerdict v = classify(b, x);
    const bool valid = b >= 0.625 && x > 0 && x <= kPi;
    CHECK((v == RegionVerdict::Invalid) == !valid);
  }
}

TEST_CASE("quantity names") {
  for (Quantity q : {Quantity::lower, Quantity::upper, Quantity::cross, Quantity::decomposition}) {
    CHECK(parse_quantity(to_string(q)) == q);
  }
  CHECK_THROWS_AS(parse_quantity("middle"), DomainError);
}

TEST_CASE("least squares recovers a synthetic slope") {
  const std::vector<double> grid = default_grid();
  for (int i = 0; i < 20; ++i) {
    const double s = uniform(0.1, 20);
    const double c = uniform(-5, 5);
    std::vector<double> y;
    for (double a : grid) y.push_back(s / a + c);
    const SlopeFit f = fit_log_slope(grid, y, s);
    CHECK(std::abs(f.slope - s) < 1e-12 * s);
    CHECK(std::abs(f.intercept - c) < 1e-11);
    CHECK(f.rms_residual < 1e-12);
  }
  CHECK_THROWS_AS(fit_log_slope({-0.2, -0.1, -0.05}, {1, 2, 3}, 1), DomainError);
  CHECK_THROWS_AS(fit_log_slope({-0.2, -0.1, -0.15, -0.05}, {1, 2, 3, 4}, 1), DomainError);
  CHECK_THROWS_AS(fit_log_slope({-0.2, -0.1, -0.05, 0.0}, {1, 2, 3, 4}, 1), DomainError);
}

TEST_CASE("slope of the lower bound") {
  const SlopeFit f = slope_fit(Quantity::lower, 0.625, kPi, default_grid());
  CHECK(f.target == doctest::Approx(6.1685).epsilon(1e-4));
  CHECK(f.ratio >= 0.98);
  CHECK(f.ratio <= 1.02);
  CHECK(f.grid.size() == 5);
  CHECK(f.log_ratio.size() == 5);
}

TEST_CASE("slope of the cross term") {
  const SlopeFit f = slope_fit(Quantity::cross, 0.625, kPi, default_grid());
  CHECK(f.target == doctest::Approx(kPi * kPi));
  CHECK(std::abs(f.ratio - 1) < 0.02);
}

TEST_CASE("slope of the decomposition bound") {
  const SlopeFit f = slope_fit(Quantity::decomposition, 1.25, kPi / 2, default_grid());
  CHECK(std::abs(f.ratio - 1) < 0.05);
  const SlopeFit g = slope_fit(Quantity::decomposition, 1.25, kPi / 2, extended_grid());
  CHECK(std::abs(g.ratio - 1) < 0.02);
}

TEST_CASE("slope target shrinks with the endpoint separation") {
  double prev = 1e9;
  for (double x : {0.05, 0.005, 0.0005, 0.00005}) {
    const SlopeFit f = slope_fit(Quantity::lower, 1.0, x, default_grid());
    CHECK(f.target == doctest::Approx(kPi * x));
    CHECK(f.slope > 0);
    CHECK(f.slope < f.target);
    CHECK(f.slope < prev / 5);
    prev = f.slope;
  }
}

TEST_CASE("lower-bound slope ratio approaches one on nested grids") {
  const std::vector<std::vector<double>> grids = {{-0.5, -0.4, -0.3, -0.25, -0.2},
                                                  {-0.2, -0.15, -0.1, -0.07, -0.05},
                                                  {-0.05, -0.04, -0.03, -0.025, -0.02}};
  for (auto bx : {std::pair{0.625, kPi / 2}, std::pair{1.0, kPi}, std::pair{1.2, 2.0}, std::pair{2.0, 1.0}}) {
    REQUIRE(classify(bx.first, bx.second) != RegionVerdict::Invalid);
    double prev = 1e9;
    for (const auto& g : grids) {
      const double err = std::abs(slope_fit(Quantity::lower, bx.first, bx.second, g).ratio - 1);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("gap report headroom") {
  for (const GapRow& r : gap_report(0.625, kPi / 2, default_grid())) {
    CHECK_FALSE(r.flagged);
    CHECK(r.headroom > 0);
  }
  const auto flagged = gap_report(1.2, 3.0, default_grid());
  for (const GapRow& r : flagged) CHECK(r.flagged);
  const auto rows = gap_report(0.625, kPi / 2, default_grid());
  CHECK(rows.back().gap < rows.front().gap + 1e-15);
  for (int i = 0; i < 30; ++i) {
    const double b = uniform(0.625, 3);
    const double x = uniform(0.1, std::min(kPi, kPi / b) * 0.9);
    for (const GapRow& r : gap_report(b, x, default_grid())) CHECK_FALSE(r.flagged);
  }
}

TEST_CASE("parallel evaluation is order deterministic") {
  setenv("RESTRICTION_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const SlopeFit one = slope_fit(Quantity::upper, 1.0, 2.0, extended_grid());
  setenv("RESTRICTION_THREADS", "4", 1);
  const SlopeFit many = slope_fit(Quantity::upper, 1.0, 2.0, extended_grid());
  unsetenv("RESTRICTION_THREADS");
  CHECK(one.log_values == many.log_values);
  CHECK(one.slope == many.slope);

  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw DomainError("boom");
                  }),
                  DomainError);
}
