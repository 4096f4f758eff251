#ifndef CRM_ASYMPT_HPP
#define CRM_ASYMPT_HPP

// Slope harness: fits log-bounds against 1/a and compares with the predicted
// exponent b*pi*x (pi^2 for the cross term), plus the (b, x) region classifier.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "crm/restriction.hpp"

namespace crm {

enum class RegionVerdict { CoveredByCondition1, CoveredByCondition2, Conjectured, Invalid };

const char* to_string(RegionVerdict v);

// Condition 1: b in [5/8,1] u [5/4,inf), x in (0,pi].
// Condition 2: b in (1,5/4), x in (0,pi), b x <= pi.
// Conjectured: b in (1,5/4), x in (0,pi], b x > pi.
// The comparison b x <= pi allows 4 ulp so that b = 1.2, x = pi/1.2 lands on
// the closed side despite rounding.
RegionVerdict classify(double b, double x);

enum class Quantity { lower, upper, cross, decomposition };

const char* to_string(Quantity q);
Quantity parse_quantity(std::string_view s);  // DomainError on unknown names

struct SlopeFit {
  Quantity quantity = Quantity::lower;
  double b = 0;
  double x = 0;
  double slope = 0;
  double intercept = 0;
  double target = 0;
  double ratio = 0;
  double rms_residual = 0;
  std::vector<double> grid;        // sorted, increasing toward 0
  std::vector<double> log_values;  // fitted log-quantity per grid point
  std::vector<double> log_ratio;   // log value / (target / a), the single-point diagnostic
};

std::vector<double> default_grid();   // {-0.2, -0.15, -0.1, -0.07, -0.05}
std::vector<double> extended_grid();  // default_grid plus {-0.035, -0.02}

// Least squares of log_values against 1/a; grid must be strictly increasing,
// negative, and have at least 4 points.
SlopeFit fit_log_slope(const std::vector<double>& grid, const std::vector<double>& log_values, double target);

double log_quantity(Quantity q, double a, double b, double x);

SlopeFit slope_fit(Quantity q, double b, double x, std::vector<double> grid);

struct GapRow {
  double a = 0;
  double log_lower = 0;
  double log_upper = 0;
  double gap = 0;           // log_upper - log_lower
  double relative_gap = 0;  // gap / |log_lower|
  double headroom = 0;      // log(T1 + T2) - log(cross)
  bool flagged = false;     // headroom <= 0: cross term not below the lower bound
};

std::vector<GapRow> gap_report(double b, double x, std::vector<double> grid);

// Worker count: hardware concurrency, capped by RESTRICTION_THREADS if set.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
// exception thrown by any body is rethrown after all workers have joined.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace crm

#endif  // CRM_ASYMPT_HPP
