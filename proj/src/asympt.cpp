#include "crm/asympt.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace crm {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 4) throw DomainError("slope grid needs at least 4 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] < 0)) throw DomainError("slope grid values must be negative");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("slope grid must be strictly increasing");
  }
}

double target_for(Quantity q, double b, double x) {
  return q == Quantity::cross ? kPi * kPi : b * kPi * fold_angle(x);
}

}  // namespace

const char* to_string(RegionVerdict v) {
  switch (v) {
    case RegionVerdict::CoveredByCondition1: return "CoveredByCondition1";
    case RegionVerdict::CoveredByCondition2: return "CoveredByCondition2";
    case RegionVerdict::Conjectured: return "Conjectured";
    case RegionVerdict::Invalid: return "Invalid";
  }
  return "Invalid";
}

RegionVerdict classify(double b, double x) {
  if (!std::isfinite(b) || !std::isfinite(x)) return RegionVerdict::Invalid;
  if (!(b >= kMinExponent) || !(x > 0 && x <= kPi)) return RegionVerdict::Invalid;
  if (b <= 1.0 || b >= 1.25) return RegionVerdict::CoveredByCondition1;
  const double eps = std::numeric_limits<double>::epsilon();
  if (x < kPi && b * x <= kPi * (1 + 4 * eps)) return RegionVerdict::CoveredByCondition2;
  return RegionVerdict::Conjectured;
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::lower: return "lower";
    case Quantity::upper: return "upper";
    case Quantity::cross: return "cross";
    case Quantity::decomposition: return "decomposition";
  }
  return "lower";
}

Quantity parse_quantity(std::string_view s) {
  if (s == "lower") return Quantity::lower;
  if (s == "upper") return Quantity::upper;
  if (s == "cross") return Quantity::cross;
  if (s == "decomposition") return Quantity::decomposition;
  throw DomainError("unknown quantity '" + std::string(s) + "'");
}

std::vector<double> default_grid() { return {-0.2, -0.15, -0.1, -0.07, -0.05}; }

std::vector<double> extended_grid() { return {-0.2, -0.15, -0.1, -0.07, -0.05, -0.035, -0.02}; }

SlopeFit fit_log_slope(const std::vector<double>& grid, const std::vector<double>& log_values, double target) {
  check_grid(grid);
  if (log_values.size() != grid.size()) throw DomainError("grid and values differ in length");
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0 / grid[i];
    design(i, 1) = 1.0;
    y(i) = log_values[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - design * coef;

  SlopeFit fit;
  fit.slope = coef(0);
  fit.intercept = coef(1);
  fit.target = target;
  fit.ratio = fit.slope / target;
  fit.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  fit.grid = grid;
  fit.log_values = log_values;
  fit.log_ratio.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) fit.log_ratio[i] = log_values[i] / (target / grid[i]);
  return fit;
}

double log_quantity(Quantity q, double a, double b, double x) {
  switch (q) {
    case Quantity::lower: return avoidance_bounds(a, b, x).lower.log_abs;
    case Quantity::upper: return avoidance_bounds(a, b, x).upper.log_abs;
    case Quantity::cross: {
      RestrictionExponent{b};
      const SlitMapData data = slit_map_data(a);
      return hit_both_slits(endpoints(fold_angle(x), data), data, b).log_abs;
    }
    case Quantity::decomposition: return decomposition_upper(a, b, x).log_abs;
  }
  throw DomainError("unknown quantity");
}

SlopeFit slope_fit(Quantity q, double b, double x, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  check_grid(grid);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = log_quantity(q, grid[i], b, x); });
  SlopeFit fit = fit_log_slope(grid, values, target_for(q, b, x));
  fit.quantity = q;
  fit.b = b;
  fit.x = fold_angle(x);
  return fit;
}

std::vector<GapRow> gap_report(double b, double x, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  check_grid(grid);
  std::vector<GapRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const BoundPair bp = avoidance_bounds(grid[i], b, x);
    GapRow& row = rows[i];
    row.a = grid[i];
    row.log_lower = bp.lower.log_abs;
    row.log_upper = bp.upper.log_abs;
    row.gap = row.log_upper - row.log_lower;
    row.relative_gap = row.gap / std::abs(row.log_lower);
    row.headroom = (bp.terms.t1 + bp.terms.t2).log_abs - bp.terms.cross.log_abs;
    row.flagged = row.headroom <= 0;
  });
  return rows;
}

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("RESTRICTION_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

}  // namespace crm
