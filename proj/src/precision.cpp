#include "crm/precision.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdio>

#include "crm/confmap.hpp"
#include "crm/elliptic.hpp"
#include "crm/oracle.hpp"
#include "crm/restriction.hpp"

namespace crm {

namespace {

using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

PrecisionCase make_case(std::string suite, std::string label, double value, double reference, double tol) {
  PrecisionCase c;
  c.suite = std::move(suite);
  c.label = std::move(label);
  c.value = value;
  c.reference = reference;
  c.rel_error = std::abs(value - reference) / std::abs(reference);
  c.tolerance = tol;
  c.pass = c.rel_error <= tol;
  return c;
}

// Relative error of e^{log_value} against e^{log_reference}.
PrecisionCase make_log_case(std::string suite, std::string label, double log_value, double log_reference,
                            double tol) {
  PrecisionCase c = make_case(std::move(suite), std::move(label), log_value, log_reference, tol);
  c.rel_error = std::abs(std::expm1(log_value - log_reference));
  c.pass = c.rel_error <= tol;
  return c;
}

void theta_jacobi(std::vector<PrecisionCase>& out) {
  for (double t : {1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0}) {
    const double ln = -kPi * t;
    const double t2 = theta_series(ThetaKind::theta2, 0.0, ln);
    const double t3 = theta_series(ThetaKind::theta3, 0.0, ln);
    const double t0 = theta_series(ThetaKind::theta0, 0.0, ln);
    out.push_back(make_case("theta_jacobi", fmt("log_nome=-%gpi", t), std::pow(t2, 4) + std::pow(t0, 4),
                            std::pow(t3, 4), 1e-12));
  }
}

void branch_overlap(std::vector<PrecisionCase>& out) {
  for (double a : {-0.8, -0.7, -0.6, -0.5, -0.4, -0.3}) {
    const auto p = AnnulusParams<double>::from_log_radius(a);
    out.push_back(make_case("branch_overlap", fmt("a=%g", a), slit_width_direct(p).L, slit_width_transformed(p).L,
                            1e-10));
  }
}

void slit_width_high_precision(std::vector<PrecisionCase>& out) {
  for (double a : {-2.0, -1.0, -kPi / 4, -0.5, -0.3, -0.1, -0.05, -0.01}) {
    const auto w = slit_width(AnnulusParams<double>::from_log_radius(a));
    const auto wh = slit_width(AnnulusParams<HighPrecision>::from_log_radius(HighPrecision(a)));
    out.push_back(make_log_case("one_minus_L_100digit", fmt("a=%.17g", a), w.one_minus_L.log_abs,
                                static_cast<double>(wh.one_minus_L.log_abs), 1e-12));
  }
}

void elliptic_agm(std::vector<PrecisionCase>& out) {
  for (double a : {-2.0, -1.0, -kPi / 4, -0.5, -0.3, -0.1, -0.05, -0.01}) {
    const SlitMapData d = slit_map_data(a);
    const double L = d.L;
    const double log_kp = 0.5 * (d.one_minus_L.log_abs + std::log1p(L) + std::log1p(L * L));
    out.push_back(make_case("elliptic_K_agm", fmt("a=%.17g", a), d.K, elliptic_K_agm(std::exp(log_kp)), 1e-12));
  }
}

void cross_term(std::vector<PrecisionCase>& out) {
  struct Config {
    double a, x, b;
  };
  const Config configs[] = {{-0.8, kPi / 2, 0.625}, {-0.6, kPi / 2, 1.0},  {-0.5, 2.0, 0.625},  {-0.4, 2.5, 1.0},
                            {-0.35, kPi / 2, 2.0},  {-0.3, 2.0, 1.2},      {-0.25, kPi / 2, 0.625},
                            {-0.2, 1.2, 1.0},       {-0.15, 1.0, 1.25},    {-0.12, 0.8, 0.625},
                            {-0.1, 0.95, 1.0},      {-0.45, 2.2, 0.7}};
  for (const Config& c : configs) {
    const SlitMapData d = slit_map_data(c.a);
    const Endpoints ep = endpoints(c.x, d);
    const double oml = d.one_minus_L.value();
    const double u = ep.u.value();
    const LogReal<double> series = hit_both_slits(LogReal<double>::from_value(oml), LogReal<double>::from_value(u), c.b);
    const HighPrecision ref = hit_both_slits_direct(HighPrecision(oml), HighPrecision(u), HighPrecision(c.b));
    char label[96];
    std::snprintf(label, sizeof label, "a=%g x=%.6g b=%g", c.a, c.x, c.b);
    out.push_back(make_log_case("cross_term_100digit", label, series.log_abs,
                                static_cast<double>(boost::multiprecision::log(ref)), 1e-8));
  }
}

}  // namespace

std::vector<PrecisionCase> run_precision_checks() {
  std::vector<PrecisionCase> out;
  theta_jacobi(out);
  branch_overlap(out);
  slit_width_high_precision(out);
  elliptic_agm(out);
  cross_term(out);
  return out;
}

}  // namespace crm
