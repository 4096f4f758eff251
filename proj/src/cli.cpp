#include "crm/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "crm/asympt.hpp"
#include "crm/mcref.hpp"
#include "crm/precision.hpp"
#include "crm/restriction.hpp"

namespace crm::cli {

namespace {

constexpr double kLinearFloor = -700.0;

class RowBuilder {
 public:
  RowBuilder& num(const std::string& name, double v) { return put(name, {format_number(v), true}); }

  RowBuilder& integer(const std::string& name, long long v) { return put(name, {std::to_string(v), true}); }

  RowBuilder& str(const std::string& name, std::string v) { return put(name, {std::move(v), false}); }

  RowBuilder& flag(const std::string& name, bool v) { return put(name, {v ? "true" : "false", false}); }

  RowBuilder& empty(const std::string& name) { return put(name, {"", true}); }

  // {sign, log_value} plus the linear value when it is representable.
  RowBuilder& log_real(const std::string& name, const LogReal<double>& v) {
    integer(name + "_sign", v.sign);
    num(name + "_log", v.log_abs);
    if (v.sign != 0 && v.log_abs > kLinearFloor) return num(name, v.value());
    return empty(name);
  }

  void finish(Table& t) {
    if (t.rows.empty()) t.header = names_;
    t.rows.push_back(std::move(cells_));
    names_.clear();
    cells_.clear();
  }

 private:
  RowBuilder& put(const std::string& name, Cell c) {
    names_.push_back(name);
    cells_.push_back(std::move(c));
    return *this;
  }

  std::vector<std::string> names_;
  std::vector<Cell> cells_;
};

bool needs_quotes(const std::string& s) { return s.find_first_of(",\"\n\r") != std::string::npos; }

void write_field(std::string& out, const std::string& s) {
  if (!needs_quotes(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (!c.numeric) {
    if (c.text == "true") return true;
    if (c.text == "false") return false;
    return c.text;
  }
  if (c.text.empty()) return nullptr;
  if (c.text.find_first_of(".eEni") == std::string::npos) return std::stoll(c.text);
  const double v = std::strtod(c.text.c_str(), nullptr);
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void bounds_row(RowBuilder& r, const BoundPair& bp) {
  r.num("a", bp.a).num("b", bp.b).num("x", bp.x);
  r.log_real("lower", bp.lower).log_real("upper", bp.upper).log_real("upper_raw", bp.upper_raw);
  r.num("gap", bp.upper.log_abs - bp.lower.log_abs);
  r.log_real("t1", bp.terms.t1).log_real("t2", bp.terms.t2).log_real("t2_ray", bp.terms.t2_ray);
  r.log_real("cross", bp.terms.cross).log_real("prefactor", bp.terms.prefactor);
  r.str("verdict", to_string(classify(bp.b, bp.x)));
}

Table map_table(double a) {
  const SlitMapData d = slit_map_data(a);
  Table t;
  RowBuilder r;
  r.num("a", a).num("q", d.params.q).num("L", d.L).log_real("one_minus_L", d.one_minus_L);
  r.num("K", d.K).num("K_prime", complete_elliptic_K_prime(d.params));
  r.num("log_h", d.params.log_h).num("h", std::exp(d.params.log_h));
  r.num("log_h_prime", d.params.log_hp).num("h_prime", std::exp(d.params.log_hp));
  r.str("branch", d.params.direct_branch() ? "direct" : "transformed");
  r.finish(t);
  return t;
}

Table bounds_table(double a, double b, double x) {
  Table t;
  RowBuilder r;
  bounds_row(r, avoidance_bounds(a, b, x));
  r.finish(t);
  return t;
}

Table slope_table(Quantity q, double b, double x, const std::vector<double>& grid) {
  const SlopeFit fit = slope_fit(q, b, x, grid);
  Table t;
  for (std::size_t i = 0; i < fit.grid.size(); ++i) {
    RowBuilder r;
    r.str("quantity", to_string(fit.quantity)).num("b", fit.b).num("x", fit.x);
    r.num("a", fit.grid[i]).num("log_value", fit.log_values[i]).num("log_ratio", fit.log_ratio[i]);
    r.num("slope", fit.slope).num("intercept", fit.intercept).num("target", fit.target);
    r.num("ratio", fit.ratio).num("rms_residual", fit.rms_residual);
    r.finish(t);
  }
  return t;
}

Table gap_table(double b, double x, const std::vector<double>& grid) {
  Table t;
  for (const GapRow& g : gap_report(b, x, grid)) {
    RowBuilder r;
    r.num("b", b).num("x", fold_angle(x)).num("a", g.a);
    r.num("log_lower", g.log_lower).num("log_upper", g.log_upper).num("gap", g.gap);
    r.num("relative_gap", g.relative_gap).num("headroom", g.headroom).flag("flagged", g.flagged);
    r.finish(t);
  }
  return t;
}

Table classify_table(double b, double x) {
  Table t;
  RowBuilder r;
  r.num("b", b).num("x", x).str("verdict", to_string(classify(b, x)));
  r.finish(t);
  return t;
}

Table mc_table(const McConfig& cfg) {
  const McEstimate est = estimate_avoidance(cfg);
  Table t;
  RowBuilder r;
  r.num("q", cfg.q).num("x", cfg.x).integer("samples", static_cast<long long>(cfg.n_samples));
  r.str("seed", std::to_string(est.seed));
  r.num("step", cfg.step).num("delta", cfg.delta).num("target_arc", cfg.target_arc);
  r.integer("n_accepted", static_cast<long long>(est.n_accepted));
  r.integer("n_avoid", static_cast<long long>(est.n_avoid));
  r.num("p_hat", est.p_hat).num("ci_halfwidth", est.ci_halfwidth);
  if (cfg.q > 0) {
    const BoundPair bp = avoidance_bounds(std::log(cfg.q), 1.0, cfg.x);
    r.log_real("lower", bp.lower).log_real("upper", bp.upper);
    const double lo = bp.lower.value() - est.ci_halfwidth;
    const double hi = bp.upper.value() + est.ci_halfwidth;
    r.flag("bracketed", est.p_hat >= lo && est.p_hat <= hi);
  } else {
    r.empty("lower_sign").empty("lower_log").empty("lower");
    r.empty("upper_sign").empty("upper_log").empty("upper");
    r.str("bracketed", "");
  }
  r.finish(t);
  return t;
}

Table precision_table(bool& all_pass) {
  Table t;
  all_pass = true;
  for (const PrecisionCase& c : run_precision_checks()) {
    RowBuilder r;
    r.str("suite", c.suite).str("case", c.label);
    r.num("value", c.value).num("reference", c.reference);
    r.num("rel_error", c.rel_error).num("tolerance", c.tolerance).flag("pass", c.pass);
    r.finish(t);
    all_pass = all_pass && c.pass;
  }
  return t;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    write_field(out, t.header[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      write_field(out, row[i].text);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

Table parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool pending = false;  // a record has started
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      pending = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      pending = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      pending = false;
    } else if (c != '\r') {
      field += c;
      pending = true;
    }
  }
  if (in_quotes) throw std::invalid_argument("unterminated quoted CSV field");
  if (pending) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }

  Table t;
  if (records.empty()) return t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    for (auto& f : records[r]) row.push_back({std::move(f), false});
    t.rows.push_back(std::move(row));
  }
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restriction-measure avoidance probabilities in annuli"};
  app.name("crm");
  app.fallthrough();

  std::string format = "csv";
  bool precision_check = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--precision-check", precision_check, "Run the precision consistency suites");

  double a = 0, b = 0, x = 0;
  std::vector<double> grid;
  std::string quantity = "lower";

  auto* map = app.add_subcommand("map", "Slit width, elliptic integrals and nomes for log-radius a");
  map->add_option("--a", a, "Log of the inner radius (< 0)")->required();

  auto* bounds = app.add_subcommand("bounds", "Lower/upper bounds with their breakdown");
  bounds->add_option("--a", a, "Log of the inner radius (< 0)")->required();
  bounds->add_option("--b", b, "Restriction exponent (>= 5/8)")->required();
  bounds->add_option("--x", x, "Endpoint angle in (0, 2pi)")->required();

  auto* slope = app.add_subcommand("slope", "Fit a log-quantity against 1/a");
  slope->add_option("--b", b, "Restriction exponent")->required();
  slope->add_option("--x", x, "Endpoint angle")->required();
  slope->add_option("--a-grid", grid, "Comma-separated a values")->delimiter(',')->required();
  slope->add_option("--quantity", quantity, "lower|upper|cross|decomposition")
      ->check(CLI::IsMember({"lower", "upper", "cross", "decomposition"}));

  auto* gap = app.add_subcommand("gap", "Per-a gap between the bounds and cross-term headroom");
  gap->add_option("--b", b, "Restriction exponent")->required();
  gap->add_option("--x", x, "Endpoint angle")->required();
  gap->add_option("--a-grid", grid, "Comma-separated a values")->delimiter(',')->required();

  auto* cls = app.add_subcommand("classify", "Which hypothesis covers (b, x)");
  cls->add_option("--b", b, "Restriction exponent")->required();
  cls->add_option("--x", x, "Endpoint angle")->required();

  McConfig mc_cfg;
  auto* mc = app.add_subcommand("mc", "Monte Carlo avoidance estimate for b = 1");
  mc->add_option("--q", mc_cfg.q, "Inner radius in [0, 1)")->required();
  mc->add_option("--x", mc_cfg.x, "Endpoint angle in (0, 2pi)")->required();
  mc->add_option("--samples", mc_cfg.n_samples, "Number of excursions")->required();
  mc->add_option("--seed", mc_cfg.seed, "64-bit seed")->required();
  mc->add_option("--step", mc_cfg.step, "Disk-time step")->capture_default_str();
  mc->add_option("--delta", mc_cfg.delta, "Launch distance from the boundary")->capture_default_str();
  mc->add_option("--target-arc", mc_cfg.target_arc, "Stopping distance from 1")->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("crm");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    const bool has_sub = !app.get_subcommands().empty();
    if (precision_check && has_sub) throw CLI::ValidationError("--precision-check runs on its own");
    if (!precision_check && !has_sub) throw CLI::RequiredError("a subcommand is required");
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Table t;
    int code = 0;
    if (precision_check) {
      bool ok = false;
      t = precision_table(ok);
      if (!ok) code = 1;
    } else if (map->parsed()) {
      t = map_table(a);
    } else if (bounds->parsed()) {
      t = bounds_table(a, b, x);
    } else if (slope->parsed()) {
      t = slope_table(parse_quantity(quantity), b, x, grid);
    } else if (gap->parsed()) {
      t = gap_table(b, x, grid);
    } else if (cls->parsed()) {
      t = classify_table(b, x);
    } else if (mc->parsed()) {
      t = mc_table(mc_cfg);
    }
    out << (format == "json" ? to_json(t) : to_csv(t));
    if (code != 0) err << "PrecisionCheckFailed: at least one case exceeded its tolerance\n";
    return code;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace crm::cli
