// cespdc: correlation engine for sub-threshold cavity-enhanced SPDC.
// Subcommands: coeffs, squeeze, g2, g2-single, render, compare, scan, verify.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cespdc/bogoliubov.hpp"
#include "cespdc/comb.hpp"
#include "cespdc/core_params.hpp"
#include "cespdc/oracle.hpp"
#include "cespdc/single_mode.hpp"
#include "cespdc/spectra.hpp"
#include "cespdc/verify.hpp"

namespace {

constexpr const char* kVersion = "cespdc 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitThreshold = 3;
constexpr int kExitIo = 4;
constexpr int kExitConvergence = 5;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal representation, capped at 17 significant
// digits; keeps identical configs byte-identical across runs.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct RunConfig {
  double r1 = -1.0;
  double r2 = -1.0;
  double tau = 1.0;
  std::optional<double> gain;
  std::optional<double> gain_frac;
  std::string format = "csv";
  std::string output; // empty = stdout
  std::string omega_unit = "fsr";
};

struct ResolvedParams {
  cespdc::CavityParams cavity;
  cespdc::GainSetting gain;
};

ResolvedParams resolve(const RunConfig& cfg) {
  if (cfg.r1 < 0.0 || cfg.r2 < 0.0)
    throw UsageError("cavity parameters --r1 and --r2 are required");
  if (cfg.gain.has_value() == cfg.gain_frac.has_value())
    throw UsageError("exactly one of --gain / --gain-frac must be given");
  const auto cavity = cespdc::make_cavity(cfg.r1, cfg.r2, cfg.tau);
  const auto gain = cfg.gain ? cespdc::make_gain(cavity, *cfg.gain)
                             : cespdc::make_gain_fraction(cavity, *cfg.gain_frac);
  std::cerr << "resolved gain: r=" << fmt(gain.r())
            << " r/r_th=" << fmt(gain.fraction()) << "\n";
  return ResolvedParams{cavity, gain};
}

double omega_scale(const RunConfig& cfg) {
  if (cfg.omega_unit == "fsr") return 2.0 * std::numbers::pi / cfg.tau;
  if (cfg.omega_unit == "rad") return 1.0;
  throw UsageError("omega-unit must be 'fsr' or 'rad'");
}

class OutputSink {
public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw IoError("write failed");
  }

private:
  std::ofstream file_;
};

nlohmann::json params_json(const ResolvedParams& p, const RunConfig& cfg) {
  return nlohmann::json{{"r1", cfg.r1},
                        {"r2", cfg.r2},
                        {"tau", cfg.tau},
                        {"r", p.gain.r()},
                        {"r_th", p.gain.r_th()}};
}

void write_metadata(std::ostream& os, const ResolvedParams& p,
                    const RunConfig& cfg, const std::string& subcommand) {
  os << "# version=" << kVersion << "\n"
     << "# subcommand=" << subcommand << "\n"
     << "# r1=" << fmt(cfg.r1) << "\n"
     << "# r2=" << fmt(cfg.r2) << "\n"
     << "# tau=" << fmt(cfg.tau) << "\n"
     << "# r=" << fmt(p.gain.r()) << "\n"
     << "# r_th=" << fmt(p.gain.r_th()) << "\n";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void emit_table(const Table& table, const ResolvedParams& p, const RunConfig& cfg,
                const std::string& subcommand,
                const nlohmann::json& extra = nlohmann::json::object()) {
  OutputSink sink(cfg.output);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    nlohmann::json j{{"version", kVersion},
                     {"subcommand", subcommand},
                     {"params", params_json(p, cfg)},
                     {"columns", table.columns}};
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    os << j.dump(2) << "\n";
  } else {
    write_metadata(os, p, cfg, subcommand);
    for (auto it = extra.begin(); it != extra.end(); ++it)
      if (it.value().is_number())
        os << "# " << it.key() << "=" << fmt(it.value().get<double>()) << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
      os << "\n";
    }
  }
  sink.finish();
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw UsageError("grid needs at least one point");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw UsageError("grid bounds must be strictly increasing");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return v;
}

struct RangeSpec {
  std::string key;
  double lo, hi;
  int count;
};

RangeSpec parse_range(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw UsageError("range spec must look like key=lo:hi:count, got '" + spec + "'");
  RangeSpec r;
  r.key = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw UsageError("range spec must look like key=lo:hi:count, got '" + spec + "'");
  try {
    r.lo = std::stod(rest.substr(0, c1));
    r.hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    r.count = std::stoi(rest.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("malformed range spec '" + spec + "'");
  }
  if (r.count < 1) throw UsageError("range count must be >= 1 in '" + spec + "'");
  return r;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void run_coeffs(const RunConfig& cfg, double omega_min, double omega_max,
                int points) {
  const auto p = resolve(cfg);
  const double scale = omega_scale(cfg);
  Table t;
  t.columns = {"omega", "re_a", "im_a", "re_b", "im_b",
               "re_c",  "im_c", "re_d", "im_d", "abs_d"};
  for (double w : linspace(omega_min, omega_max, points)) {
    const double omega = w * scale;
    const auto c = cespdc::coeffs(p.cavity, p.gain, omega);
    const double abs_d = std::abs(cespdc::denominator(p.cavity, p.gain, omega));
    t.rows.push_back({omega, c.A.real(), c.A.imag(), c.B.real(), c.B.imag(),
                      c.C.real(), c.C.imag(), c.D.real(), c.D.imag(), abs_d});
  }
  emit_table(t, p, cfg, "coeffs");
}

void run_squeeze(const RunConfig& cfg, double omega_min, double omega_max,
                 int points) {
  const auto p = resolve(cfg);
  const double scale = omega_scale(cfg);
  Table t;
  t.columns = {"Omega", "S_theta0", "S_thetapi"};
  for (double w : linspace(omega_min, omega_max, points)) {
    const double omega = w * scale;
    t.rows.push_back(
        {omega, cespdc::squeezing_spectrum(p.cavity, p.gain, omega, 0.0),
         cespdc::squeezing_spectrum(p.cavity, p.gain, omega, std::numbers::pi)});
  }
  emit_table(t, p, cfg, "squeeze");
}

void run_g2(const RunConfig& cfg, int k_max, int hard_limit) {
  const auto p = resolve(cfg);
  const auto comb = cespdc::g2_comb(p.cavity, p.gain, k_max, hard_limit);
  const double denom = comb.weights.front() + comb.background;

  if (cfg.format == "json") {
    nlohmann::json j{{"version", kVersion},
                     {"params", params_json(p, cfg)},
                     {"weights", comb.weights},
                     {"background", comb.background}};
    auto& normalized = j["normalized"] = nlohmann::json::array();
    if (denom > 0.0)
      for (double w : comb.weights) normalized.push_back((w + comb.background) / denom);
    OutputSink sink(cfg.output);
    sink.stream() << j.dump(2) << "\n";
    sink.finish();
    return;
  }

  Table t;
  t.columns = {"k", "T", "weight", "normalized"};
  for (int k = 0; k <= comb.k_max(); ++k) {
    const double w = comb.weights[static_cast<std::size_t>(k)];
    t.rows.push_back({static_cast<double>(k), k * comb.tau, w,
                      denom > 0.0 ? (w + comb.background) / denom : 0.0});
  }
  emit_table(t, p, cfg, "g2",
             nlohmann::json{{"background", comb.background}});
}

void run_g2_single(const RunConfig& cfg, double t_max, int points, int modes) {
  const auto p = resolve(cfg);
  const auto sm = cespdc::from_cavity(p.cavity, p.gain);
  Table t;
  t.columns = {"T", "value"};
  for (double T : linspace(0.0, t_max * cfg.tau, points)) {
    const double value = modes < 0
                             ? cespdc::g2_single(sm, T)
                             : cespdc::g2_multi_finite_n(sm, modes, T, cfg.tau);
    t.rows.push_back({T, value});
  }
  emit_table(t, p, cfg, "g2-single",
             nlohmann::json{{"gamma1", sm.gamma1},
                            {"gamma2", sm.gamma2},
                            {"epsilon", sm.epsilon}});
}

void run_render(const RunConfig& cfg, double fwhm, double t_max, int points,
                int k_max, int hard_limit) {
  const auto p = resolve(cfg);
  if (fwhm > 0.5 * cfg.tau)
    std::cerr << "warning: fwhm=" << fmt(fwhm) << " exceeds tau/2="
              << fmt(0.5 * cfg.tau) << "; comb peaks will merge\n";
  const auto comb = cespdc::g2_comb(p.cavity, p.gain, k_max, hard_limit);
  const auto grid = linspace(-t_max * cfg.tau, t_max * cfg.tau, points);
  const auto trace = cespdc::render_lorentzian(comb, fwhm, grid);
  Table t;
  t.columns = {"T", "value"};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], trace[i]});
  emit_table(t, p, cfg, "render", nlohmann::json{{"fwhm", fwhm}});
}

void run_compare_point(const RunConfig& cfg) {
  const auto p = resolve(cfg);
  const auto cmp = cespdc::compare_models(p.cavity, p.gain);
  Table t;
  t.columns = {"r1", "r2", "gain_frac", "max_deviation", "worst_lag"};
  t.rows.push_back({cfg.r1, cfg.r2, p.gain.fraction(), cmp.max_deviation,
                    static_cast<double>(cmp.worst_lag)});
  emit_table(t, p, cfg, "compare",
             nlohmann::json{{"background_multi", cmp.background_multi},
                            {"background_single", cmp.background_single}});
}

void run_scan(RunConfig cfg, const std::vector<std::string>& specs) {
  RangeSpec r1_range{"r1", 0.5, 0.99, 25};
  RangeSpec r2_range{"r2", 0.5, 0.99, 25};
  RangeSpec frac_range{"gainfrac", 0.05, 0.95, 19};
  for (const auto& s : specs) {
    const auto r = parse_range(s);
    if (r.key == "r1")
      r1_range = r;
    else if (r.key == "r2")
      r2_range = r;
    else if (r.key == "gainfrac")
      frac_range = r;
    else
      throw UsageError("unknown scan key '" + r.key + "' (use r1, r2, gainfrac)");
  }

  OutputSink sink(cfg.output);
  auto& os = sink.stream();
  double global_max = 0.0;
  std::vector<std::array<double, 4>> rows;
  for (double r1 : linspace(r1_range.lo, r1_range.hi, r1_range.count)) {
    for (double r2 : linspace(r2_range.lo, r2_range.hi, r2_range.count)) {
      const auto cavity = cespdc::make_cavity(r1, r2, cfg.tau);
      for (double frac : linspace(frac_range.lo, frac_range.hi, frac_range.count)) {
        const auto gain = cespdc::make_gain_fraction(cavity, frac);
        const auto cmp = cespdc::compare_models(cavity, gain);
        rows.push_back({r1, r2, frac, cmp.max_deviation});
        global_max = std::max(global_max, cmp.max_deviation);
      }
    }
  }

  if (cfg.format == "json") {
    nlohmann::json j{{"version", kVersion},
                     {"columns", {"r1", "r2", "gain_frac", "max_deviation"}},
                     {"max_deviation_global", global_max}};
    auto& jr = j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) jr.push_back(row);
    os << j.dump(2) << "\n";
  } else {
    os << "# version=" << kVersion << "\n# subcommand=scan\n";
    os << "r1,r2,gain_frac,max_deviation\n";
    for (const auto& row : rows)
      os << fmt(row[0]) << "," << fmt(row[1]) << "," << fmt(row[2]) << ","
         << fmt(row[3]) << "\n";
    os << "# max_deviation_global=" << fmt(global_max) << "\n";
  }
  sink.finish();
}

int run_verify(const RunConfig& cfg) {
  OutputSink sink(cfg.output);
  auto& os = sink.stream();
  const auto report = cespdc::run_verification();
  for (const auto& c : report.checks)
    os << (c.passed() ? "PASS" : "FAIL") << "  " << c.name
       << "  worst=" << fmt(c.worst_deviation) << "  tol=" << fmt(c.tolerance)
       << "\n";
  os << (report.all_passed() ? "PASS" : "FAIL")
     << "  overall cross-validation\n";
  sink.finish();
  return report.all_passed() ? kExitOk : 1;
}

// Config file (JSON) merged under flag overrides.
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file parse error: " + std::string(e.what()));
  }
  if (j.contains("r1")) cfg.r1 = j["r1"].get<double>();
  if (j.contains("r2")) cfg.r2 = j["r2"].get<double>();
  if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
  if (j.contains("gain")) cfg.gain = j["gain"].get<double>();
  if (j.contains("gain_frac")) cfg.gain_frac = j["gain_frac"].get<double>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("omega_unit")) cfg.omega_unit = j["omega_unit"].get<std::string>();
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // Two-pass parse: pick up --config first so flags override file values.
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], cfg);
      } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
      }
    }
  }

  CLI::App app{"Correlation engine for sub-threshold cavity-enhanced SPDC"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  app.add_option("--r1", cfg.r1, "output coupler amplitude reflection")
      ->default_val(cfg.r1);
  app.add_option("--r2", cfg.r2, "loss mirror amplitude reflection")
      ->default_val(cfg.r2);
  app.add_option("--tau", cfg.tau, "round-trip time (s)")->default_val(cfg.tau);
  double gain_opt = cfg.gain.value_or(-1.0);
  double frac_opt = cfg.gain_frac.value_or(-1.0);
  auto* gain_flag =
      app.add_option("--gain", gain_opt, "absolute squeezing amplitude r");
  auto* frac_flag =
      app.add_option("--gain-frac", frac_opt, "gain as a fraction of threshold");
  app.add_option("--format", cfg.format, "output format: csv | json")
      ->default_val(cfg.format)
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output, "output path (default stdout)")
      ->default_val(cfg.output);
  app.add_option("--omega-unit", cfg.omega_unit,
                 "frequency unit for grids: fsr (2 pi / tau) | rad")
      ->default_val(cfg.omega_unit)
      ->check(CLI::IsMember({"fsr", "rad"}));

  // coeffs
  auto* sc_coeffs = app.add_subcommand("coeffs", "Bogoliubov coefficients A..D");
  double omega_min = -0.5, omega_max = 0.5;
  int points = 201;
  sc_coeffs->add_option("--omega-min", omega_min)->default_val(omega_min);
  sc_coeffs->add_option("--omega-max", omega_max)->default_val(omega_max);
  sc_coeffs->add_option("--points", points)->default_val(points);

  // squeeze
  auto* sc_squeeze = app.add_subcommand("squeeze", "quadrature squeezing spectrum");
  double sq_min = -1.5, sq_max = 1.5;
  int sq_points = 301;
  sc_squeeze->add_option("--omega-min", sq_min)->default_val(sq_min);
  sc_squeeze->add_option("--omega-max", sq_max)->default_val(sq_max);
  sc_squeeze->add_option("--points", sq_points)->default_val(sq_points);

  // g2
  auto* sc_g2 = app.add_subcommand("g2", "multimode G2 comb weights + background");
  int k_max = -1, hard_limit = 10000;
  sc_g2->add_option("--k-max", k_max, "lag truncation (-1 = auto)")
      ->default_val(k_max);
  sc_g2->add_option("--hard-limit", hard_limit)->default_val(hard_limit);

  // g2-single
  auto* sc_g2s = app.add_subcommand("g2-single", "extended Lu-Ou single-mode G2");
  double t_max_single = 20.0;
  int single_points = 401, modes = -1;
  sc_g2s->add_option("--t-max", t_max_single, "grid end in units of tau")
      ->default_val(t_max_single);
  sc_g2s->add_option("--points", single_points)->default_val(single_points);
  sc_g2s->add_option("--modes", modes, "finite mode count N (-1 = envelope)")
      ->default_val(modes);

  // render
  auto* sc_render = app.add_subcommand("render", "Lorentzian-broadened G2 trace");
  double fwhm = 0.02, t_max_render = 10.0;
  int render_points = 2001;
  int render_k_max = -1, render_limit = 10000;
  sc_render->add_option("--fwhm", fwhm, "Lorentzian FWHM (s)")->default_val(fwhm);
  sc_render->add_option("--t-max", t_max_render, "half-span in units of tau")
      ->default_val(t_max_render);
  sc_render->add_option("--points", render_points)->default_val(render_points);
  sc_render->add_option("--k-max", render_k_max)->default_val(render_k_max);
  sc_render->add_option("--hard-limit", render_limit)->default_val(render_limit);

  // compare / scan
  auto* sc_compare =
      app.add_subcommand("compare", "multimode vs single-mode deviation");
  std::vector<std::string> compare_scan;
  sc_compare->add_option("--scan", compare_scan,
                         "grid scan: key=lo:hi:count (keys r1, r2, gainfrac)");
  auto* sc_scan = app.add_subcommand("scan", "deviation scan over a grid");
  std::vector<std::string> scan_specs;
  sc_scan->add_option("ranges", scan_specs, "key=lo:hi:count (keys r1, r2, gainfrac)");

  auto* sc_verify =
      app.add_subcommand("verify", "run the internal cross-validation suite");

  // global options may appear after the subcommand name
  for (auto* sc : {sc_coeffs, sc_squeeze, sc_g2, sc_g2s, sc_render, sc_compare,
                   sc_scan, sc_verify})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gain_flag->count() > 0) cfg.gain = gain_opt;
  if (frac_flag->count() > 0) cfg.gain_frac = frac_opt;
  if (cfg.gain && cfg.gain_frac && gain_flag->count() + frac_flag->count() == 1) {
    // one came from the config file, the flag wins
    if (gain_flag->count() > 0)
      cfg.gain_frac.reset();
    else
      cfg.gain.reset();
  }

  try {
    if (sc_coeffs->parsed())
      run_coeffs(cfg, omega_min, omega_max, points);
    else if (sc_squeeze->parsed())
      run_squeeze(cfg, sq_min, sq_max, sq_points);
    else if (sc_g2->parsed())
      run_g2(cfg, k_max, hard_limit);
    else if (sc_g2s->parsed())
      run_g2_single(cfg, t_max_single, single_points, modes);
    else if (sc_render->parsed())
      run_render(cfg, fwhm, t_max_render, render_points, render_k_max, render_limit);
    else if (sc_compare->parsed()) {
      if (compare_scan.empty())
        run_compare_point(cfg);
      else
        run_scan(cfg, compare_scan);
    } else if (sc_scan->parsed())
      run_scan(cfg, scan_specs);
    else if (sc_verify->parsed())
      return run_verify(cfg);
    else {
      std::cerr << app.help() << "\n";
      return kExitUsage;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cespdc::ThresholdError& e) {
    std::cerr << "error: at or above threshold: " << e.what() << "\n";
    return kExitThreshold;
  } catch (const cespdc::ConvergenceError& e) {
    std::cerr << "error: numerical non-convergence: " << e.what()
              << " (achieved error " << fmt(e.achieved_error) << ")\n";
    return kExitConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
