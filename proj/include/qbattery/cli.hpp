#ifndef QBATTERY_CLI_HPP
#define QBATTERY_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "battery.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "plot.hpp"
#include "presets.hpp"
#include "sweeps.hpp"

namespace qbattery::cli {

enum class command { jch, dicke, rabi, sweep, convergence };

inline std::string_view to_string(command c) {
  switch (c) {
    case command::jch:
      return "jch";
    case command::dicke:
      return "dicke";
    case command::rabi:
      return "rabi";
    case command::sweep:
      return "sweep";
    case command::convergence:
      return "convergence";
  }
  return "jch";
}

inline command parse_command(std::string_view s) {
  for (auto c : {command::jch, command::dicke, command::rabi, command::sweep, command::convergence})
    if (to_string(c) == s) return c;
  throw usage_error("unknown command '" + std::string(s) + "'");
}

struct run_config {
  command cmd = command::jch;
  model_params params;
  double delta = 0.0;  // rabi only
  search_config search;
  std::vector<int> cutoff_mult;
  std::optional<std::string> table_path;
  std::optional<std::string> series_path;
  std::optional<std::string> plot_path;
  std::optional<std::string> preset;
  unsigned jobs = 0;
  bool timing = false;

  friend bool operator==(const run_config& a, const run_config& b) {
    return a.cmd == b.cmd && a.params == b.params && a.delta == b.delta && a.search.t_max == b.search.t_max &&
           a.search.n_samples == b.search.n_samples && a.search.rel_tol == b.search.rel_tol &&
           a.search.metric == b.search.metric && a.cutoff_mult == b.cutoff_mult && a.table_path == b.table_path &&
           a.series_path == b.series_path && a.plot_path == b.plot_path && a.preset == b.preset &&
           a.jobs == b.jobs && a.timing == b.timing;
  }
};

// --help was given; `text` holds the usage message.
struct help_requested {
  std::string text;
};

namespace detail {

inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "command", "n",        "m",       "beta",       "beta-prime", "kappa",       "delta",
      "omega-c", "omega-a",  "topology", "normalization", "cutoff-mult", "t-max",   "samples",
      "rel-tol", "metric",   "preset",  "out",        "series-out", "plot-out",    "jobs",
      "literal-eq10", "timing"};
  return keys;
}

inline std::optional<double> parse_beta_prime(const std::string& s) {
  if (s == "same") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw usage_error("--beta-prime expects a number or 'same', got '" + s + "'");
  }
}

inline power_metric parse_metric(const std::string& s) {
  if (s == "quotient") return power_metric::quotient;
  if (s == "derivative") return power_metric::derivative;
  throw usage_error("--metric expects quotient or derivative, got '" + s + "'");
}

inline std::string_view metric_name(power_metric m) { return m == power_metric::quotient ? "quotient" : "derivative"; }

// Applies one config/flag value; `key` is the flag name without dashes.
inline void apply_value(run_config& c, const std::string& key, const nlohmann::json& v) {
  try {
    if (key == "command") c.cmd = parse_command(v.get<std::string>());
    else if (key == "n") c.params.n = v.get<int>();
    else if (key == "m") c.params.m = v.get<int>();
    else if (key == "beta") c.params.beta = v.get<double>();
    else if (key == "beta-prime") c.params.beta_prime = v.is_string() ? parse_beta_prime(v.get<std::string>()) : std::optional<double>(v.get<double>());
    else if (key == "kappa") c.params.kappa = v.get<double>();
    else if (key == "delta") c.delta = v.get<double>();
    else if (key == "omega-c") c.params.omega_c = v.get<double>();
    else if (key == "omega-a") c.params.omega_a = v.get<double>();
    else if (key == "topology") c.params.topo = parse_topology(v.get<std::string>());
    else if (key == "normalization") c.params.norm = parse_normalization(v.get<std::string>());
    else if (key == "cutoff-mult") c.cutoff_mult = v.get<std::vector<int>>();
    else if (key == "t-max") c.search.t_max = v.get<double>();
    else if (key == "samples") c.search.n_samples = v.get<int>();
    else if (key == "rel-tol") c.search.rel_tol = v.get<double>();
    else if (key == "metric") c.search.metric = parse_metric(v.get<std::string>());
    else if (key == "preset") c.preset = v.get<std::string>();
    else if (key == "out") c.table_path = v.get<std::string>();
    else if (key == "series-out") c.series_path = v.get<std::string>();
    else if (key == "plot-out") c.plot_path = v.get<std::string>();
    else if (key == "jobs") c.jobs = v.get<unsigned>();
    else if (key == "literal-eq10") c.params.literal_eq10 = v.get<bool>();
    else if (key == "timing") c.timing = v.get<bool>();
    else throw usage_error("unknown setting '" + key + "'");
  } catch (const nlohmann::json::exception& e) {
    throw usage_error("bad value for '" + key + "': " + e.what());
  } catch (const parameter_error& e) {
    throw usage_error("bad value for '" + key + "': " + e.what());
  }
}

}  // namespace detail

// Flat JSON document holding every setting of a run.
inline nlohmann::json to_json(const run_config& c) {
  nlohmann::json j;
  j["command"] = std::string(to_string(c.cmd));
  j["n"] = c.params.n;
  j["m"] = c.params.m;
  j["beta"] = c.params.beta;
  if (c.params.beta_prime)
    j["beta-prime"] = *c.params.beta_prime;
  else
    j["beta-prime"] = "same";
  j["kappa"] = c.params.kappa;
  j["delta"] = c.delta;
  j["omega-c"] = c.params.omega_c;
  j["omega-a"] = c.params.omega_a;
  j["topology"] = std::string(to_string(c.params.topo));
  j["normalization"] = std::string(to_string(c.params.norm));
  j["cutoff-mult"] = c.cutoff_mult;
  j["t-max"] = c.search.t_max;
  j["samples"] = c.search.n_samples;
  j["rel-tol"] = c.search.rel_tol;
  j["metric"] = std::string(detail::metric_name(c.search.metric));
  if (c.preset) j["preset"] = *c.preset;
  if (c.table_path) j["out"] = *c.table_path;
  if (c.series_path) j["series-out"] = *c.series_path;
  if (c.plot_path) j["plot-out"] = *c.plot_path;
  j["jobs"] = c.jobs;
  j["literal-eq10"] = c.params.literal_eq10;
  j["timing"] = c.timing;
  return j;
}

inline void apply_json(run_config& c, const nlohmann::json& j) {
  if (!j.is_object()) throw usage_error("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!detail::config_keys().count(key)) throw usage_error("unknown setting '" + key + "' in config file");
    if (value.is_object() || (value.is_array() && key != "cutoff-mult"))
      throw usage_error("config setting '" + key + "' must be a plain value");
    detail::apply_value(c, key, value);
  }
}

inline run_config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw usage_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  run_config c;
  apply_json(c, j);
  return c;
}

// Parses `args` (without the program name). Flags override config-file values.
// Throws usage_error on bad input and help_requested for --help.
inline run_config parse_args(const std::vector<std::string>& args, std::vector<std::string>* notices = nullptr) {
  CLI::App app{"Charging-quench simulator for JCH and Dicke quantum batteries", "qbattery"};
  app.require_subcommand(1);

  struct flag_values {
    int n = 0, m = 0, samples = 0;
    unsigned jobs = 0;
    double beta = 0, kappa = 0, delta = 0, omega_c = 0, omega_a = 0, t_max = 0, rel_tol = 0;
    std::string beta_prime, topology, normalization, metric, preset, out, series_out, plot_out, config;
    std::vector<int> cutoff_mult;
    bool literal_eq10 = false, timing = false;
  } f;

  std::map<CLI::App*, std::map<std::string, CLI::Option*>> options;
  for (auto c : {command::jch, command::dicke, command::rabi, command::sweep, command::convergence}) {
    const std::string name(to_string(c));
    CLI::App* sub = app.add_subcommand(name);
    auto& o = options[sub];
    o["n"] = sub->add_option("--n", f.n, "number of two-level systems");
    o["m"] = sub->add_option("--m", f.m, "initial photons per two-level system");
    o["beta"] = sub->add_option("--beta", f.beta, "light-matter coupling after the quench");
    o["beta-prime"] = sub->add_option("--beta-prime", f.beta_prime, "counter-rotating coupling, number or 'same'");
    o["kappa"] = sub->add_option("--kappa", f.kappa, "photon hopping between cavities");
    if (c == command::rabi) o["delta"] = sub->add_option("--delta", f.delta, "detuning omega_a - omega_c");
    o["omega-c"] = sub->add_option("--omega-c", f.omega_c, "photon mode energy");
    o["omega-a"] = sub->add_option("--omega-a", f.omega_a, "two-level splitting");
    o["topology"] = sub->add_option("--topology", f.topology, "line, ring or all");
    o["normalization"] = sub->add_option("--normalization", f.normalization, "sqrt-n or none");
    o["cutoff-mult"] = sub->add_option("--cutoff-mult", f.cutoff_mult, "photon cutoff(s) in units of N*m")->delimiter(',');
    o["t-max"] = sub->add_option("--t-max", f.t_max, "scan horizon");
    o["samples"] = sub->add_option("--samples", f.samples, "coarse scan points");
    o["rel-tol"] = sub->add_option("--rel-tol", f.rel_tol, "relative tolerance of the tau refinement");
    o["metric"] = sub->add_option("--metric", f.metric, "quotient (default) or derivative");
    if (c == command::sweep) o["preset"] = sub->add_option("--preset", f.preset, "named figure sweep");
    o["out"] = sub->add_option("--out", f.out, "table CSV path");
    o["series-out"] = sub->add_option("--series-out", f.series_out, "time-series CSV path");
    o["plot-out"] = sub->add_option("--plot-out", f.plot_out, "gnuplot script path");
    o["config"] = sub->add_option("--config", f.config, "JSON file with default settings");
    o["jobs"] = sub->add_option("--jobs", f.jobs, "sweep worker threads (0: all cores)");
    o["literal-eq10"] = sub->add_flag("--literal-eq10", f.literal_eq10, "scale Dicke couplings by omega_c too");
    o["timing"] = sub->add_flag("--timing", f.timing, "record wall times in the table");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw help_requested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw help_requested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw usage_error(e.what());
  }

  CLI::App* active = app.get_subcommands().front();
  const command cmd = parse_command(active->get_name());
  auto& o = options[active];
  auto given = [&](const std::string& key) { return o.count(key) && o[key]->count() > 0; };

  run_config c;
  if (given("config")) c = load_config(f.config);
  if (given("config") && c.cmd != cmd && notices)
    notices->push_back("config file command '" + std::string(to_string(c.cmd)) + "' replaced by '" +
                       std::string(to_string(cmd)) + "'");
  c.cmd = cmd;

  using nlohmann::json;
  const std::map<std::string, json> flag_json{
      {"n", f.n},           {"m", f.m},
      {"beta", f.beta},     {"beta-prime", f.beta_prime},
      {"kappa", f.kappa},   {"delta", f.delta},
      {"omega-c", f.omega_c}, {"omega-a", f.omega_a},
      {"topology", f.topology}, {"normalization", f.normalization},
      {"cutoff-mult", f.cutoff_mult}, {"t-max", f.t_max},
      {"samples", f.samples}, {"rel-tol", f.rel_tol},
      {"metric", f.metric}, {"preset", f.preset},
      {"out", f.out},       {"series-out", f.series_out},
      {"plot-out", f.plot_out}, {"jobs", f.jobs},
      {"literal-eq10", f.literal_eq10}, {"timing", f.timing}};
  for (const auto& [key, value] : flag_json)
    if (given(key)) detail::apply_value(c, key, value);

  // Cross-field checks.
  std::vector<std::string> paths;
  for (const auto& p : {c.table_path, c.series_path, c.plot_path})
    if (p) paths.push_back(*p);
  std::sort(paths.begin(), paths.end());
  if (std::adjacent_find(paths.begin(), paths.end()) != paths.end())
    throw usage_error("--out, --series-out and --plot-out must name different files");
  if (c.cmd == command::sweep) {
    if (!c.preset) throw usage_error("sweep needs --preset (one of fig2, fig3, fig4, fig5, dicke_m, supercharging)");
    if (std::find(preset_names().begin(), preset_names().end(), *c.preset) == preset_names().end())
      throw usage_error("--preset: unknown preset '" + *c.preset + "'");
    if (c.plot_path && !c.table_path) throw usage_error("--plot-out needs --out for the table it plots");
    for (const char* key : {"n", "m", "beta", "beta-prime", "kappa", "topology", "normalization", "cutoff-mult"})
      if (given(key) && notices)
        notices->push_back("preset " + *c.preset + " overrides --" + std::string(key));
  }
  if (c.cmd == command::dicke && c.cutoff_mult.size() > 1)
    throw usage_error("--cutoff-mult: dicke takes a single multiplier (use the convergence command for several)");
  if (c.search.n_samples < 2) throw usage_error("--samples must be at least 2");
  if (!(c.search.rel_tol > 0.0)) throw usage_error("--rel-tol must be positive");
  if (c.search.t_max < 0.0) throw usage_error("--t-max must be positive");
  try {
    validate(c.params);
  } catch (const parameter_error& e) {
    throw usage_error(e.what());
  }
  return c;
}

inline run_config parse_args(int argc, const char* const* argv, std::vector<std::string>* notices = nullptr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parse_args(args, notices);
}

namespace detail {

inline model_params resolved_params(const run_config& c) {
  model_params p = c.params;
  p.model = c.cmd == command::jch ? model_kind::jch : model_kind::dicke;
  if (p.model == model_kind::dicke && c.cutoff_mult.size() == 1) p.n_max = c.cutoff_mult.front() * p.n * p.m;
  return p;
}

inline sweep_row row_from(const model_params& p, std::size_t dim, const power_result& r) {
  sweep_row row;
  row.params = p;
  row.dim = dim;
  row.p_max = r.p_max;
  row.tau = r.tau;
  row.e_max = r.e_max;
  row.p_scaled = r.p_max;
  return row;
}

inline std::string notice_text(power_notice n) {
  switch (n) {
    case power_notice::none:
      return "";
    case power_notice::flat_signal:
      return "flat signal: no energy is transferred, P_max = 0 and tau is undefined";
    case power_notice::boundary_minimum:
      return "maximum at the first grid point: E(t)/t is decreasing, refine the grid";
    case power_notice::boundary_horizon:
      return "maximum at the scan horizon: increase --t-max";
  }
  return "";
}

}  // namespace detail

// Executes a parsed configuration. Returns the process exit status.
inline int run(const run_config& c, std::ostream& out, std::ostream& log) {
  switch (c.cmd) {
    case command::jch:
    case command::dicke: {
      const model_params p = detail::resolved_params(c);
      quench q(p);
      auto cfg = resolve_search(p, c.search);
      // A full series is only produced without the early stop of the scan.
      if (!c.series_path && cfg.metric == power_metric::quotient) cfg.energy_bound = q.energy_bound();
      const auto r = max_power([&q](double t) { return q.energy(t); }, cfg);
      out << "model   " << to_string(p.model) << "\n";
      out << "dim     " << q.dim() << "\n";
      out << "p_max   " << format_real(r.p_max) << "\n";
      out << "tau     " << format_real(r.tau) << "\n";
      out << "e_max   " << format_real(r.e_max) << " at t = " << format_real(r.t_at_e_max) << "\n";
      if (r.notice != power_notice::none) log << "notice: " << detail::notice_text(r.notice) << "\n";
      if (c.series_path) write_series(*c.series_path, r.series);
      if (c.table_path) write_table(*c.table_path, {detail::row_from(p, q.dim(), r)});
      return 0;
    }
    case command::rabi: {
      const rabi_params rp{c.delta, c.params.beta, c.params.m};
      const auto r = rabi_oracle(rp);
      out << "omega   " << format_real(r.omega) << "\n";
      out << "tau     " << format_real(r.tau_first_max) << "\n";
      if (c.series_path) {
        const double t_max = c.search.t_max > 0.0 ? c.search.t_max : 5.0 * std::numbers::pi / r.omega;
        std::vector<std::pair<double, double>> series;
        for (int i = 1; i <= c.search.n_samples; ++i) {
          const double t = t_max * i / c.search.n_samples;
          series.emplace_back(t, rabi_energy(rp, t, c.params.omega_c, c.params.omega_a));
        }
        write_series(*c.series_path, series);
      }
      return 0;
    }
    case command::sweep: {
      sweep_options opt;
      opt.jobs = c.jobs;
      opt.record_timing = c.timing;
      opt.search = c.search;
      const auto rows = run_sweeps(preset(*c.preset), opt);
      std::size_t failures = 0;
      for (const auto& r : rows)
        if (r.failed) {
          ++failures;
          log << "point failed (N=" << r.params.n << ", m=" << r.params.m << "): " << r.error << "\n";
        }
      if (c.table_path)
        write_table(*c.table_path, rows);
      else
        write_table(out, rows);
      if (c.plot_path) emit_plot_script(*c.table_path, *c.preset, *c.plot_path);
      if (failures) log << failures << " sweep point(s) failed; see rows marked 'error'\n";
      return 0;
    }
    case command::convergence: {
      model_params p = c.params;
      p.model = model_kind::dicke;
      const std::vector<int> mult = c.cutoff_mult.empty() ? std::vector<int>{4, 5} : c.cutoff_mult;
      const auto r = convergence_check(p, mult, 1e-4, c.search);
      for (std::size_t i = 0; i < mult.size(); ++i)
        out << "n_max " << r.n_max[i] << "  p_max " << format_real(r.p_max[i]) << "\n";
      out << "max_rel_diff " << format_real(r.max_rel_diff) << "\n";
      out << "converged " << (r.converged ? "true" : "false") << "\n";
      if (c.table_path) {
        sweep_spec spec;
        spec.base = p;
        spec.axis = sweep_axis::n;
        spec.values = {static_cast<double>(p.n)};
        spec.cutoff_multipliers = mult;
        sweep_options opt;
        opt.jobs = c.jobs;
        opt.record_timing = c.timing;
        opt.search = c.search;
        write_table(*c.table_path, run_sweep(spec, opt));
      }
      return 0;
    }
  }
  return 1;
}

}  // namespace qbattery::cli

#endif  // QBATTERY_CLI_HPP
