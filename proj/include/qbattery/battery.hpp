#ifndef QBATTERY_BATTERY_HPP
#define QBATTERY_BATTERY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "quench.hpp"

namespace qbattery {

struct rabi_params {
  double delta = 0.0;
  double beta = 0.05;
  int m = 1;
};

struct rabi_result {
  double omega;
  double tau_first_max;
};

// Omega = sqrt(delta^2 + 4 m beta^2) / 2, first energy maximum at pi / (2 Omega).
inline rabi_result rabi_oracle(const rabi_params& p) {
  if (!std::isfinite(p.delta) || !std::isfinite(p.beta)) throw parameter_error("Rabi parameters must be finite");
  if (p.m < 1) throw parameter_error("m must be >= 1");
  const double omega = std::sqrt(p.delta * p.delta + 4.0 * p.m * p.beta * p.beta) / 2.0;
  if (omega == 0.0) throw degenerate_error("zero Rabi frequency: delta = 0 and beta = 0");
  return {omega, std::numbers::pi / (2.0 * omega)};
}

// Closed-form single-cavity battery energy: w_c w_a (m beta^2 / Omega^2) sin^2(Omega t).
inline double rabi_energy(const rabi_params& p, double t, double omega_c = 1.0, double omega_a = 1.0) {
  const auto r = rabi_oracle(p);
  const double s = std::sin(r.omega * t);
  return omega_c * omega_a * (p.m * p.beta * p.beta) / (r.omega * r.omega) * s * s;
}

enum class power_metric {
  quotient,    // max E(t) / t
  derivative,  // max dE/dt, diagnostic only
};

enum class power_notice {
  none,
  flat_signal,       // max E below 1e-12: p_max = 0, tau = NaN
  boundary_minimum,  // maximum at the first grid point
  boundary_horizon,  // maximum at the last grid point
};

struct search_config {
  // Scan horizon; 0 selects the default for the model.
  double t_max = 0.0;
  int n_samples = 4096;
  double rel_tol = 1e-6;
  power_metric metric = power_metric::quotient;
  // If set, the scan stops once energy_bound / t drops below the best quotient.
  std::optional<double> energy_bound;
};

struct power_result {
  double p_max = 0.0;
  double tau = std::numeric_limits<double>::quiet_NaN();
  double e_max = 0.0;
  double t_at_e_max = std::numeric_limits<double>::quiet_NaN();
  double e_at_tau = 0.0;
  std::vector<std::pair<double, double>> series;
  power_notice notice = power_notice::none;
};

// Five uncoupled Rabi periods of the strongest coupling; 100 without coupling.
inline double default_horizon(const model_params& p) {
  double g = p.beta;
  if (p.model == model_kind::dicke) g = std::max(g, p.resolved_beta_prime());
  if (g <= 0.0) return 100.0;
  return 10.0 * std::numbers::pi / (g * std::sqrt(static_cast<double>(p.m)));
}

namespace detail {

// Golden-section maximisation of f on [a, b]; returns the best point seen.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double rel_tol, std::pair<double, double> best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  auto consider = [&best](double x, double v) {
    if (v > best.second) best = {x, v};
  };
  consider(x1, f1);
  consider(x2, f2);
  for (int iter = 0; iter < 200 && (b - a) > 0.5 * rel_tol * std::abs(best.first); ++iter) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best;
}

}  // namespace detail

// Scans the power metric on a uniform grid over (0, t_max], then refines the
// best grid point by golden section. `energy` is any callable t -> E(t).
template <class Energy>
power_result max_power(Energy&& energy, const search_config& cfg) {
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max)) throw parameter_error("scan horizon must be positive");
  if (cfg.n_samples < 2) throw parameter_error("need at least two samples");
  if (!(cfg.rel_tol > 0.0)) throw parameter_error("rel_tol must be positive");

  const double dt = cfg.t_max / cfg.n_samples;
  const double fd_step = 1e-3 * dt;
  auto objective = [&](double t) {
    if (cfg.metric == power_metric::derivative) return (energy(t + fd_step) - energy(t - fd_step)) / (2.0 * fd_step);
    return energy(t) / t;
  };

  power_result r;
  r.series.reserve(static_cast<std::size_t>(cfg.n_samples));
  std::size_t best_k = 0;
  double best_q = -std::numeric_limits<double>::infinity();
  std::vector<double> grid_q;
  grid_q.reserve(static_cast<std::size_t>(cfg.n_samples));
  for (int i = 0; i < cfg.n_samples; ++i) {
    const double t = dt * (i + 1);
    if (cfg.metric == power_metric::quotient && cfg.energy_bound && best_q > 0.0 && *cfg.energy_bound / t < best_q)
      break;
    const double e = energy(t);
    const double q = cfg.metric == power_metric::derivative ? objective(t) : e / t;
    r.series.emplace_back(t, e);
    grid_q.push_back(q);
    if (r.series.size() == 1 || e > r.e_max) {
      r.e_max = e;
      r.t_at_e_max = t;
    }
    if (q > best_q) {
      best_q = q;
      best_k = grid_q.size() - 1;
    }
  }

  if (r.e_max < 1e-12) {
    r.notice = power_notice::flat_signal;
    r.p_max = 0.0;
    r.tau = std::numeric_limits<double>::quiet_NaN();
    r.e_at_tau = 0.0;
    return r;
  }

  const std::size_t last = grid_q.size() - 1;
  const double t_best = r.series[best_k].first;
  std::pair<double, double> best{t_best, best_q};
  if (best_k == 0) {
    r.notice = power_notice::boundary_minimum;
  } else {
    const double lo = r.series[best_k - 1].first;
    const double hi = best_k < last ? r.series[best_k + 1].first : t_best;
    if (best_k == last && static_cast<int>(grid_q.size()) == cfg.n_samples) r.notice = power_notice::boundary_horizon;
    best = detail::golden_max(objective, lo, hi, cfg.rel_tol, best);
  }
  r.tau = best.first;
  r.p_max = best.second;
  r.e_at_tau = energy(r.tau);
  if (cfg.metric == power_metric::quotient) r.p_max = r.e_at_tau / r.tau;
  return r;
}

inline search_config resolve_search(const model_params& p, search_config cfg) {
  if (cfg.t_max <= 0.0) cfg.t_max = default_horizon(p);
  return cfg;
}

// E(t) on the given grid.
inline std::vector<std::pair<double, double>> energy_series(const model_params& p, const std::vector<double>& t_grid,
                                                            const quench_options& opt = {}) {
  if (t_grid.empty()) throw parameter_error("time grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i])) throw parameter_error("time grid must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw parameter_error("time grid must be strictly increasing");
  }
  quench q(p, opt);
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.emplace_back(t, q.energy(t));
  return out;
}

// Full quench: build, evolve, extract P_max. `prune` enables the exact early stop
// of the scan based on the largest reachable energy.
inline power_result quench_power(const model_params& p, const search_config& search = {},
                                 const quench_options& opt = {}, bool prune = true) {
  quench q(p, opt);
  auto cfg = resolve_search(p, search);
  if (prune && cfg.metric == power_metric::quotient) cfg.energy_bound = q.energy_bound();
  return max_power([&q](double t) { return q.energy(t); }, cfg);
}

}  // namespace qbattery

#endif  // QBATTERY_BATTERY_HPP
