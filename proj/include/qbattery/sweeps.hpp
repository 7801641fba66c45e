#ifndef QBATTERY_SWEEPS_HPP
#define QBATTERY_SWEEPS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "battery.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "quench.hpp"

namespace qbattery {

enum class sweep_axis { n, m, kappa, beta };

enum class scaling { none, per_n, per_sqrt_m, times_kappa };

struct sweep_spec {
  model_params base;
  sweep_axis axis = sweep_axis::n;
  std::vector<double> values;
  scaling scale = scaling::none;
  // Dicke only: one run per value at n_max = multiplier * N * m. Empty means
  // a single run at the base cutoff.
  std::vector<int> cutoff_multipliers{4, 5};
  std::string label;
};

struct sweep_row {
  model_params params;
  std::string label;
  std::size_t dim = 0;
  double p_max = std::numeric_limits<double>::quiet_NaN();
  double tau = std::numeric_limits<double>::quiet_NaN();
  double e_max = std::numeric_limits<double>::quiet_NaN();
  double p_scaled = std::numeric_limits<double>::quiet_NaN();
  std::optional<bool> cutoff_converged;  // empty: not applicable
  bool failed = false;
  std::string error;
  double wall_time_s = 0.0;
};

struct sweep_options {
  // 0 selects the number of hardware threads.
  unsigned jobs = 0;
  // Wall times stay 0 unless requested, so repeated runs give identical tables.
  bool record_timing = false;
  double convergence_tol = 1e-4;
  search_config search;
  quench_options quench;
};

inline double axis_value(const model_params& p, sweep_axis axis) {
  switch (axis) {
    case sweep_axis::n:
      return p.n;
    case sweep_axis::m:
      return p.m;
    case sweep_axis::kappa:
      return p.kappa;
    case sweep_axis::beta:
      return p.beta;
  }
  return 0.0;
}

inline double apply_scaling(scaling s, const model_params& p, double p_max) {
  switch (s) {
    case scaling::none:
      return p_max;
    case scaling::per_n:
      return p_max / p.n;
    case scaling::per_sqrt_m:
      return p_max / std::sqrt(static_cast<double>(p.m));
    case scaling::times_kappa:
      return p_max * p.kappa;
  }
  return p_max;
}

namespace detail {

inline model_params with_axis(model_params p, sweep_axis axis, double v) {
  auto as_int = [v](const char* name) {
    if (v != std::floor(v) || v < 1) throw parameter_error(std::string(name) + " axis needs positive integers");
    return static_cast<int>(v);
  };
  switch (axis) {
    case sweep_axis::n:
      p.n = as_int("N");
      break;
    case sweep_axis::m:
      p.m = as_int("m");
      break;
    case sweep_axis::kappa:
      p.kappa = v;
      break;
    case sweep_axis::beta:
      p.beta = v;
      break;
  }
  return p;
}

// Runs f(i) for i in [0, count) on a bounded pool of threads.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& f) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

inline double relative_difference(double a, double reference) {
  if (a == reference) return 0.0;
  return std::abs(a - reference) / std::abs(reference);
}

}  // namespace detail

inline void validate(const sweep_spec& spec) {
  if (spec.values.empty()) throw parameter_error("sweep has no axis values");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1])) throw parameter_error("sweep values must be strictly increasing");
  for (int c : spec.cutoff_multipliers)
    if (c < 1) throw parameter_error("cutoff multipliers must be positive");
}

// One quench per sweep point; rows come back in spec order whatever `jobs` is.
inline std::vector<sweep_row> run_sweep(const sweep_spec& spec, const sweep_options& opt = {}) {
  validate(spec);
  std::vector<sweep_row> rows;
  std::vector<std::size_t> first_of_value;
  for (double v : spec.values) {
    first_of_value.push_back(rows.size());
    model_params p = spec.base;
    sweep_row row;
    row.label = spec.label;
    try {
      p = detail::with_axis(p, spec.axis, v);
    } catch (const error& e) {
      row.params = p;
      row.failed = true;
      row.error = e.what();
      rows.push_back(row);
      continue;
    }
    if (p.model == model_kind::dicke && !spec.cutoff_multipliers.empty()) {
      for (int c : spec.cutoff_multipliers) {
        p.n_max = c * p.n * p.m;
        row.params = p;
        rows.push_back(row);
      }
    } else {
      row.params = p;
      rows.push_back(row);
    }
  }

  detail::parallel_for(rows.size(), opt.jobs, [&](std::size_t i) {
    sweep_row& row = rows[i];
    if (row.failed) return;
    const auto start = std::chrono::steady_clock::now();
    try {
      quench q(row.params, opt.quench);
      auto cfg = resolve_search(row.params, opt.search);
      if (cfg.metric == power_metric::quotient) cfg.energy_bound = q.energy_bound();
      const auto r = max_power([&q](double t) { return q.energy(t); }, cfg);
      row.dim = q.dim();
      row.p_max = r.p_max;
      row.tau = r.tau;
      row.e_max = r.e_max;
      row.p_scaled = apply_scaling(spec.scale, row.params, r.p_max);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    if (opt.record_timing)
      row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  // Cutoff convergence between the two largest multipliers of each value.
  if (spec.base.model == model_kind::dicke && spec.cutoff_multipliers.size() >= 2) {
    for (std::size_t v = 0; v < first_of_value.size(); ++v) {
      const std::size_t begin = first_of_value[v];
      const std::size_t end = v + 1 < first_of_value.size() ? first_of_value[v + 1] : rows.size();
      if (end - begin < 2) continue;
      const bool ok = std::none_of(rows.begin() + begin, rows.begin() + end, [](const sweep_row& r) { return r.failed; });
      if (!ok) continue;
      const bool converged = detail::relative_difference(rows[end - 2].p_max, rows[end - 1].p_max) < opt.convergence_tol;
      for (std::size_t i = begin; i < end; ++i) rows[i].cutoff_converged = converged;
    }
  }
  return rows;
}

inline std::vector<sweep_row> run_sweeps(const std::vector<sweep_spec>& specs, const sweep_options& opt = {}) {
  std::vector<sweep_row> all;
  for (const auto& s : specs) {
    auto rows = run_sweep(s, opt);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

struct power_law_fit {
  double exponent;
  double r_squared;
};

// Least-squares slope of log p_max against log(axis value) over rows [first, last).
inline power_law_fit fit_power_law(const std::vector<sweep_row>& rows, sweep_axis axis, std::size_t first = 0,
                                   std::size_t last = std::numeric_limits<std::size_t>::max()) {
  last = std::min(last, rows.size());
  if (first >= last || last - first < 3) throw insufficient_data_error("power-law fit needs at least 3 rows");
  std::vector<double> x, y;
  for (std::size_t i = first; i < last; ++i) {
    const double a = axis_value(rows[i].params, axis);
    if (!(a > 0.0) || !(rows[i].p_max > 0.0))
      throw nonpositive_error("power-law fit needs positive axis values and p_max");
    x.push_back(std::log(a));
    y.push_back(std::log(rows[i].p_max));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw insufficient_data_error("power-law fit needs distinct axis values");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, r2};
}

struct convergence_result {
  bool converged;
  double max_rel_diff;
  std::vector<int> n_max;
  std::vector<double> p_max;
};

// Same Dicke quench at n_max = c * N * m for each multiplier c. Converged when
// the last two cutoffs agree on p_max within tol (relative to the last).
inline convergence_result convergence_check(const model_params& params, const std::vector<int>& multipliers,
                                            double tol = 1e-4, const search_config& search = {},
                                            const quench_options& qopt = {}) {
  if (params.model != model_kind::dicke) throw parameter_error("cutoff convergence applies to the Dicke model only");
  if (multipliers.size() < 2) throw insufficient_data_error("convergence check needs at least two cutoffs");
  convergence_result out{false, 0.0, {}, {}};
  for (int c : multipliers) {
    if (c < 0) throw parameter_error("cutoff multipliers must be non-negative");
    model_params p = params;
    p.n_max = c * p.n * p.m;
    out.n_max.push_back(*p.n_max);
    out.p_max.push_back(quench_power(p, search, qopt).p_max);
  }
  const double reference = out.p_max.back();
  for (double v : out.p_max) out.max_rel_diff = std::max(out.max_rel_diff, detail::relative_difference(v, reference));
  out.converged = detail::relative_difference(out.p_max[out.p_max.size() - 2], reference) < tol;
  return out;
}

}  // namespace qbattery

#endif  // QBATTERY_SWEEPS_HPP
