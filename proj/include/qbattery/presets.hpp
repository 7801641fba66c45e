#ifndef QBATTERY_PRESETS_HPP
#define QBATTERY_PRESETS_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "sweeps.hpp"

namespace qbattery {

namespace detail {

inline std::vector<double> int_range(int lo, int hi) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

inline std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  v.back() = hi;
  return v;
}

inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline sweep_spec jch_spec(int n, int m, double kappa, sweep_axis axis, std::vector<double> values, scaling s) {
  sweep_spec spec;
  spec.base.model = model_kind::jch;
  spec.base.beta = 0.05;
  spec.base.n = n;
  spec.base.m = m;
  spec.base.kappa = kappa;
  spec.axis = axis;
  spec.values = std::move(values);
  spec.scale = s;
  spec.cutoff_multipliers.clear();
  return spec;
}

inline sweep_spec dicke_spec(int n, int m, double beta, normalization norm, sweep_axis axis, std::vector<double> values,
                             scaling s, std::vector<int> multipliers) {
  sweep_spec spec;
  spec.base.model = model_kind::dicke;
  spec.base.beta = beta;
  spec.base.n = n;
  spec.base.m = m;
  spec.base.norm = norm;
  spec.axis = axis;
  spec.values = std::move(values);
  spec.scale = s;
  spec.cutoff_multipliers = std::move(multipliers);
  return spec;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "dicke_m", "supercharging"};
  return names;
}

// Named sweeps reproducing the published figures; one spec per plotted curve.
//
// Grids that are only shown graphically use these choices: N = 1..8 for the
// JCH N sweep, m = 1..20 (N = 2) and 1..8 (N = 4) for the JCH m sweep,
// kappa = 0 plus 16 log-spaced values in [0.005, 1], m = 1..20 for Dicke.
inline std::vector<sweep_spec> preset(std::string_view name) {
  using detail::short_number;
  std::vector<sweep_spec> specs;
  if (name == "fig2") {
    for (double k : {0.0, 0.05, 0.5}) {
      auto s = detail::jch_spec(1, 1, k, sweep_axis::n, detail::int_range(1, 8), scaling::per_n);
      s.label = "kappa=" + short_number(k);
      specs.push_back(s);
    }
  } else if (name == "fig3") {
    for (int n : {2, 4}) {
      for (double k : {0.0, 0.05, 0.5}) {
        auto s = detail::jch_spec(n, 1, k, sweep_axis::m, detail::int_range(1, n == 2 ? 20 : 8), scaling::per_sqrt_m);
        s.label = "N=" + std::to_string(n) + " kappa=" + short_number(k);
        specs.push_back(s);
      }
    }
  } else if (name == "fig4") {
    auto kappas = detail::log_space(0.005, 1.0, 16);
    kappas.insert(kappas.begin(), 0.0);
    for (int n : {2, 3}) {
      auto s = detail::jch_spec(n, 1, 0.0, sweep_axis::kappa, kappas, scaling::times_kappa);
      s.label = "N=" + std::to_string(n);
      specs.push_back(s);
    }
  } else if (name == "fig5") {
    for (double b : {0.0, 0.05, 0.5, 2.0}) {
      auto s = detail::dicke_spec(2, 1, b, normalization::sqrt_n, sweep_axis::n, detail::int_range(2, 20),
                                  scaling::per_n, {4, 5});
      s.label = "beta=" + short_number(b);
      specs.push_back(s);
    }
  } else if (name == "dicke_m") {
    for (double b : {0.05, 0.5, 2.0}) {
      auto s = detail::dicke_spec(10, 1, b, normalization::sqrt_n, sweep_axis::m, detail::int_range(1, 20),
                                  scaling::per_sqrt_m, {5});
      s.label = "beta=" + short_number(b);
      specs.push_back(s);
    }
  } else if (name == "supercharging") {
    for (auto norm : {normalization::sqrt_n, normalization::none}) {
      auto s = detail::dicke_spec(4, 1, 0.5, norm, sweep_axis::n, detail::int_range(4, 16), scaling::per_n, {5});
      s.label = std::string(to_string(norm));
      specs.push_back(s);
    }
  } else {
    throw usage_error("unknown preset '" + std::string(name) + "'");
  }
  return specs;
}

}  // namespace qbattery

#endif  // QBATTERY_PRESETS_HPP
