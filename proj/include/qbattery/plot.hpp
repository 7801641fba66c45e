#ifndef QBATTERY_PLOT_HPP
#define QBATTERY_PLOT_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "presets.hpp"

namespace qbattery {

namespace detail {

// Column numbers in the sweep table (gnuplot counts from 1).
inline constexpr int col_topology = 2, col_normalization = 3, col_n = 4, col_m = 5, col_beta = 6, col_kappa = 8,
                     col_n_max = 9, col_p_scaled = 14;

inline int axis_column(sweep_axis a) {
  switch (a) {
    case sweep_axis::n:
      return col_n;
    case sweep_axis::m:
      return col_m;
    case sweep_axis::kappa:
      return col_kappa;
    case sweep_axis::beta:
      return col_beta;
  }
  return col_n;
}

inline std::string numeric_match(int col, double v) {
  return "abs($" + std::to_string(col) + "-(" + format_real(v) + "))<1e-9";
}

inline std::string row_filter(const sweep_spec& s) {
  std::vector<std::string> terms;
  const auto& p = s.base;
  if (s.axis != sweep_axis::n) terms.push_back(numeric_match(col_n, p.n));
  if (s.axis != sweep_axis::m) terms.push_back(numeric_match(col_m, p.m));
  if (s.axis != sweep_axis::beta) terms.push_back(numeric_match(col_beta, p.beta));
  if (p.model == model_kind::jch) {
    if (s.axis != sweep_axis::kappa) terms.push_back(numeric_match(col_kappa, p.kappa));
    terms.push_back("strcol(" + std::to_string(col_topology) + ") eq \"" + std::string(to_string(p.topo)) + "\"");
  } else {
    terms.push_back("strcol(" + std::to_string(col_normalization) + ") eq \"" + std::string(to_string(p.norm)) +
                    "\"");
    if (!s.cutoff_multipliers.empty()) {
      const int top = *std::max_element(s.cutoff_multipliers.begin(), s.cutoff_multipliers.end());
      terms.push_back("$" + std::to_string(col_n_max) + "==" + std::to_string(top) + "*$" + std::to_string(col_n) +
                      "*$" + std::to_string(col_m));
    }
  }
  if (s.axis == sweep_axis::kappa) terms.push_back("$" + std::to_string(col_kappa) + ">0");
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " && " : "") + terms[i];
  return out;
}

inline std::string y_label(scaling s) {
  switch (s) {
    case scaling::none:
      return "P_{max}";
    case scaling::per_n:
      return "P_{max} / N";
    case scaling::per_sqrt_m:
      return "P_{max} / sqrt(m)";
    case scaling::times_kappa:
      return "P_{max} {/Symbol k}";
  }
  return "P_{max}";
}

inline std::string x_label(sweep_axis a) {
  switch (a) {
    case sweep_axis::n:
      return "N";
    case sweep_axis::m:
      return "m";
    case sweep_axis::kappa:
      return "{/Symbol k}";
    case sweep_axis::beta:
      return "{/Symbol b}";
  }
  return "";
}

}  // namespace detail

// gnuplot script drawing the scaled power of a preset table against its sweep
// axis, one curve per preset spec.
inline std::string plot_script(const std::string& table_path, std::string_view preset_name) {
  const auto specs = preset(preset_name);
  const auto& first = specs.front();
  std::string image = table_path;
  if (auto dot = image.rfind('.'); dot != std::string::npos && image.find('/', dot) == std::string::npos)
    image.erase(dot);
  image += ".png";

  std::ostringstream os;
  os << "# " << preset_name << ": scaled charging power from " << table_path << "\n";
  os << "set terminal pngcairo enhanced size 900,600\n";
  os << "set output '" << image << "'\n";
  os << "set datafile separator ','\n";
  os << "set xlabel '" << detail::x_label(first.axis) << "'\n";
  os << "set ylabel '" << detail::y_label(first.scale) << "'\n";
  if (first.axis == sweep_axis::kappa) os << "set logscale x\n";
  os << "set key outside right\n";
  os << "set grid\n";
  os << "plot \\\n";
  const int x = detail::axis_column(first.axis);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    os << "  '" << table_path << "' every ::1 using (" << detail::row_filter(specs[i]) << " ? $" << x
       << " : 1/0):" << detail::col_p_scaled << " with linespoints title '" << specs[i].label << "'"
       << (i + 1 < specs.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

inline void emit_plot_script(const std::string& table_path, std::string_view preset_name,
                             const std::string& script_path) {
  const std::string text = plot_script(table_path, preset_name);
  detail::write_file(script_path, [&](std::ostream& out) { out << text; });
}

}  // namespace qbattery

#endif  // QBATTERY_PLOT_HPP
