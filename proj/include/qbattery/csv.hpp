#ifndef QBATTERY_CSV_HPP
#define QBATTERY_CSV_HPP

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "sweeps.hpp"

namespace qbattery {

inline constexpr const char* series_header = "t,energy";
inline constexpr const char* table_header =
    "model,topology,normalization,N,m,beta,beta_prime,kappa,n_max,dim,p_max,tau,e_max,p_scaled,cutoff_converged,"
    "wall_time_s";

// Round-trippable rendering: 17 significant digits.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_series(std::ostream& os, const std::vector<std::pair<double, double>>& series) {
  os << series_header << '\n';
  for (const auto& [t, e] : series) os << format_real(t) << ',' << format_real(e) << '\n';
}

// Failed rows keep their parameters, carry nan results and "error" in the
// cutoff_converged column.
inline void write_table(std::ostream& os, const std::vector<sweep_row>& rows) {
  os << table_header << '\n';
  for (const auto& r : rows) {
    const auto& p = r.params;
    const bool jch = p.model == model_kind::jch;
    os << to_string(p.model) << ',' << (jch ? std::string(to_string(p.topo)) : "n/a") << ','
       << (jch ? "n/a" : std::string(to_string(p.norm))) << ',' << p.n << ',' << p.m << ',' << format_real(p.beta)
       << ',' << format_real(jch ? 0.0 : p.resolved_beta_prime()) << ',' << format_real(p.kappa) << ','
       << (jch ? p.n * p.m : p.resolved_n_max()) << ',' << r.dim << ',' << format_real(r.p_max) << ','
       << format_real(r.tau) << ',' << format_real(r.e_max) << ',' << format_real(r.p_scaled) << ',';
    if (r.failed)
      os << "error";
    else if (r.cutoff_converged)
      os << (*r.cutoff_converged ? "true" : "false");
    else
      os << "n/a";
    os << ',' << format_real(r.wall_time_s) << '\n';
  }
}

namespace detail {

template <class Writer>
void write_file(const std::string& path, Writer&& w) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  w(out);
  out.flush();
  if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace detail

inline void write_series(const std::string& path, const std::vector<std::pair<double, double>>& series) {
  detail::write_file(path, [&](std::ostream& os) { write_series(os, series); });
}

inline void write_table(const std::string& path, const std::vector<sweep_row>& rows) {
  detail::write_file(path, [&](std::ostream& os) { write_table(os, rows); });
}

// Splits a CSV document into rows of fields; no quoting is used by the writers.
inline std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  return read_csv(in);
}

}  // namespace qbattery

#endif  // QBATTERY_CSV_HPP
