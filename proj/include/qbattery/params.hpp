#ifndef QBATTERY_PARAMS_HPP
#define QBATTERY_PARAMS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qbattery {

enum class model_kind { jch, dicke };

// Photon hopping graph between cavities (JCH only).
enum class topology {
  line,        // (n, n+1) for n = 1..N-1
  ring,        // line plus the closing bond (N, 1)
  all_to_all,  // every pair n < n'
};

// Light-matter coupling prefactor (Dicke only).
enum class normalization {
  sqrt_n,  // beta / sqrt(N)
  none,    // beta
};

inline std::string_view to_string(model_kind k) {
  return k == model_kind::jch ? "jch" : "dicke";
}

inline std::string_view to_string(topology t) {
  switch (t) {
    case topology::line:
      return "line";
    case topology::ring:
      return "ring";
    case topology::all_to_all:
      return "all";
  }
  return "line";
}

inline std::string_view to_string(normalization n) {
  return n == normalization::sqrt_n ? "sqrt-n" : "none";
}

inline topology parse_topology(std::string_view s) {
  if (s == "line") return topology::line;
  if (s == "ring") return topology::ring;
  if (s == "all" || s == "all-to-all") return topology::all_to_all;
  throw parameter_error("unknown topology '" + std::string(s) + "' (expected line, ring or all)");
}

inline normalization parse_normalization(std::string_view s) {
  if (s == "sqrt-n") return normalization::sqrt_n;
  if (s == "none") return normalization::none;
  throw parameter_error("unknown normalization '" + std::string(s) + "' (expected sqrt-n or none)");
}

inline model_kind parse_model(std::string_view s) {
  if (s == "jch") return model_kind::jch;
  if (s == "dicke") return model_kind::dicke;
  throw parameter_error("unknown model '" + std::string(s) + "'");
}

// Physical couplings plus the model switches. Natural units, hbar = 1.
//
// kappa and topology only affect JCH; beta_prime, normalization, n_max and
// literal_eq10 only affect Dicke. An empty beta_prime means "same as beta".
// An empty n_max means the default cutoff 5 * N * m.
struct model_params {
  model_kind model = model_kind::jch;
  double omega_c = 1.0;
  double omega_a = 1.0;
  double beta = 0.05;
  std::optional<double> beta_prime;
  double kappa = 0.0;
  int n = 1;
  int m = 1;
  topology topo = topology::line;
  normalization norm = normalization::sqrt_n;
  std::optional<int> n_max;
  // Scales the coupling terms by omega_c as well (the bracket read literally).
  bool literal_eq10 = false;

  double detuning() const { return omega_a - omega_c; }
  double resolved_beta_prime() const { return beta_prime.value_or(beta); }
  int initial_photons() const { return n * m; }
  int resolved_n_max() const { return n_max.value_or(5 * n * m); }

  friend bool operator==(const model_params&, const model_params&) = default;
};

inline void validate(const model_params& p) {
  auto finite_nonneg = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
      throw parameter_error(std::string(name) + " must be finite and >= 0");
  };
  finite_nonneg(p.omega_c, "omega_c");
  finite_nonneg(p.omega_a, "omega_a");
  finite_nonneg(p.beta, "beta");
  finite_nonneg(p.kappa, "kappa");
  if (p.beta_prime) finite_nonneg(*p.beta_prime, "beta_prime");
  if (p.n < 1) throw parameter_error("N must be >= 1");
  if (p.m < 1) throw parameter_error("m must be >= 1");
  if (p.n_max && *p.n_max < 0) throw parameter_error("n_max must be >= 0");
}

}  // namespace qbattery

#endif  // QBATTERY_PARAMS_HPP
