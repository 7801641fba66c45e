#ifndef QBATTERY_HAMILTONIANS_HPP
#define QBATTERY_HAMILTONIANS_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "params.hpp"

namespace qbattery {

// Real symmetric operator over a basis. Both triangles are stored and the
// lower one is an exact copy of the upper one.
class symmetric_operator {
 public:
  symmetric_operator() = default;

  // Builds from upper-triangle entries (row <= col); duplicates are summed.
  symmetric_operator(std::size_t dim, const std::vector<Eigen::Triplet<double>>& upper) {
    Eigen::SparseMatrix<double> u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    u.setFromTriplets(upper.begin(), upper.end());
    entries_ = u.selfadjointView<Eigen::Upper>();
    entries_.makeCompressed();
  }

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::SparseMatrix<double>& sparse() const { return entries_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }
  Eigen::VectorXd diagonal() const { return entries_.diagonal(); }

  bool is_diagonal() const {
    for (Eigen::Index k = 0; k < entries_.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(entries_, k); it; ++it)
        if (it.row() != it.col() && it.value() != 0.0) return false;
    return true;
  }

  // Largest absolute entry.
  double max_abs() const {
    double r = 0.0;
    for (Eigen::Index k = 0; k < entries_.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(entries_, k); it; ++it)
        r = std::max(r, std::abs(it.value()));
    return r;
  }

 private:
  Eigen::SparseMatrix<double> entries_;
};

// Unordered cavity pairs joined by photon hopping, zero-based.
// A two-cavity ring lists the bond twice, so its hopping is doubled.
inline std::vector<std::pair<int, int>> hopping_pairs(topology topo, int n) {
  std::vector<std::pair<int, int>> pairs;
  switch (topo) {
    case topology::line:
    case topology::ring:
      for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      if (topo == topology::ring && n >= 2) pairs.emplace_back(n - 1, 0);
      break;
    case topology::all_to_all:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      break;
  }
  return pairs;
}

namespace detail {

inline void require_jch(const model_params& p, const jch_basis& basis) {
  if (p.model != model_kind::jch) throw parameter_error("parameters do not describe a JCH model");
  if (basis.sites() != p.n || basis.extent() != p.n * p.m)
    throw mismatch_error("basis was built for N=" + std::to_string(basis.sites()) +
                         " with " + std::to_string(basis.extent()) + " excitations, parameters ask for N=" +
                         std::to_string(p.n) + ", m=" + std::to_string(p.m));
}

inline void require_dicke(const model_params& p, const dicke_basis& basis) {
  if (p.model != model_kind::dicke) throw parameter_error("parameters do not describe a Dicke model");
  if (basis.sites() != p.n || basis.extent() != p.resolved_n_max())
    throw mismatch_error("basis was built for N=" + std::to_string(basis.sites()) + ", n_max=" +
                         std::to_string(basis.extent()) + ", parameters ask for N=" + std::to_string(p.n) +
                         ", n_max=" + std::to_string(p.resolved_n_max()));
}

inline void push_upper(std::vector<Eigen::Triplet<double>>& t, std::size_t i, std::size_t j, double v) {
  if (i > j) std::swap(i, j);
  t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), v);
}

}  // namespace detail

// Collective-spin ladder factors for |k photons> x |j, m>:
//   f1 = sqrt((k+1)[j(j+1) - m(m-1)])   a^dag J^-
//   f2 = sqrt((k+1)[j(j+1) - m(m+1)])   a^dag J^+
//   f3 = sqrt(k[j(j+1) - m(m-1)])       a J^-
//   f4 = sqrt(k[j(j+1) - m(m+1)])       a J^+
inline double ladder_f1(double k, double j, double m) { return std::sqrt((k + 1) * (j * (j + 1) - m * (m - 1))); }
inline double ladder_f2(double k, double j, double m) { return std::sqrt((k + 1) * (j * (j + 1) - m * (m + 1))); }
inline double ladder_f3(double k, double j, double m) { return std::sqrt(k * (j * (j + 1) - m * (m - 1))); }
inline double ladder_f4(double k, double j, double m) { return std::sqrt(k * (j * (j + 1) - m * (m + 1))); }

// H = sum w_c a^dag a + sum w_a s^+ s^- + beta sum (a s^+ + a^dag s^-)
//     - kappa sum_bonds (a^dag_i a_j + a^dag_j a_i)
inline symmetric_operator build_jch(const model_params& p, const jch_basis& basis) {
  detail::require_jch(p, basis);
  const auto bonds = hopping_pairs(p.topo, p.n);
  std::vector<Eigen::Triplet<double>> upper;
  upper.reserve(basis.dim() * (1 + p.n + 2 * bonds.size()));

  jch_state work;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const jch_state& s = basis[i];
    double diag = 0.0;
    for (int c = 0; c < p.n; ++c) diag += p.omega_c * s.photons[c] + p.omega_a * s.spins[c];
    detail::push_upper(upper, i, i, diag);

    // a_c s^+_c; the a^dag s^- half is the mirrored entry.
    if (p.beta != 0.0) {
      for (int c = 0; c < p.n; ++c) {
        if (s.spins[c] != 0 || s.photons[c] == 0) continue;
        work = s;
        work.photons[c] -= 1;
        work.spins[c] = 1;
        detail::push_upper(upper, i, basis.index_of(work), p.beta * std::sqrt(static_cast<double>(s.photons[c])));
      }
    }

    // a^dag_b a_a for each bond; the reverse hop is the mirrored entry.
    if (p.kappa != 0.0) {
      for (auto [a, b] : bonds) {
        if (s.photons[a] == 0) continue;
        work = s;
        work.photons[a] -= 1;
        work.photons[b] += 1;
        const double amp = std::sqrt(static_cast<double>(s.photons[a])) *
                           std::sqrt(static_cast<double>(s.photons[b] + 1));
        detail::push_upper(upper, i, basis.index_of(work), -p.kappa * amp);
      }
    }
  }
  return symmetric_operator(basis.dim(), upper);
}

// Generalised Dicke Hamiltonian in the |n, N/2, N/2 - q> basis, energies
// measured from the all-ground vacuum. Rotating pairs carry beta, the
// counter-rotating pairs carry beta'. Elements leaving the photon cutoff are dropped.
inline symmetric_operator build_dicke(const model_params& p, const dicke_basis& basis) {
  detail::require_dicke(p, basis);
  const double n_sites = p.n;
  const double j = n_sites / 2.0;
  const double scale = (p.norm == normalization::sqrt_n ? 1.0 / std::sqrt(n_sites) : 1.0) *
                       (p.literal_eq10 ? p.omega_c : 1.0);
  const double g = p.beta * scale;
  const double g_counter = p.resolved_beta_prime() * scale;
  const int n_max = basis.extent();

  std::vector<Eigen::Triplet<double>> upper;
  upper.reserve(basis.dim() * 3);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto [n, q] = basis[i];
    const double mj = j - q;
    const double diag = p.literal_eq10 ? p.omega_c * (n + mj) : p.omega_c * n + p.omega_a * (p.n - q);
    detail::push_upper(upper, i, i, diag);
    if (n + 1 > n_max) continue;
    // f1: (n, q) -> (n+1, q+1); its transpose is the f4 element.
    if (q + 1 <= p.n && g != 0.0)
      detail::push_upper(upper, i, basis.index_of({n + 1, q + 1}), g * ladder_f1(n, j, mj));
    // f2: (n, q) -> (n+1, q-1); its transpose is the f3 element.
    if (q - 1 >= 0 && g_counter != 0.0)
      detail::push_upper(upper, i, basis.index_of({n + 1, q - 1}), g_counter * ladder_f2(n, j, mj));
  }
  return symmetric_operator(basis.dim(), upper);
}

// Battery energy operator w_a * (number of excited two-level systems).
inline symmetric_operator build_jz(const model_params& p, const jch_basis& basis) {
  detail::require_jch(p, basis);
  std::vector<Eigen::Triplet<double>> upper;
  upper.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    int excited = 0;
    for (auto b : basis[i].spins) excited += b;
    detail::push_upper(upper, i, i, p.omega_a * excited);
  }
  return symmetric_operator(basis.dim(), upper);
}

inline symmetric_operator build_jz(const model_params& p, const dicke_basis& basis) {
  detail::require_dicke(p, basis);
  std::vector<Eigen::Triplet<double>> upper;
  upper.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    detail::push_upper(upper, i, i, p.omega_a * (p.n - basis[i].q));
  return symmetric_operator(basis.dim(), upper);
}

// m photons in every cavity, every two-level system in the ground state.
inline Eigen::VectorXd initial_state(const model_params& p, const jch_basis& basis) {
  detail::require_jch(p, basis);
  jch_state target{std::vector<int>(p.n, p.m), std::vector<std::uint8_t>(p.n, 0)};
  auto idx = basis.find(target);
  if (!idx) throw missing_state_error("initial JCH state is not in the basis");
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dim()));
  psi(static_cast<Eigen::Index>(*idx)) = 1.0;
  return psi;
}

// |n = N m, q = N>.
inline Eigen::VectorXd initial_state(const model_params& p, const dicke_basis& basis) {
  detail::require_dicke(p, basis);
  auto idx = basis.find({p.initial_photons(), p.n});
  if (!idx)
    throw missing_state_error("initial Dicke state has " + std::to_string(p.initial_photons()) +
                              " photons but the cutoff is " + std::to_string(basis.extent()));
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dim()));
  psi(static_cast<Eigen::Index>(*idx)) = 1.0;
  return psi;
}

}  // namespace qbattery

#endif  // QBATTERY_HAMILTONIANS_HPP
