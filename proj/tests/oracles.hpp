#ifndef QBATTERY_TESTS_ORACLES_HPP
#define QBATTERY_TESTS_ORACLES_HPP

// Reference constructions used only by the tests. Nothing here calls into the
// library code it checks.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// sum_k C(N, k) C(M - k + N - 1, N - 1)
inline long long sector_dimension(int n, int excitations) {
  long long total = 0;
  for (int k = 0; k <= n && k <= excitations; ++k) total += choose(n, k) * choose(excitations - k + n - 1, n - 1);
  return total;
}

struct config {
  std::vector<int> photons;
  std::vector<int> spins;
};

// Every (p_1..p_N, s_1..s_N) with p_i <= M and sum == M, by nested counting.
inline std::vector<config> enumerate_sector(int n, int excitations) {
  std::vector<config> out;
  const int base = excitations + 1;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= base;
  for (long long code = 0; code < total; ++code) {
    std::vector<int> p(n);
    long long c = code;
    for (int i = 0; i < n; ++i) {
      p[i] = static_cast<int>(c % base);
      c /= base;
    }
    for (int w = 0; w < (1 << n); ++w) {
      std::vector<int> s(n);
      int sum = 0;
      for (int i = 0; i < n; ++i) {
        s[i] = (w >> i) & 1;
        sum += s[i] + p[i];
      }
      if (sum == excitations) out.push_back({p, s});
    }
  }
  return out;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::MatrixXd annihilation(int cutoff) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Two-level lowering operator on (|g>, |e>).
inline Eigen::MatrixXd lowering() {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

// Embeds a single-site operator at `site` of an N-site chain whose sites have dimension d.
inline Eigen::MatrixXd embed(const Eigen::MatrixXd& op, int site, int n, int d) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, i == site ? op : Eigen::MatrixXd::Identity(d, d));
  return out;
}

struct jch_reference {
  Eigen::MatrixXd h;   // full tensor space, photon cutoff M per cavity
  Eigen::MatrixXd jz;  // w_a sum s^+ s^-
  int cutoff;
};

// JCH Hamiltonian assembled from Kronecker products of local operators.
// Site space: photon (0..cutoff) x spin (g, e), photon index major.
inline jch_reference jch_full(int n, int cutoff, double wc, double wa, double beta, double kappa,
                              const std::vector<std::pair<int, int>>& bonds) {
  const int d = 2 * (cutoff + 1);
  const Eigen::MatrixXd a_local = kron(annihilation(cutoff), Eigen::MatrixXd::Identity(2, 2));
  const Eigen::MatrixXd sm_local = kron(Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1), lowering());
  std::vector<Eigen::MatrixXd> a(n), sm(n);
  for (int i = 0; i < n; ++i) {
    a[i] = embed(a_local, i, n, d);
    sm[i] = embed(sm_local, i, n, d);
  }
  const Eigen::Index dim = a[0].rows();
  jch_reference r{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim), cutoff};
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd ad = a[i].transpose(), sp = sm[i].transpose();
    r.h += wc * ad * a[i] + wa * sp * sm[i] + beta * (a[i] * sp + ad * sm[i]);
    r.jz += wa * sp * sm[i];
  }
  for (auto [x, y] : bonds) r.h -= kappa * (a[y].transpose() * a[x] + a[x].transpose() * a[y]);
  return r;
}

// Position of a configuration in the jch_full tensor space.
inline Eigen::Index jch_full_index(const std::vector<int>& photons, const std::vector<int>& spins, int cutoff) {
  Eigen::Index idx = 0;
  for (std::size_t i = 0; i < photons.size(); ++i) idx = idx * (2 * (cutoff + 1)) + photons[i] * 2 + spins[i];
  return idx;
}

struct dicke_reference {
  Eigen::MatrixXd h;
  Eigen::MatrixXd jz;
};

// Generalised Dicke model on photon (0..cutoff) x N explicit spins, projected
// onto symmetric states |n, k excited>, ordered by n then by q = N - k.
inline dicke_reference dicke_symmetric(int n, int cutoff, double wc, double wa, double beta, double beta_prime,
                                       bool sqrt_n) {
  const int spins = 1 << n;
  const Eigen::MatrixXd a = kron(annihilation(cutoff), Eigen::MatrixXd::Identity(spins, spins));
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(spins, spins);
  Eigen::MatrixXd nexc = Eigen::MatrixXd::Zero(spins, spins);
  for (int i = 0; i < n; ++i) jm += embed(lowering(), i, n, 2);
  for (int w = 0; w < spins; ++w) {
    int k = 0;
    for (int i = 0; i < n; ++i) k += (w >> (n - 1 - i)) & 1;
    nexc(w, w) = k;
  }
  const Eigen::MatrixXd id_ph = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);
  const Eigen::MatrixXd jm_full = kron(id_ph, jm), jp_full = jm_full.transpose();
  const double g = sqrt_n ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
  const Eigen::MatrixXd h = wc * a.transpose() * a + wa * kron(id_ph, nexc) +
                            g * beta * (a * jp_full + a.transpose() * jm_full) +
                            g * beta_prime * (a * jm_full + a.transpose() * jp_full);
  const Eigen::MatrixXd jz = wa * kron(id_ph, nexc);

  // Columns: normalised symmetric states.
  const int dim = (cutoff + 1) * (n + 1);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero((cutoff + 1) * spins, dim);
  int col = 0;
  for (int ph = 0; ph <= cutoff; ++ph) {
    for (int q = 0; q <= n; ++q, ++col) {
      const int k = n - q;
      for (int w = 0; w < spins; ++w)
        if (static_cast<int>(nexc(w, w)) == k) p(ph * spins + w, col) = 1.0;
      p.col(col).normalize();
    }
  }
  return {p.transpose() * h * p, p.transpose() * jz * p};
}

// Classical fourth-order Runge-Kutta for i d psi/dt = H psi; returns <O>(t) at the requested times.
inline std::vector<double> rk4_expectation(const Eigen::MatrixXd& h, const Eigen::VectorXd& psi0,
                                           const Eigen::VectorXd& diagonal_observable, const std::vector<double>& times,
                                           double step) {
  using cvec = Eigen::VectorXcd;
  const Eigen::MatrixXcd minus_i_h = std::complex<double>(0.0, -1.0) * h.cast<std::complex<double>>();
  cvec psi = psi0.cast<std::complex<double>>();
  double t = 0.0;
  std::vector<double> out;
  for (double target : times) {
    while (t < target - 1e-12) {
      const double dt = std::min(step, target - t);
      const cvec k1 = minus_i_h * psi;
      const cvec k2 = minus_i_h * (psi + 0.5 * dt * k1);
      const cvec k3 = minus_i_h * (psi + 0.5 * dt * k2);
      const cvec k4 = minus_i_h * (psi + dt * k3);
      psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += dt;
    }
    out.push_back((diagonal_observable.array() * psi.array().abs2()).sum());
  }
  return out;
}

// Root of tan x = 2x in (0, pi/2), by bisection.
inline double tan_root() {
  double lo = 0.5, hi = 1.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid) - 2.0 * mid < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Dense scan of f(t)/t on (0, t_max].
inline std::pair<double, double> dense_quotient_max(const std::function<double(double)>& f, double t_max, long samples) {
  std::pair<double, double> best{0.0, -1e300};
  for (long i = 1; i <= samples; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(samples);
    const double q = f(t) / t;
    if (q > best.second) best = {t, q};
  }
  return best;
}

}  // namespace oracle

#endif  // QBATTERY_TESTS_ORACLES_HPP
