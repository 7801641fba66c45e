#ifndef QBATTERY_KRYLOV_HPP
#define QBATTERY_KRYLOV_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <iterator>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qbattery {

struct krylov_options {
  int max_dim = 40;
  // Bound on the 2-norm error of a propagated unit vector within one window.
  double tol = 1e-13;
};

// Lanczos basis of span{psi, H psi, ...} with the exact small-space propagator.
//
// For |s| <= reach(), exp(-i H s) psi ~= |psi| V exp(-i T s) e_1 with error below tol.
class krylov_space {
 public:
  krylov_space(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXcd& psi, const krylov_options& opt) {
    if (psi.size() != h.rows()) throw dimension_error("state does not match Hamiltonian dimension");
    norm_ = psi.norm();
    const Eigen::Index n = psi.size();
    const int max_dim = std::max(1, static_cast<int>(std::min<Eigen::Index>(opt.max_dim, n)));
    std::vector<double> alpha, beta;
    basis_.resize(n, max_dim);
    if (norm_ == 0.0) {
      basis_ = psi;
      alpha.push_back(0.0);
      finish(alpha, beta, true, opt.tol);
      return;
    }
    basis_.col(0) = psi / norm_;
    int k = 1;
    bool invariant = false;
    Eigen::VectorXcd w(n);
    Eigen::VectorXcd overlap;
    for (;; ++k) {
      w.noalias() = h * basis_.col(k - 1);
      const double a = basis_.col(k - 1).dot(w).real();
      alpha.push_back(a);
      w -= a * basis_.col(k - 1);
      if (k > 1) w -= beta.back() * basis_.col(k - 2);
      // One pass of full reorthogonalisation.
      overlap.noalias() = basis_.leftCols(k).adjoint() * w;
      w.noalias() -= basis_.leftCols(k) * overlap;
      const double b = w.norm();
      if (b <= 1e-14 * std::max(std::abs(a), 1.0) || k == n) {
        invariant = true;
        break;
      }
      beta.push_back(b);
      if (k == max_dim) break;
      basis_.col(k) = w / b;
    }
    basis_.conservativeResize(Eigen::NoChange, k);
    finish(alpha, beta, invariant, opt.tol);
  }

  int dim() const { return static_cast<int>(basis_.cols()); }
  double reach() const { return reach_; }
  const Eigen::MatrixXcd& basis() const { return basis_; }
  const Eigen::VectorXd& ritz_values() const { return theta_; }
  const Eigen::MatrixXd& ritz_vectors() const { return q_; }

  // Krylov coordinates of exp(-i H s) psi, scaled by |psi|.
  Eigen::VectorXcd coords(double s) const {
    const std::complex<double> minus_i(0.0, -1.0);
    Eigen::VectorXcd phase = (minus_i * s * theta_.cast<std::complex<double>>()).array().exp();
    return norm_ * (q_.cast<std::complex<double>>() * (phase.array() * q0_.array()).matrix());
  }

  Eigen::VectorXcd state(double s) const { return basis_ * coords(s); }

  // V^dag diag(o) V.
  Eigen::MatrixXcd project_diagonal(const Eigen::VectorXd& o) const {
    const Eigen::MatrixXcd weighted = o.asDiagonal() * basis_;
    return basis_.adjoint() * weighted;
  }

 private:
  double error(double s) const {
    if (trailing_beta_ == 0.0) return 0.0;
    return trailing_beta_ * std::abs(coords(s)(dim() - 1)) / std::max(norm_, 1e-300);
  }

  void finish(const std::vector<double>& alpha, const std::vector<double>& beta, bool invariant, double tol) {
    const int k = dim();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    theta_ = es.eigenvalues();
    q_ = es.eigenvectors();
    q0_ = q_.row(0).transpose().cast<std::complex<double>>();
    trailing_beta_ = invariant || static_cast<int>(beta.size()) < k ? 0.0 : beta[k - 1];
    if (trailing_beta_ == 0.0) {
      reach_ = std::numeric_limits<double>::infinity();
      return;
    }
    // Largest step whose a posteriori estimate passes: grow, then bisect.
    double lo = 0.0, hi = 1e-3 / std::max(1.0, t.cwiseAbs().rowwise().sum().maxCoeff());
    while (error(hi) < tol) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e12) break;
    }
    for (int it = 0; it < 50 && hi - lo > 1e-6 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (error(mid) < tol ? lo : hi) = mid;
    }
    reach_ = lo;
  }

  double norm_ = 0.0;
  Eigen::MatrixXcd basis_;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd q_;
  Eigen::VectorXcd q0_;
  double trailing_beta_ = 0.0;
  double reach_ = 0.0;
};

// exp(-i H dt) psi by repeated Lanczos steps.
inline void krylov_advance(const Eigen::SparseMatrix<double>& h, Eigen::VectorXcd& psi, double dt,
                           const krylov_options& opt = {}) {
  double done = 0.0;
  int guard = 0;
  while (done != dt) {
    krylov_space space(h, psi, opt);
    if (!(space.reach() > 0.0)) throw convergence_error("Krylov propagation made no progress");
    const double left = dt - done;
    const double s = std::abs(left) <= space.reach() ? left : std::copysign(space.reach(), left);
    psi = space.state(s);
    done = std::abs(left) <= space.reach() ? dt : done + s;
    if (++guard > 10000000) throw convergence_error("Krylov propagation did not finish");
  }
}

// <psi(t)| O |psi(t)> for diagonal O along exp(-i H t) psi0.
//
// Time is covered by a chain of Lanczos windows. A window keeps only k x k
// data, so any query inside an existing window costs O(k^2) and queries may
// come in any order.
class krylov_track {
 public:
  krylov_track(Eigen::SparseMatrix<double> h, const Eigen::VectorXd& psi0, Eigen::VectorXd diagonal_observable,
               krylov_options opt = {})
      : h_(std::move(h)), observable_(std::move(diagonal_observable)), opt_(opt) {
    if (psi0.size() != h_.rows() || observable_.size() != h_.rows())
      throw dimension_error("state, observable and Hamiltonian dimensions differ");
    open_window(0.0, psi0.cast<std::complex<double>>(), true);
  }

  double operator()(double t) {
    if (!std::isfinite(t)) throw parameter_error("time must be finite");
    const window& w = window_for(t);
    const std::complex<double> minus_i(0.0, -1.0);
    const Eigen::VectorXcd z =
        (minus_i * (t - w.anchor) * w.theta.cast<std::complex<double>>()).array().exp() * w.c0.array();
    return (z.adjoint() * (w.projected * z)).value().real();
  }

  std::size_t windows() const { return windows_.size(); }

 private:
  // In the eigenbasis of T: coords(s) = Q (exp(-i theta s) * c0).
  struct window {
    double anchor;
    double reach;
    Eigen::VectorXd theta;
    Eigen::VectorXcd c0;
    Eigen::MatrixXcd projected;  // Q^T V^dag O V Q
  };

  void open_window(double anchor, const Eigen::VectorXcd& psi, bool forward) {
    krylov_space space(h_, psi, opt_);
    if (!(space.reach() > 0.0)) throw convergence_error("Krylov window has zero reach");
    window w;
    w.anchor = anchor;
    w.reach = space.reach();
    w.theta = space.ritz_values();
    const Eigen::MatrixXcd q = space.ritz_vectors().cast<std::complex<double>>();
    w.c0 = q.adjoint() * space.coords(0.0);
    w.projected = q.adjoint() * space.project_diagonal(observable_) * q;
    const double inf = std::numeric_limits<double>::infinity();
    const bool unbounded = !std::isfinite(w.reach);
    if (forward || windows_.empty()) {
      right_edge_ = unbounded ? inf : anchor + w.reach;
      if (!unbounded) right_state_ = space.state(w.reach);
    }
    if (!forward || windows_.empty()) {
      left_edge_ = unbounded ? -inf : anchor - w.reach;
      if (!unbounded) left_state_ = space.state(-w.reach);
    }
    if (forward)
      windows_.push_back(std::move(w));
    else
      windows_.push_front(std::move(w));
  }

  const window& window_for(double t) {
    while (t > right_edge_) {
      const Eigen::VectorXcd psi = right_state_;
      open_window(right_edge_, psi, true);
    }
    while (t < left_edge_) {
      const Eigen::VectorXcd psi = left_state_;
      open_window(left_edge_, psi, false);
    }
    // Consecutive anchors are one reach apart, so one of the two windows
    // around t covers it.
    auto it = std::lower_bound(windows_.begin(), windows_.end(), t,
                               [](const window& w, double x) { return w.anchor < x; });
    const window* best = nullptr;
    auto consider = [&](const window& w) {
      const double s = std::abs(t - w.anchor);
      if (s <= w.reach && (!best || s < std::abs(t - best->anchor))) best = &w;
    };
    if (it != windows_.end()) consider(*it);
    if (it != windows_.begin()) consider(*std::prev(it));
    if (!best) throw convergence_error("no Krylov window covers t = " + std::to_string(t));
    return *best;
  }

  Eigen::SparseMatrix<double> h_;
  Eigen::VectorXd observable_;
  krylov_options opt_;
  std::deque<window> windows_;
  double right_edge_ = 0.0;
  double left_edge_ = 0.0;
  Eigen::VectorXcd right_state_;
  Eigen::VectorXcd left_state_;
};

}  // namespace qbattery

#endif  // QBATTERY_KRYLOV_HPP
