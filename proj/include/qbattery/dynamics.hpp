#ifndef QBATTERY_DYNAMICS_HPP
#define QBATTERY_DYNAMICS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"
#include "hamiltonians.hpp"

namespace qbattery {

// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

inline spectrum diagonalize(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw dimension_error("matrix is not square");
  if (!h.allFinite()) throw parameter_error("matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw convergence_error("symmetric eigensolver did not converge (dim " + std::to_string(h.rows()) + ")");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline spectrum diagonalize(const symmetric_operator& h) { return diagonalize(h.dense()); }

// Quenched state expanded in a spectrum: psi(t) = sum_j c_j exp(-i l_j t) v_j.
class evolved_state {
 public:
  evolved_state(const spectrum& spec, Eigen::VectorXcd coeffs) : spec_(&spec), coeffs_(std::move(coeffs)) {}

  const spectrum& spec() const { return *spec_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }

  // Eigenbasis amplitudes at time t.
  Eigen::VectorXcd phased(double t) const {
    const std::complex<double> minus_i(0.0, -1.0);
    return coeffs_.array() * (minus_i * t * spec_->eigenvalues.array().cast<std::complex<double>>()).exp();
  }

  // Amplitudes in the original basis at time t.
  Eigen::VectorXcd amplitudes(double t) const {
    return spec_->eigenvectors.cast<std::complex<double>>() * phased(t);
  }

 private:
  const spectrum* spec_;
  Eigen::VectorXcd coeffs_;
};

inline evolved_state prepare(const spectrum& spec, const Eigen::VectorXd& psi0, double norm_tol = 1e-10) {
  if (psi0.size() != spec.dim())
    throw dimension_error("state has dimension " + std::to_string(psi0.size()) + ", spectrum has " +
                          std::to_string(spec.dim()));
  if (std::abs(psi0.norm() - 1.0) > norm_tol) throw parameter_error("initial state is not normalised");
  Eigen::VectorXd c = spec.eigenvectors.transpose() * psi0;
  return evolved_state(spec, c.cast<std::complex<double>>());
}

// <psi(t)| O |psi(t)> with the observable rotated into the eigenbasis once,
// so each time point costs O(dim^2).
class observable_track {
 public:
  observable_track(const evolved_state& state, const Eigen::MatrixXd& observable)
      : state_(&state) {
    const auto& v = state.spec().eigenvectors;
    if (observable.rows() != v.rows() || observable.cols() != v.rows())
      throw dimension_error("observable does not match the spectrum dimension");
    rotated_ = v.transpose() * observable * v;
  }

  observable_track(const evolved_state& state, const Eigen::VectorXd& diagonal_observable)
      : state_(&state) {
    const auto& v = state.spec().eigenvectors;
    if (diagonal_observable.size() != v.rows())
      throw dimension_error("observable does not match the spectrum dimension");
    rotated_ = v.transpose() * diagonal_observable.asDiagonal() * v;
  }

  double operator()(double t) const {
    const Eigen::VectorXcd w = state_->phased(t);
    return (w.adjoint() * (rotated_ * w)).value().real();
  }

  const Eigen::MatrixXd& rotated() const { return rotated_; }

 private:
  const evolved_state* state_;
  Eigen::MatrixXd rotated_;
};

// One-off evaluation of a diagonal observable; prefer observable_track for many t.
inline double expectation_diag(const evolved_state& state, const Eigen::VectorXd& diagonal_observable, double t) {
  if (diagonal_observable.size() != state.spec().dim())
    throw dimension_error("observable does not match the spectrum dimension");
  if (!std::isfinite(t)) throw parameter_error("time must be finite");
  const Eigen::VectorXcd psi = state.amplitudes(t);
  return (diagonal_observable.array() * psi.array().abs2()).sum();
}

}  // namespace qbattery

#endif  // QBATTERY_DYNAMICS_HPP
