#ifndef QBATTERY_QUENCH_HPP
#define QBATTERY_QUENCH_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <variant>

#include "basis.hpp"
#include "dynamics.hpp"
#include "hamiltonians.hpp"
#include "krylov.hpp"
#include "params.hpp"

namespace qbattery {

struct quench_options {
  std::size_t max_states = default_max_states;
  // Dense diagonalisation up to this dimension, Lanczos propagation above it.
  std::size_t dense_limit = 300;
  krylov_options krylov;
};

// One charging quench: basis, post-quench Hamiltonian, J_z and the initial
// state, with a time evaluator of <J_z>(t) behind it.
class quench {
 public:
  explicit quench(const model_params& p, const quench_options& opt = {}) : params_(p) {
    validate(p);
    if (p.model == model_kind::jch) {
      const auto basis = build_jch_sector(p.n, p.m, opt.max_states);
      h_ = build_jch(p, basis);
      jz_ = build_jz(p, basis).diagonal();
      psi0_ = initial_state(p, basis);
    } else {
      const auto basis = build_dicke_basis(p.n, p.resolved_n_max(), opt.max_states);
      h_ = build_dicke(p, basis);
      jz_ = build_jz(p, basis).diagonal();
      psi0_ = initial_state(p, basis);
    }
    jz0_ = (jz_.array() * psi0_.array().square()).sum();
    if (h_.dim() <= opt.dense_limit) {
      dense_ = std::make_unique<dense_backend>(h_, psi0_, jz_);
    } else {
      krylov_ = std::make_unique<krylov_track>(h_.sparse(), psi0_, jz_, opt.krylov);
    }
  }

  const model_params& params() const { return params_; }
  std::size_t dim() const { return h_.dim(); }
  bool uses_dense() const { return dense_ != nullptr; }
  const symmetric_operator& hamiltonian() const { return h_; }
  const Eigen::VectorXd& jz_diagonal() const { return jz_; }
  const Eigen::VectorXd& initial() const { return psi0_; }

  double jz(double t) { return dense_ ? dense_->track(t) : (*krylov_)(t); }

  // Battery energy w_c (<J_z>(t) - <J_z>(0)).
  double energy(double t) { return params_.omega_c * (jz(t) - jz0_); }

  // Upper bound of energy(t) over all t.
  double energy_bound() const { return params_.omega_c * (jz_.maxCoeff() - jz0_); }

 private:
  struct dense_backend {
    dense_backend(const symmetric_operator& h, const Eigen::VectorXd& psi0, const Eigen::VectorXd& jz)
        : spec(diagonalize(h)), state(prepare(spec, psi0)), track(state, jz) {}
    spectrum spec;
    evolved_state state;
    observable_track track;
  };

  model_params params_;
  symmetric_operator h_;
  Eigen::VectorXd jz_;
  Eigen::VectorXd psi0_;
  double jz0_ = 0.0;
  std::unique_ptr<dense_backend> dense_;
  std::unique_ptr<krylov_track> krylov_;
};

}  // namespace qbattery

#endif  // QBATTERY_QUENCH_HPP
