// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_INTEGRATORS_SCHEMES_HPP
#define HAMFLEX_INTEGRATORS_SCHEMES_HPP

#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "hamflex/core/system.hpp"
#include "hamflex/integrators/config.hpp"
#include "hamflex/solvers/spd.hpp"

namespace hamflex {

/// Taylor start-up value q_{1/2} = q0 + (dt/2) v0 + (dt^2/8) a0 with
/// M_rho a0 = rhs_force(q0).
Vector init_half_step(const Model& model, const Vector& q0, const Vector& v0,
                      double dt);

/// Staggered state shared by the leapfrog and linearly implicit
/// schemes: the displacement sample leads the velocity sample by half
/// a step, (q_{n+1/2}, v_n, s_n).
struct StaggeredState {
  Vector q_half;
  Vector v;
  Vector s;

  /// Displacement at the integer time of v:
  /// q_n = (q_{n-1/2} + q_{n+1/2}) / 2 = q_{n+1/2} - (dt/2) v_n.
  Vector q_integer(double dt) const { return q_half - 0.5 * dt * v; }
};

/// Explicit leapfrog. start() produces (q_{1/2}, v_0) via the Taylor
/// start value; each step kicks the velocity with the force at the
/// current half-step displacement and then drifts,
///   M_rho (v_{n+1} - v_n)/dt = rhs_force(q_{n+1/2}),
///   q_{n+3/2} = q_{n+1/2} + dt v_{n+1}.
class LeapfrogIntegrator {
public:
  LeapfrogIntegrator(const Model& model, double dt);

  StaggeredState start(const PoissonState& initial) const;
  void step(StaggeredState& state) const;

  /// Time-reversal involution in staggered variables: negates the
  /// velocity sample and moves the half-step displacement across the
  /// integer time, (q, v) -> (q - dt v, -v). One step, reversal, one
  /// step, reversal is the identity map.
  void time_reverse(StaggeredState& state) const;

  double dt() const { return dt_; }

private:
  const Model& model_;
  double dt_;
};

/// The linearly implicit scheme: leapfrog in q combined with an
/// implicit midpoint update of (v, s) at frozen q_{n+1/2}. Conserves
/// 1/2 x^T H x exactly. The condensed path eliminates the stress
/// through the block-diagonal M_C and solves an SPD system
///   [M_rho + (dt^2/4) K] v_{n+1} = [M_rho - (dt^2/4) K] v_n - dt L^T s_n
/// with K = L^T M_C^{-1} L; the monolithic path solves the coupled
/// skew system directly and serves as the reference for it.
class LinearlyImplicitIntegrator {
public:
  LinearlyImplicitIntegrator(const Model& model, double dt, bool condensed,
                             SolverBackend solver = SolverBackend::Direct);

  StaggeredState start(const PoissonState& initial) const;
  void step(StaggeredState& state);

  double dt() const { return dt_; }

private:
  void step_condensed(StaggeredState& state);
  void step_monolithic(StaggeredState& state);

  const Model& model_;
  double dt_;
  bool condensed_;
  SolverBackend solver_;

  solvers::SpdFactorization condensed_factor_;
  bool condensed_analyzed_ = false;
  Eigen::SparseLU<SpMat> monolithic_lu_;
  bool monolithic_analyzed_ = false;
  SpMat h_sparse_; // Diag[M_rho, M_C], built lazily for the monolithic path
};

/// Simo's energy-momentum scheme: implicit midpoint with the stress
/// taken as the average of the end-point stresses,
///   (q_{n+1}-q_n)/dt = (v_{n+1}+v_n)/2,
///   M_rho (v_{n+1}-v_n)/dt = -L((q_n+q_{n+1})/2)^T (s(q_n)+s(q_{n+1}))/2,
/// solved by Newton iteration on q_{n+1} with an analytic tangent.
class DiscreteGradientIntegrator {
public:
  DiscreteGradientIntegrator(const Model& model, double dt, double newton_tol,
                             int newton_max_iter, bool fd_jacobian = false);

  struct State {
    Vector q;
    Vector v;
  };

  State start(const PoissonState& initial) const;
  /// Advances one step; throws StepFailure on Newton non-convergence.
  void step(State& state, Index step_index = -1, double time = 0.0);

  int last_newton_iterations() const { return last_iterations_; }

private:
  Vector residual(const Vector& q_n, const Vector& v_n, const Vector& delta,
                  const Vector& g_n, double* term_scale = nullptr) const;
  SpMat tangent(const Vector& q_n, const Vector& y, const Vector& s_hat) const;
  SpMat fd_tangent(const Vector& q_n, const Vector& v_n, const Vector& delta,
                   const Vector& g_n) const;

  const Model& model_;
  double dt_;
  double tol_;
  int max_iter_;
  bool fd_jacobian_;
  Eigen::SparseLU<SpMat> lu_;
  bool analyzed_ = false;
  int last_iterations_ = 0;
};

} // namespace hamflex

#endif
