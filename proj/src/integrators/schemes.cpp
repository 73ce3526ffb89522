// SPDX-License-Identifier: Apache-2.0

#include "hamflex/integrators/schemes.hpp"

#include <cmath>

#include "hamflex/error.hpp"
#include "hamflex/kernels/spmv.hpp"
#include "hamflex/solvers/cg.hpp"

namespace hamflex {

Scheme scheme_from_name(const std::string& name) {
  if (name == "leapfrog" || name == "lf") return Scheme::Leapfrog;
  if (name == "li" || name == "linearly_implicit")
    return Scheme::LinearlyImplicit;
  if (name == "dg" || name == "discrete_gradient")
    return Scheme::DiscreteGradient;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected leapfrog, li or dg)");
}

std::string scheme_name(Scheme s) {
  switch (s) {
  case Scheme::Leapfrog: return "leapfrog";
  case Scheme::LinearlyImplicit: return "li";
  case Scheme::DiscreteGradient: return "dg";
  }
  return "?";
}

void SchemeConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("SchemeConfig: dt must be positive");
  if (!(t_end >= dt)) throw ConfigError("SchemeConfig: t_end must be >= dt");
  if (!(newton_tol > 0.0) || newton_tol > 1e-4)
    throw ConfigError("SchemeConfig: newton_tol must lie in (0, 1e-4]");
  if (newton_max_iter < 1)
    throw ConfigError("SchemeConfig: newton_max_iter must be >= 1");
}

Vector init_half_step(const Model& model, const Vector& q0, const Vector& v0,
                      double dt) {
  const Vector a0 = model.mass().solve_velocity(model.rhs_force(q0));
  return q0 + 0.5 * dt * v0 + (dt * dt / 8.0) * a0;
}

// ---------------------------------------------------------------- leapfrog

LeapfrogIntegrator::LeapfrogIntegrator(const Model& model, double dt)
    : model_(model), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("LeapfrogIntegrator: dt must be positive");
}

StaggeredState LeapfrogIntegrator::start(const PoissonState& initial) const {
  StaggeredState st;
  st.q_half = init_half_step(model_, initial.q, initial.v, dt_);
  st.v = initial.v;
  st.s = initial.s;
  return st;
}

void LeapfrogIntegrator::step(StaggeredState& state) const {
  state.v += dt_ * model_.mass().solve_velocity(model_.rhs_force(state.q_half));
  state.q_half += dt_ * state.v;
  state.s = model_.stress_from_q(state.q_integer(dt_));
}

void LeapfrogIntegrator::time_reverse(StaggeredState& state) const {
  state.q_half -= dt_ * state.v;
  state.v = -state.v;
}

// ------------------------------------------------------- linearly implicit

LinearlyImplicitIntegrator::LinearlyImplicitIntegrator(const Model& model,
                                                       double dt,
                                                       bool condensed,
                                                       SolverBackend solver)
    : model_(model), dt_(dt), condensed_(condensed), solver_(solver) {
  if (!(dt > 0.0))
    throw ConfigError("LinearlyImplicitIntegrator: dt must be positive");
}

StaggeredState LinearlyImplicitIntegrator::start(
    const PoissonState& initial) const {
  StaggeredState st;
  st.q_half = init_half_step(model_, initial.q, initial.v, dt_);
  st.v = initial.v;
  st.s = initial.s;
  return st;
}

void LinearlyImplicitIntegrator::step(StaggeredState& state) {
  if (condensed_)
    step_condensed(state);
  else
    step_monolithic(state);
  state.q_half += dt_ * state.v;
}

void LinearlyImplicitIntegrator::step_condensed(StaggeredState& state) {
  const double quarter = 0.25 * dt_ * dt_;
  const SpMat k = model_.assemble_two_point_stiffness(state.q_half, state.q_half);
  const SpMat& m_rho = model_.mass().velocity_mass();
  SpMat a_plus = m_rho + quarter * k;
  a_plus.makeCompressed();

  Vector kv;
  kernels::spmv_sym(k, state.v, kv);
  Vector mv;
  kernels::spmv_sym(m_rho, state.v, mv);
  Vector lts;
  model_.apply_coupling_transpose(state.q_half, state.s, lts);
  const Vector rhs = mv - quarter * kv - dt_ * lts;

  Vector v_next;
  if (solver_ == SolverBackend::Direct) {
    if (!condensed_analyzed_) {
      condensed_factor_ = solvers::factor_spd(a_plus, model_.dof_block_size());
      condensed_analyzed_ = true;
    } else {
      condensed_factor_.refactorize(a_plus);
    }
    v_next = condensed_factor_.solve(rhs);
    // One refinement pass keeps the energy identity at roundoff over
    // long runs.
    Vector resid = rhs;
    Vector ax;
    kernels::spmv_sym(a_plus, v_next, ax);
    resid -= ax;
    v_next += condensed_factor_.solve(resid);
  } else {
    // Jacobi preconditioning with the velocity mass diagonal; the
    // vertex blocks of the consistent vector mass are scalar multiples
    // of the identity, so this is the block-Jacobi preconditioner.
    Vector m_diag_inv = m_rho.diagonal().cwiseInverse();
    auto op = [&a_plus](const Vector& in, Vector& out) {
      kernels::spmv_sym(a_plus, in, out);
    };
    auto precond = [&m_diag_inv](const Vector& in, Vector& out) {
      out = m_diag_inv.asDiagonal() * in;
    };
    v_next = solvers::solve_cg(op, precond, rhs, 1e-12,
                               static_cast<int>(10 * a_plus.rows()))
                 .x;
  }

  Vector lv_mid;
  model_.apply_coupling(state.q_half, Vector(0.5 * (state.v + v_next)), lv_mid);
  state.s += dt_ * model_.mass().solve_stress(lv_mid);
  state.v = std::move(v_next);
}

void LinearlyImplicitIntegrator::step_monolithic(StaggeredState& state) {
  const Index nv = model_.velocity_dim();
  const Index ns = model_.stress_dim();

  if (h_sparse_.rows() == 0) {
    std::vector<Triplet> trips;
    const SpMat& m_rho = model_.mass().velocity_mass();
    for (Index k = 0; k < m_rho.outerSize(); ++k)
      for (SpMat::InnerIterator it(m_rho, k); it; ++it)
        trips.emplace_back(it.row(), it.col(), it.value());
    const SpMat mc = model_.mass().stress_mass().to_sparse();
    for (Index k = 0; k < mc.outerSize(); ++k)
      for (SpMat::InnerIterator it(mc, k); it; ++it)
        trips.emplace_back(nv + it.row(), nv + it.col(), it.value());
    h_sparse_.resize(nv + ns, nv + ns);
    h_sparse_.setFromTriplets(trips.begin(), trips.end());
  }

  const SpMat l = model_.assemble_coupling(state.q_half);
  std::vector<Triplet> jt;
  jt.reserve(static_cast<size_t>(2 * l.nonZeros()));
  for (Index k = 0; k < l.outerSize(); ++k)
    for (SpMat::InnerIterator it(l, k); it; ++it) {
      jt.emplace_back(nv + it.row(), it.col(), it.value());
      jt.emplace_back(it.col(), nv + it.row(), -it.value());
    }
  SpMat j(nv + ns, nv + ns);
  j.setFromTriplets(jt.begin(), jt.end());

  SpMat a_minus = h_sparse_ - 0.5 * dt_ * j;
  a_minus.makeCompressed();

  Vector x(nv + ns);
  x.head(nv) = state.v;
  x.tail(ns) = state.s;
  Vector jx;
  jx.noalias() = j * x;
  Vector hx;
  hx.noalias() = h_sparse_ * x;
  const Vector rhs = hx + 0.5 * dt_ * jx;

  if (!monolithic_analyzed_) {
    monolithic_lu_.analyzePattern(a_minus);
    monolithic_analyzed_ = true;
  }
  monolithic_lu_.factorize(a_minus);
  if (monolithic_lu_.info() != Eigen::Success)
    throw NumericalError("linearly implicit monolithic solve failed");
  Vector x_next = monolithic_lu_.solve(rhs);
  // One refinement pass; the raw solve can lose digits to the scale
  // gap between the mass and compliance blocks.
  Vector resid = rhs;
  resid.noalias() -= a_minus * x_next;
  x_next += monolithic_lu_.solve(resid);

  state.v = x_next.head(nv);
  state.s = x_next.tail(ns);
}

// ------------------------------------------------------- discrete gradient

DiscreteGradientIntegrator::DiscreteGradientIntegrator(const Model& model,
                                                       double dt,
                                                       double newton_tol,
                                                       int newton_max_iter,
                                                       bool fd_jacobian)
    : model_(model), dt_(dt), tol_(newton_tol), max_iter_(newton_max_iter),
      fd_jacobian_(fd_jacobian) {
  if (!(dt > 0.0))
    throw ConfigError("DiscreteGradientIntegrator: dt must be positive");
}

DiscreteGradientIntegrator::State DiscreteGradientIntegrator::start(
    const PoissonState& initial) const {
  return {initial.q, initial.v};
}

Vector DiscreteGradientIntegrator::residual(const Vector& q_n,
                                            const Vector& v_n,
                                            const Vector& delta,
                                            const Vector& g_n,
                                            double* term_scale) const {
  // The unknown is the increment delta = q_{n+1} - q_n; forming the
  // difference of two nearby displacements would put a 1/dt^2
  // cancellation floor under the residual.
  const Vector q_mid = q_n + 0.5 * delta;
  const Vector y = q_n + delta;
  const Vector s_hat =
      model_.mass().solve_stress(Vector(0.5 * (model_.strain_projection(y) + g_n)));
  Vector lts;
  model_.apply_coupling_transpose(q_mid, s_hat, lts);
  Vector md;
  kernels::spmv_sym(model_.mass().velocity_mass(), delta, md);
  Vector mvn;
  kernels::spmv_sym(model_.mass().velocity_mass(), v_n, mvn);
  md *= 2.0 / (dt_ * dt_);
  mvn *= 2.0 / dt_;
  if (term_scale) *term_scale = md.norm() + mvn.norm() + lts.norm();
  return md - mvn + lts;
}

SpMat DiscreteGradientIntegrator::tangent(const Vector& q_n, const Vector& y,
                                          const Vector& s_hat) const {
  const Vector q_mid = 0.5 * (q_n + y);
  SpMat t = SpMat((2.0 / (dt_ * dt_)) * model_.mass().velocity_mass()) +
            SpMat(0.5 * model_.assemble_geometric_stiffness(s_hat)) +
            SpMat(0.5 * model_.assemble_two_point_stiffness(q_mid, y));
  t.makeCompressed();
  return t;
}

SpMat DiscreteGradientIntegrator::fd_tangent(const Vector& q_n,
                                             const Vector& v_n,
                                             const Vector& delta,
                                             const Vector& g_n) const {
  const Index n = delta.size();
  Matrix dense(n, n);
  const double eps = 1e-7 * (1.0 + q_n.norm());
  for (Index j = 0; j < n; ++j) {
    Vector dp = delta;
    Vector dm = delta;
    dp[j] += eps;
    dm[j] -= eps;
    dense.col(j) =
        (residual(q_n, v_n, dp, g_n) - residual(q_n, v_n, dm, g_n)) /
        (2.0 * eps);
  }
  return SpMat(dense.sparseView());
}

void DiscreteGradientIntegrator::step(State& state, Index step_index,
                                      double time) {
  const Vector q_n = state.q;
  const Vector v_n = state.v;
  const Vector g_n = model_.strain_projection(q_n);

  Vector delta = dt_ * v_n;
  double scale = 0.0;
  Vector r = residual(q_n, v_n, delta, g_n, &scale);

  std::vector<double> history;
  history.push_back(r.norm());
  last_iterations_ = 0;

  auto accepted = [&] {
    return r.norm() <= tol_ * std::max(scale, 1e-300);
  };

  bool converged = accepted();
  for (int it = 0; it < max_iter_ && !converged; ++it) {
    const Vector y = q_n + delta;
    const Vector s_hat = model_.mass().solve_stress(
        Vector(0.5 * (model_.strain_projection(y) + g_n)));
    const SpMat t = fd_jacobian_ ? fd_tangent(q_n, v_n, delta, g_n)
                                 : tangent(q_n, y, s_hat);
    // The finite-difference tangent has no fixed fill pattern.
    if (!analyzed_ || fd_jacobian_) {
      lu_.analyzePattern(t);
      analyzed_ = true;
    }
    lu_.factorize(t);
    if (lu_.info() != Eigen::Success)
      throw StepFailure(step_index, time, history,
                        "discrete gradient: singular Newton tangent");
    delta -= lu_.solve(r);
    r = residual(q_n, v_n, delta, g_n, &scale);
    history.push_back(r.norm());
    last_iterations_ = it + 1;
    converged = accepted();
  }
  if (!converged)
    throw StepFailure(step_index, time, history,
                      "discrete gradient: Newton did not converge within " +
                          std::to_string(max_iter_) + " iterations");

  state.q = q_n + delta;
  state.v = (2.0 / dt_) * delta - v_n;
}

} // namespace hamflex
