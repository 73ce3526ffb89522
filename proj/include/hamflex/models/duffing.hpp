// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_MODELS_DUFFING_HPP
#define HAMFLEX_MODELS_DUFFING_HPP

#include <memory>

#include "hamflex/core/system.hpp"

namespace hamflex {

/// Parameters of the cubic oscillator  q'' = -alpha q - beta q^3,
/// realized as a sliding mass between two horizontal and two vertical
/// spring pairs with m = 1 and rest length L = 1, so that
/// alpha = 2 k_hor / m and beta = k_ver / (m L^2).
struct DuffingParams {
  double alpha = 10.0;
  double beta = 5.0;
  double q0 = 10.0;

  double mass = 1.0;
  double length = 1.0;
  double k_hor() const { return 0.5 * alpha * mass; }
  double k_ver() const { return beta * mass * length * length; }

  /// Characteristic time 2 pi / sqrt(alpha + beta q0^2).
  double period() const;
  /// Coarsest time step used by the experiments (0.278 ms).
  static constexpr double dt_base = 0.278e-3;

  void validate() const;
};

/// Three-variable first-order form with state x = (v, s_hor, s_ver):
///   H = Diag[m, 2/k_hor, 2/k_ver],
///   L(q) = [2, 2 q / L]^T,
/// and stresses s_hor = k_hor q, s_ver = k_ver q^2 / (2 L).
class DuffingModel final : public Model {
public:
  explicit DuffingModel(const DuffingParams& params);

  Vector strain_projection(const Vector& q) const override;
  SpMat assemble_geometric_stiffness(const Vector& s) const override;
  // Closed-form coupling actions; the sparse assembly would dominate
  // the cost of this scalar model.
  void apply_coupling(const Vector& q, const Vector& v,
                      Vector& out) const override;
  void apply_coupling_transpose(const Vector& q, const Vector& s,
                                Vector& out) const override;
  SpMat assemble_two_point_stiffness(const Vector& q_left,
                                     const Vector& q_right) const override;

  const DuffingParams& params() const { return params_; }

  /// Initial state (q = q0, v = 0, s from q).
  PoissonState initial_state() const;

private:
  DuffingParams params_;
};

std::unique_ptr<DuffingModel> duffing_system(const DuffingParams& params);

/// Closed-form solution q(t) = q0 cn(w0 t; k^2),
/// v(t) = -w0 q0 sn(w0 t; k^2) dn(w0 t; k^2)
/// with w0 = sqrt(alpha + beta q0^2), k^2 = beta q0^2 / (2 w0^2).
/// The argument is reduced modulo the full period 4K before the
/// elliptic evaluation so long horizons keep full accuracy.
struct DuffingExactValues {
  double q;
  double v;
};
DuffingExactValues duffing_exact(const DuffingParams& params, double t);

} // namespace hamflex

#endif
