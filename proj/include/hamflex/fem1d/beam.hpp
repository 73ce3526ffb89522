// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM1D_BEAM_HPP
#define HAMFLEX_FEM1D_BEAM_HPP

#include <memory>
#include <string>

#include "hamflex/core/system.hpp"
#include "hamflex/fem1d/quadrature.hpp"
#include "hamflex/fem1d/space.hpp"

namespace hamflex::fem1d {

/// Prismatic beam with moderate-rotation (von Karman) kinematics,
/// square cross section of side d.
struct BeamParams {
  double rho = 2700.0;   // kg/m^3
  double e_mod = 70.0e9; // Pa
  double length = 1.0;   // m
  double side = 2.0e-3;  // m
  double amplitude = 2.0e-3; // first-mode initial deflection (= side)
  Index n_el = 50;
  double dt_base = 17.0e-6; // s

  double area() const { return side * side; }
  double inertia() const { return side * side * side * side / 12.0; }
  double axial_compliance() const { return 1.0 / (e_mod * area()); }
  double bending_compliance() const { return 1.0 / (e_mod * inertia()); }

  /// Period of the first linear bending mode,
  /// T = (2 L^2 / pi) sqrt(rho A / (E I)).
  double t1_bending() const;
  double t_end() const { return 5.0 * t1_bending(); }

  void validate() const;
};

enum class BeamBc { Free, SimplySupported };

/// Mixed model of the beam: CG_1 x Hermite velocities, DG_4 axial and
/// DG_1 bending stress resultants. The quartic axial space reproduces
/// d_x q_x + 1/2 (d_x q_z)^2 exactly for Hermite q_z.
class BeamModel final : public Model {
public:
  BeamModel(const Mesh1D& mesh, const BeamParams& params, BeamBc bc,
            int quad_points = 5);

  Vector strain_projection(const Vector& q) const override;
  SpMat assemble_geometric_stiffness(const Vector& s) const override;

  const BeamParams& params() const { return params_; }
  const Mesh1D& mesh1d() const { return mesh_; }
  BeamBc bc() const { return bc_; }

  // Velocity dof layout within the reduced system.
  Index axial_dofs() const { return n_vx_red_; }
  Index transverse_dofs() const { return n_vz_red_; }
  // Stress layout: axial resultant first, bending moment second.
  Index axial_stress_dofs() const { return n_space_.n_dofs(); }

  /// Scatter a reduced velocity-space vector to the full dof set
  /// (zeros on the eliminated boundary dofs).
  Vector to_full(const Vector& reduced) const;
  Vector to_reduced(const Vector& full) const;

  /// First-mode initial state: q_z = A_z sin(pi x / L), zero velocity,
  /// stress recovered from q.
  PoissonState initial_state() const;

  const Space1D& vx_space() const { return vx_space_; }
  const Space1D& vz_space() const { return vz_space_; }
  const Space1D& n_space() const { return n_space_; }
  const Space1D& m_space() const { return m_space_; }

private:
  SpMat restrict_cols(const SpMat& full) const;
  SpMat restrict_both(const SpMat& full) const;

  Mesh1D mesh_;
  BeamParams params_;
  BeamBc bc_;
  Space1D vx_space_;
  Space1D vz_space_;
  Space1D n_space_;
  Space1D m_space_;
  QuadratureRule rule_;

  Index n_vx_full_ = 0, n_vz_full_ = 0;
  Index n_vx_red_ = 0, n_vz_red_ = 0;
  std::vector<Index> kept_;        // reduced -> full
  std::vector<Index> full_to_red_; // full -> reduced or -1
};

std::unique_ptr<BeamModel> assemble_beam(const Mesh1D& mesh,
                                         const BeamParams& params,
                                         BeamBc bc = BeamBc::Free,
                                         int quad_points = 5);

/// Re-assembles the model with the named boundary condition applied by
/// dof elimination. Only "simply_supported" is recognized.
std::unique_ptr<BeamModel> apply_beam_bcs(const BeamModel& model,
                                          const std::string& bc_name);

/// Hermite interpolant of the first bending mode on the reduced dof
/// set, with velocity zero and consistent stress.
PoissonState beam_initial_state(const BeamParams& params,
                                const BeamModel& model);

} // namespace hamflex::fem1d

#endif
