// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_INTEGRATORS_CONFIG_HPP
#define HAMFLEX_INTEGRATORS_CONFIG_HPP

#include <string>

namespace hamflex {

enum class Scheme { Leapfrog, LinearlyImplicit, DiscreteGradient };

enum class SolverBackend { Direct, ConjugateGradient };

Scheme scheme_from_name(const std::string& name);
std::string scheme_name(Scheme s);

struct SchemeConfig {
  double dt = 0.0;
  double t_end = 0.0;
  Scheme scheme = Scheme::LinearlyImplicit;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  bool condensed = true;
  SolverBackend solver = SolverBackend::Direct;
  // Finite-difference Newton tangent, for cross-checking the analytic
  // one on small systems.
  bool fd_jacobian = false;

  void validate() const;
};

} // namespace hamflex

#endif
