#pragma once

#include <complex>

#include "specdmd/types.hpp"

namespace specdmd {

/// Constraint on the continuous-time eigenvalues.
enum class EigConstraint { Unconstrained, LeftHalfPlane, ImaginaryAxis };

/// Levenberg-Marquardt schedule for the outer iteration.
struct VarProOptions {
  int max_outer_iters = 200;
  double lm_lambda0 = 1.0;
  double lm_scale_up = 2.0;
  double lm_scale_down = 0.5;
  double residual_tol = 1e-8;  // relative residual change
  double step_tol = 1e-10;
  int max_lm_retries = 30;

  void validate() const;
};

struct SolveInfo {
  bool converged = false;
  int iterations = 0;
  double final_relative_residual = 0.0;
  int constraint_active_count = 0;
};

/// T(alpha): entry (k, j) = exp(alpha_j * t_k).  Throws when any
/// Re(alpha_j) * t_k exceeds 700 (divergent basis).
Eigen::MatrixXcd eval_basis(const Eigen::VectorXcd& alpha, const TimeGrid& t);

/// Unconstrained: identity.  LeftHalfPlane: Re <- min(Re, 0).
/// ImaginaryAxis: Re <- 0.  Imaginary parts are never touched.
Eigen::VectorXcd project_eigs(const Eigen::VectorXcd& alpha, EigConstraint c);

struct VarProResult {
  Eigen::VectorXcd alpha;
  Eigen::MatrixXcd B;  // r x n
  SolveInfo info;
};

/// Minimizes ||X^T - T(alpha) B||_F over (alpha, B) by variable projection:
/// B is eliminated through a pseudo-inverse solve (singular values below
/// 1e-12*sigma_1 truncated), the outer Levenberg-Marquardt iteration runs on
/// the stacked real/imaginary parts of alpha with the full two-term
/// variable-projection Jacobian, and every candidate step is projected onto
/// the constraint set before evaluation.  A proposed step below step_tol
/// terminates as converged; exhausted retries return the best iterate with
/// converged=false.
VarProResult solve_varpro(const SnapshotMatrix& X, const TimeGrid& t,
                          const Eigen::VectorXcd& alpha0, EigConstraint c,
                          const VarProOptions& opts = {});

/// Projected residual R(alpha) = X^T - T(alpha) B(alpha), m x n.  Diagnostic
/// hook for finite-difference checks.
Eigen::MatrixXcd varpro_residual(const SnapshotMatrix& X, const TimeGrid& t,
                                 const Eigen::VectorXcd& alpha);

/// Dense real Jacobian of the stacked residual [Re vec R; Im vec R] with
/// respect to (Re alpha_0, Im alpha_0, Re alpha_1, ...); 2mn x 2r.
/// Diagnostic hook; the solver itself assembles the normal equations from the
/// same factors without materializing this matrix.
Eigen::MatrixXd varpro_jacobian_dense(const SnapshotMatrix& X,
                                      const TimeGrid& t,
                                      const Eigen::VectorXcd& alpha);

}  // namespace specdmd
