/// @file elliptic.hpp
/// @brief Linear solves: variable-coefficient pressure Poisson, Stokes
///        stream-function inversion, and the implicit viscous (Helmholtz)
///        solves.
///
/// All solves run preconditioned CG on the r-weighted symmetric form of the
/// operator; the preconditioner is a cached sparse LDLT factorization of the
/// constant-coefficient operator on the same grid (exact for rho == 1, and a
/// spectrally equivalent preconditioner with kappa <= M/m otherwise).
/// Convergence is measured on the weighted L2 norm of the pointwise residual
/// relative to the right-hand side.

#pragma once

#include "axns/field.hpp"
#include "axns/operators.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>

namespace axns {

struct LinearSolveReport {
    int iterations = 0;
    double residual_norm = 0.0;  // relative, weighted L2
    bool converged = false;
};

enum class Component { R, Z };
enum class VorticityInput { Omega, Gamma };

using SpMat = Eigen::SparseMatrix<double>;

// Matrix-free applications (independent of the assembled matrices; used for
// residual cross-checks and the operator-symmetry tests).

/// div((1/rho) grad pi) at cell centers, zero-flux outer boundaries.
ScalarFieldRZ apply_pressure_op(const ScalarFieldRZ& rho, const ScalarFieldRZ& pi);

/// (rho_face/dt) f - L_component f on the component's face grid.
ScalarFieldRZ apply_helmholtz_op(const ScalarFieldRZ& rho, double dt,
                                 const ScalarFieldRZ& f, Component c);

/// Variable-coefficient pressure Poisson with zero-weighted-mean gauge.
class PressureSolver {
  public:
    explicit PressureSolver(const GridSpec& g);

    /// Solve div((1/rho) grad pi) = rhs. rhs must be cell-centered with zero
    /// weighted mean (beyond-roundoff imbalance is rejected).
    ScalarFieldRZ solve(const ScalarFieldRZ& rho, const ScalarFieldRZ& rhs, double tol,
                        int max_iter, LinearSolveReport& report) const;

    const GridSpec& grid() const { return grid_; }

  private:
    GridSpec grid_;
    Eigen::VectorXd w_;         // cell weights
    Eigen::VectorXd conv_;      // 1/sqrt(w), residual-norm scaling
    std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> unit_ldlt_;
};

/// Stokes stream-function inversion: psi with u = curl(psi) discretely
/// divergence-free to roundoff.
class StreamSolver {
  public:
    explicit StreamSolver(const GridSpec& g);

    /// field is cell-centered or node-staggered omega (or Gamma = omega/r).
    VelocityFieldRZ solve(const ScalarFieldRZ& field, VorticityInput kind, double tol,
                          int max_iter, LinearSolveReport& report) const;

  private:
    GridSpec grid_;
    SpMat mat_;
    Eigen::VectorXd conv_;
    std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> ldlt_;
};

/// Implicit viscous solve ((rho/dt) I - theta * L_component) u = rhs.
/// theta = 1 is backward Euler; theta = 1/2 is the Crank-Nicolson half.
class HelmholtzSolver {
  public:
    explicit HelmholtzSolver(const GridSpec& g);

    ScalarFieldRZ solve(const ScalarFieldRZ& rho, double dt, const ScalarFieldRZ& rhs,
                        Component c, double tol, int max_iter, LinearSolveReport& report,
                        double theta = 1.0) const;

  private:
    struct Cache;
    GridSpec grid_;
    mutable std::shared_ptr<Cache> cache_r_, cache_z_;
};

/// One-shot wrappers matching the operation contracts (construct a solver,
/// solve, return). Prefer the classes when solving repeatedly on one grid.
std::pair<ScalarFieldRZ, LinearSolveReport> solve_pressure(const ScalarFieldRZ& rho,
                                                           const ScalarFieldRZ& rhs,
                                                           double tol, int max_iter = 2000);
VelocityFieldRZ stream_function_velocity(const ScalarFieldRZ& omega, double tol,
                                         int max_iter = 2000,
                                         LinearSolveReport* report = nullptr);
std::pair<ScalarFieldRZ, LinearSolveReport> solve_helmholtz(const ScalarFieldRZ& rho,
                                                            double dt,
                                                            const ScalarFieldRZ& rhs,
                                                            Component c, double tol,
                                                            int max_iter = 2000);

}  // namespace axns
