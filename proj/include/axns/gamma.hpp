/// @file gamma.hpp
/// @brief Direct evolution of Gamma = omega/r for constant density, and the
///        consistency residual of the full variable-density Gamma equation
///        against momentum-solver snapshots.

#pragma once

#include "axns/field.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <vector>

namespace axns {

/// Constant-density Gamma stepper: flux-form upwind advection by a frozen
/// divergence-free velocity (a weighted doubly-stochastic convex combination,
/// so both the L-inf and the weighted-L2 norm are non-increasing), followed
/// by backward-Euler diffusion with the conservative r^3-flux stencil of
/// d^2/dr^2 + (3/r) d/dr + d^2/dz^2 (an M-matrix with unit row sums: exact
/// maximum principle at any dt). Neumann ends keep constants in the kernel.
class GammaEvolver {
  public:
    explicit GammaEvolver(const GridSpec& g);

    /// One step of dt. Advection obeys the CFL bound cfl_max (reject above).
    ScalarFieldRZ step(const ScalarFieldRZ& gamma, const VelocityFieldRZ& u, double dt,
                       double cfl_max = 0.5);

  private:
    void prepare(double dt);
    GridSpec grid_;
    double cached_dt_ = -1.0;
    Eigen::VectorXd vol5_;  // per-cell integral of r^3 dr (times dz)
    std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

/// Evaluates every term of the variable-density Gamma equation on >= 3
/// uniformly spaced snapshots (central differences in time and space, all at
/// interior nodes) and returns the r-weighted L2 norm of the residual, one
/// value per interior snapshot. For rho == 1 the two pressure terms cancel
/// exactly because the mixed differences commute.
std::vector<double> gamma_consistency_residual(const std::vector<FlowState>& snapshots);

}  // namespace axns
