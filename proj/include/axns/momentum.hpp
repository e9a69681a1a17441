/// @file momentum.hpp
/// @brief Time stepper for the velocity/pressure system: momentum advection,
///        unit-viscosity diffusion with the axisymmetric vector Laplacian,
///        and variable-density pressure projection.

#pragma once

#include "axns/elliptic.hpp"
#include "axns/field.hpp"
#include "axns/transport.hpp"

#include <functional>

namespace axns {

enum class DiffusionMode { Explicit, Implicit };

struct StepControls {
    double cfl = 0.4;
    double dt_max = 0.05;
    double tol = 1e-10;          // elliptic relative tolerance
    int max_iter = 2000;
    DiffusionMode diffusion = DiffusionMode::Implicit;
    int time_order = 1;          // 1: forward splitting, 2: midpoint + Crank-Nicolson
    Limiter limiter = Limiter::FctMinmod;
    double rho_min = 1.0;        // asserted density bounds (m, M)
    double rho_max = 1.0;
    double mp_eps = 1e-12;       // tolerance on the density maximum principle
    double div_tol = 1e-8;       // post-projection max|div u| gate
};

struct StepReport {
    double dt = 0.0;
    double cfl_attained = 0.0;
    LinearSolveReport pressure;
    double max_div = 0.0;
    double wall_seconds = 0.0;
};

/// Owns the elliptic solvers (and their cached factorizations) for one grid.
class Stepper {
  public:
    Stepper(const GridSpec& g, const StepControls& c);

    /// Advance the state by dt in place. Throws NumericalError on CFL or
    /// stability violations (message includes the required dt), on solver
    /// failure, and on non-finite values (message includes the location).
    StepReport step(FlowState& state, double dt);

    /// CFL- and stability-limited dt for the current state (<= dt_max).
    double suggest_dt(const FlowState& state) const;

    const StepControls& controls() const { return ctrl_; }

  private:
    void advance(FlowState& state, double dt, StepReport& rep);
    void advance_stage(FlowState& state, double dt, StepReport& rep,
                       const VelocityFieldRZ* carrier_field, double theta);

    GridSpec grid_;
    StepControls ctrl_;
    PressureSolver pressure_;
    HelmholtzSolver helmholtz_;
};

/// Advect each velocity component in non-conservative form by the carrier
/// field `carrier` (minmod-MUSCL upwind): returns u - dt * (carrier . grad) u.
VelocityFieldRZ advect_velocity(const VelocityFieldRZ& u, const VelocityFieldRZ& carrier,
                                double dt);

struct RunControl {
    double t_end = 0.0;
    int sample_every = 1;
    long step0 = 0;          // global step offset (checkpoint resume)
    double dt_init = -1.0;   // resume the quantized dt sequence; <0 derives it
    bool emit_initial = true;
    std::function<void(const FlowState&, const StepReport*, long step)> on_sample;
    std::function<void(const FlowState&, const StepReport&, long step, double dt_cur)>
        on_step;
};

/// Advance from state.t to t_end with adaptive dt under CFL. The dt sequence
/// is quantized (halve when the CFL demands it, double when comfortably
/// safe) so it is a pure function of (state, config) and resume is
/// deterministic. Emits on_sample at step 0 and at every global step index
/// divisible by sample_every. Returns the number of steps taken.
long run(Stepper& stepper, FlowState& state, const RunControl& rc);

}  // namespace axns
