/// @file transport.hpp
/// @brief Advection of cell-centered scalars by the MAC velocity with a
///        discrete maximum principle, and the a/r transport step with its
///        exponential zeroth-order term.
///
/// Scheme: unsplit flux-form finite volume. The high-order face values are
/// minmod-MUSCL; a Zalesak flux-corrected-transport pass clips the
/// antidiffusive fluxes to the local low-order bounds, so the update is
/// conservative and never leaves the local min/max envelope (the discrete
/// maximum principle holds to roundoff for discretely divergence-free
/// velocities under the CFL condition).

#pragma once

#include "axns/field.hpp"

namespace axns {

enum class Limiter { Upwind, FctMinmod };

struct TransportOptions {
    double cfl_max = 0.5;
    Limiter limiter = Limiter::FctMinmod;
};

/// Largest dt satisfying the advective CFL condition for this velocity.
double advective_dt_limit(const VelocityFieldRZ& u, const GridSpec& g, double cfl);

/// One conservative advection step of a cell-centered scalar.
/// Rejects CFL violations, reporting the largest admissible dt.
ScalarFieldRZ advect_scalar(const ScalarFieldRZ& f, const VelocityFieldRZ& u, double dt,
                            const TransportOptions& opt = {});

/// One step of d q/dt + u . grad q + (u^r/r) q = 0 via symmetric splitting:
/// half-step exact exponential source, advection, half-step source. The
/// L-inf growth per step is bounded by exp(dt * max|u^r/r|).
ScalarFieldRZ advect_a_over_r(const ScalarFieldRZ& q, const VelocityFieldRZ& u, double dt,
                              const TransportOptions& opt = {});

}  // namespace axns
