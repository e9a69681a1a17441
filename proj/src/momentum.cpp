#include "axns/momentum.hpp"

#include "axns/operators.hpp"

#include <chrono>
#include <cmath>

namespace axns {

namespace {

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

// Upwind-biased MUSCL derivative along one index direction of a sampled
// component; `at` must supply ghost values beyond the array.
template <class At>
double advective_deriv(const At& at, int k, double vel, double h) {
    if (vel >= 0.0) {
        const double sm = minmod(at(k - 1) - at(k - 2), at(k) - at(k - 1));
        const double sc = minmod(at(k) - at(k - 1), at(k + 1) - at(k));
        return (at(k) - at(k - 1) + 0.5 * (sc - sm)) / h;
    }
    const double sc = minmod(at(k) - at(k - 1), at(k + 1) - at(k));
    const double sp = minmod(at(k + 1) - at(k), at(k + 2) - at(k + 1));
    return (at(k + 1) - at(k) + 0.5 * (sp - sc)) / h;
}

}  // namespace

VelocityFieldRZ advect_velocity(const VelocityFieldRZ& u, const VelocityFieldRZ& carrier,
                                double dt) {
    require_same_grid(u.grid, carrier.grid, "advect_velocity");
    const GridSpec& g = u.grid;
    const int nr = g.nr, nz = g.nz;
    const double dr = g.dr(), dz = g.dz();
    VelocityFieldRZ out = u;

    // u^r is odd across the axis and the r_max wall, odd across z walls
    auto ur_r = [&](int j) {
        return [&, j](int i) {
            if (i < 0) return -u.ur(-i, j);
            if (i > nr) return -u.ur(2 * nr - i, j);
            return u.ur(i, j);
        };
    };
    auto ur_z = [&](int i) {
        return [&, i](int j) {
            if (j < 0) return -u.ur(i, -1 - j);
            if (j >= nz) return -u.ur(i, 2 * nz - 1 - j);
            return u.ur(i, j);
        };
    };
    for (int j = 0; j < nz; ++j)
        for (int i = 1; i < nr; ++i) {
            const double ar = carrier.ur(i, j);
            const double az = 0.25 * (carrier.uz(i - 1, j) + carrier.uz(i - 1, j + 1) +
                                      carrier.uz(i, j) + carrier.uz(i, j + 1));
            const double ddr = advective_deriv(ur_r(j), i, ar, dr);
            const double ddz = advective_deriv(ur_z(i), j, az, dz);
            out.ur(i, j) = u.ur(i, j) - dt * (ar * ddr + az * ddz);
        }

    // u^z is even across the axis, odd across the r_max wall and z walls
    auto uz_r = [&](int j) {
        return [&, j](int i) {
            if (i < 0) return u.uz(-1 - i, j);
            if (i >= nr) return -u.uz(2 * nr - 1 - i, j);
            return u.uz(i, j);
        };
    };
    auto uz_z = [&](int i) {
        return [&, i](int j) {
            if (j < 0) return -u.uz(i, -j);
            if (j > nz) return -u.uz(i, 2 * nz - j);
            return u.uz(i, j);
        };
    };
    for (int j = 1; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            const double az = carrier.uz(i, j);
            const double ar = 0.25 * (carrier.ur(i, j - 1) + carrier.ur(i + 1, j - 1) +
                                      carrier.ur(i, j) + carrier.ur(i + 1, j));
            const double ddr = advective_deriv(uz_r(j), i, ar, dr);
            const double ddz = advective_deriv(uz_z(i), j, az, dz);
            out.uz(i, j) = u.uz(i, j) - dt * (az * ddz + ar * ddr);
        }

    out.enforce_boundary_pins();
    return out;
}

Stepper::Stepper(const GridSpec& g, const StepControls& c)
    : grid_(g), ctrl_(c), pressure_(g), helmholtz_(g) {}

double Stepper::suggest_dt(const FlowState& state) const {
    double dt = std::min(ctrl_.dt_max,
                         advective_dt_limit(state.u, grid_, ctrl_.cfl));
    if (ctrl_.diffusion == DiffusionMode::Explicit) {
        const double h = std::min(grid_.dr(), grid_.dz());
        dt = std::min(dt, 0.25 * h * h * ctrl_.rho_min);
    }
    return dt;
}

StepReport Stepper::step(FlowState& state, double dt) {
    const auto t0 = std::chrono::steady_clock::now();
    require_same_grid(state.rho.grid, grid_, "Stepper::step");
    if (!(dt > 0.0)) throw ConfigError("Stepper::step: dt must be positive");
    if (ctrl_.diffusion == DiffusionMode::Explicit) {
        const double h = std::min(grid_.dr(), grid_.dz());
        const double cap = 0.25 * h * h * ctrl_.rho_min;
        if (dt > cap * (1.0 + 1e-12))
            throw NumericalError("explicit diffusion stability violation: dt=" +
                                 std::to_string(dt) + " > " + std::to_string(cap));
    }

    StepReport rep;
    rep.dt = dt;
    rep.cfl_attained = std::max(state.u.max_abs_ur() * dt / grid_.dr(),
                                state.u.max_abs_uz() * dt / grid_.dz());
    advance(state, dt, rep);

    require_finite(state.u, "step: velocity");
    require_finite(state.rho, "step: density");
    require_finite(state.pi, "step: pressure");
    const double rmin = state.rho.v.minCoeff(), rmax = state.rho.v.maxCoeff();
    if (rmin < ctrl_.rho_min - ctrl_.mp_eps || rmax > ctrl_.rho_max + ctrl_.mp_eps)
        throw NumericalError("density bounds violated: rho in [" + std::to_string(rmin) +
                             "," + std::to_string(rmax) + "] vs [" +
                             std::to_string(ctrl_.rho_min) + "," +
                             std::to_string(ctrl_.rho_max) + "]");
    if (rep.max_div > ctrl_.div_tol)
        throw NumericalError("post-projection max|div u| = " + std::to_string(rep.max_div) +
                             " exceeds " + std::to_string(ctrl_.div_tol));

    rep.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void Stepper::advance(FlowState& state, double dt, StepReport& rep) {
    if (ctrl_.time_order == 2) {
        // midpoint predictor: a first-order half step supplies the carrier
        FlowState mid = state;
        StepReport mid_rep;
        advance_stage(mid, 0.5 * dt, mid_rep, nullptr, 1.0);
        advance_stage(state, dt, rep, &mid.u, 0.5);
    } else {
        advance_stage(state, dt, rep, nullptr, 1.0);
    }
}

void Stepper::advance_stage(FlowState& state, double dt, StepReport& rep,
                            const VelocityFieldRZ* carrier_field, double theta) {
    TransportOptions topt;
    topt.cfl_max = ctrl_.cfl;
    topt.limiter = ctrl_.limiter;
    const VelocityFieldRZ& carrier = carrier_field ? *carrier_field : state.u;

    ScalarFieldRZ rho_new = advect_scalar(state.rho, carrier, dt, topt);
    VelocityFieldRZ uadv = advect_velocity(state.u, carrier, dt);

    VelocityFieldRZ udiff(grid_);
    if (ctrl_.diffusion == DiffusionMode::Explicit) {
        const Array2D rho_r = center_to_rfaces(rho_new);
        const Array2D rho_z = center_to_zfaces(rho_new);
        ScalarFieldRZ lr = apply_laplacian_r(as_rface_field(grid_, uadv.ur));
        ScalarFieldRZ lz = apply_laplacian_z(as_zface_field(grid_, uadv.uz));
        udiff.ur = uadv.ur + dt * (lr.v / rho_r);
        udiff.uz = uadv.uz + dt * (lz.v / rho_z);
        udiff.enforce_boundary_pins();
    } else {
        const Array2D rho_r = center_to_rfaces(rho_new);
        const Array2D rho_z = center_to_zfaces(rho_new);
        ScalarFieldRZ rhs_r(grid_, Stag::RFace), rhs_z(grid_, Stag::ZFace);
        rhs_r.v = rho_r / dt * uadv.ur;
        rhs_z.v = rho_z / dt * uadv.uz;
        if (theta != 1.0) {
            // Crank-Nicolson: half of the viscous term taken explicitly
            ScalarFieldRZ lr = apply_laplacian_r(as_rface_field(grid_, uadv.ur));
            ScalarFieldRZ lz = apply_laplacian_z(as_zface_field(grid_, uadv.uz));
            rhs_r.v += (1.0 - theta) * lr.v;
            rhs_z.v += (1.0 - theta) * lz.v;
        }
        LinearSolveReport hr, hz;
        ScalarFieldRZ sr = helmholtz_.solve(rho_new, dt, rhs_r, Component::R, ctrl_.tol,
                                            ctrl_.max_iter, hr, theta);
        ScalarFieldRZ sz = helmholtz_.solve(rho_new, dt, rhs_z, Component::Z, ctrl_.tol,
                                            ctrl_.max_iter, hz, theta);
        udiff.ur = sr.v;
        udiff.uz = sz.v;
        udiff.enforce_boundary_pins();
    }

    // projection: div((1/rho) grad Pi) = div(u*)/dt, then correct
    ScalarFieldRZ rhs = divergence(udiff);
    rhs.v /= dt;
    ScalarFieldRZ pi = pressure_.solve(rho_new, rhs, ctrl_.tol, ctrl_.max_iter, rep.pressure);
    Array2D gr, gz;
    gradient(pi, gr, gz);
    const Array2D rho_r = center_to_rfaces(rho_new);
    const Array2D rho_z = center_to_zfaces(rho_new);
    VelocityFieldRZ unew = udiff;
    for (int j = 0; j < grid_.nz; ++j)
        for (int i = 1; i < grid_.nr; ++i)
            unew.ur(i, j) -= dt * gr(i, j) / rho_r(i, j);
    for (int j = 1; j < grid_.nz; ++j)
        for (int i = 0; i < grid_.nr; ++i)
            unew.uz(i, j) -= dt * gz(i, j) / rho_z(i, j);
    unew.enforce_boundary_pins();

    rep.max_div = linf_norm(divergence(unew));

    state.rho = std::move(rho_new);
    state.u = std::move(unew);
    state.pi = std::move(pi);
    state.t += dt;
}

long run(Stepper& stepper, FlowState& state, const RunControl& rc) {
    long step_count = 0;
    if (rc.emit_initial && rc.on_sample) rc.on_sample(state, nullptr, rc.step0);
    if (!(rc.t_end > state.t)) return 0;

    double dt_cur = (rc.dt_init > 0.0) ? rc.dt_init : stepper.suggest_dt(state);
    const double t_eps = 1e-12 * std::max(1.0, std::abs(rc.t_end));
    while (state.t < rc.t_end - t_eps) {
        const double allowed = stepper.suggest_dt(state);
        if (dt_cur > allowed) dt_cur = allowed;
        else if (2.0 * dt_cur <= 0.9 * allowed) dt_cur *= 2.0;
        const double dt = std::min(dt_cur, rc.t_end - state.t);
        StepReport rep = stepper.step(state, dt);
        ++step_count;
        const long global = rc.step0 + step_count;
        if (rc.on_step) rc.on_step(state, rep, global, dt_cur);
        if (rc.on_sample && global % rc.sample_every == 0) rc.on_sample(state, &rep, global);
    }
    return step_count;
}

}  // namespace axns
