#include "axns/transport.hpp"

#include <algorithm>
#include <cmath>

namespace axns {

namespace {

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

void check_cfl(const VelocityFieldRZ& u, const GridSpec& g, double dt, double cfl_max) {
    const double c =
        std::max(u.max_abs_ur() * dt / g.dr(), u.max_abs_uz() * dt / g.dz());
    if (c > cfl_max * (1.0 + 1e-12)) {
        const double dt_ok = dt * cfl_max / c;
        throw NumericalError("advection CFL violation: cfl=" + std::to_string(c) +
                             " > " + std::to_string(cfl_max) +
                             "; largest admissible dt=" + std::to_string(dt_ok));
    }
}

}  // namespace

double advective_dt_limit(const VelocityFieldRZ& u, const GridSpec& g, double cfl) {
    const double mur = u.max_abs_ur(), muz = u.max_abs_uz();
    double dt = std::numeric_limits<double>::infinity();
    if (mur > 0.0) dt = std::min(dt, cfl * g.dr() / mur);
    if (muz > 0.0) dt = std::min(dt, cfl * g.dz() / muz);
    return dt;
}

ScalarFieldRZ advect_scalar(const ScalarFieldRZ& f, const VelocityFieldRZ& u, double dt,
                            const TransportOptions& opt) {
    require_same_grid(f.grid, u.grid, "advect_scalar");
    if (f.stag != Stag::Center) throw ConfigError("advect_scalar: expects a cell-centered field");
    check_cfl(u, f.grid, dt, opt.cfl_max);

    const GridSpec& g = f.grid;
    const int nr = g.nr, nz = g.nz;
    const double dr = g.dr(), dz = g.dz();

    // face fluxes, low order (donor cell); boundary faces carry no flux
    Array2D Fr_lo = Array2D::Zero(nr + 1, nz), Fz_lo = Array2D::Zero(nr, nz + 1);
    for (int j = 0; j < nz; ++j)
        for (int i = 1; i < nr; ++i) {
            const double a = g.rf(i) * dz * u.ur(i, j);
            Fr_lo(i, j) = a * (u.ur(i, j) >= 0.0 ? f(i - 1, j) : f(i, j));
        }
    for (int j = 1; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            const double a = g.rc(i) * dr * u.uz(i, j);
            Fz_lo(i, j) = a * (u.uz(i, j) >= 0.0 ? f(i, j - 1) : f(i, j));
        }

    ScalarFieldRZ low(g, Stag::Center);
    auto w = [&](int i) { return g.rc(i) * dr * dz; };
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nr; ++i)
            low(i, j) = f(i, j) - dt / w(i) * (Fr_lo(i + 1, j) - Fr_lo(i, j) +
                                               Fz_lo(i, j + 1) - Fz_lo(i, j));

    if (opt.limiter == Limiter::Upwind || dt == 0.0) return low;

    // high-order (minmod MUSCL, time-centered) antidiffusive fluxes
    Array2D sr = Array2D::Zero(nr, nz), sz = Array2D::Zero(nr, nz);
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            const double dm_r = (i > 0) ? f(i, j) - f(i - 1, j) : 0.0;
            const double dp_r = (i < nr - 1) ? f(i + 1, j) - f(i, j) : 0.0;
            sr(i, j) = minmod(dm_r, dp_r);
            const double dm_z = (j > 0) ? f(i, j) - f(i, j - 1) : 0.0;
            const double dp_z = (j < nz - 1) ? f(i, j + 1) - f(i, j) : 0.0;
            sz(i, j) = minmod(dm_z, dp_z);
        }
    Array2D dFr = Array2D::Zero(nr + 1, nz), dFz = Array2D::Zero(nr, nz + 1);
    for (int j = 0; j < nz; ++j)
        for (int i = 1; i < nr; ++i) {
            const double vel = u.ur(i, j);
            const double a = g.rf(i) * dz * vel;
            const double nu = vel * dt / dr;
            const double fface = (vel >= 0.0)
                                     ? f(i - 1, j) + 0.5 * (1.0 - nu) * sr(i - 1, j)
                                     : f(i, j) - 0.5 * (1.0 + nu) * sr(i, j);
            dFr(i, j) = a * fface - Fr_lo(i, j);
        }
    for (int j = 1; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            const double vel = u.uz(i, j);
            const double a = g.rc(i) * dr * vel;
            const double nu = vel * dt / dz;
            const double fface = (vel >= 0.0)
                                     ? f(i, j - 1) + 0.5 * (1.0 - nu) * sz(i, j - 1)
                                     : f(i, j) - 0.5 * (1.0 + nu) * sz(i, j);
            dFz(i, j) = a * fface - Fz_lo(i, j);
        }

    // Zalesak limiter: clip antidiffusive fluxes to the local envelope
    Array2D fmax(nr, nz), fmin(nr, nz);
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            double hi = std::max(f(i, j), low(i, j));
            double lo = std::min(f(i, j), low(i, j));
            auto take = [&](int ii, int jj) {
                hi = std::max({hi, f(ii, jj), low(ii, jj)});
                lo = std::min({lo, f(ii, jj), low(ii, jj)});
            };
            if (i > 0) take(i - 1, j);
            if (i < nr - 1) take(i + 1, j);
            if (j > 0) take(i, j - 1);
            if (j < nz - 1) take(i, j + 1);
            fmax(i, j) = hi;
            fmin(i, j) = lo;
        }
    Array2D Rp(nr, nz), Rm(nr, nz);
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nr; ++i) {
            const double c = dt / w(i);
            const double Pp = c * (std::max(0.0, dFr(i, j)) - std::min(0.0, dFr(i + 1, j)) +
                                   std::max(0.0, dFz(i, j)) - std::min(0.0, dFz(i, j + 1)));
            const double Pm = c * (std::max(0.0, dFr(i + 1, j)) - std::min(0.0, dFr(i, j)) +
                                   std::max(0.0, dFz(i, j + 1)) - std::min(0.0, dFz(i, j)));
            const double Qp = fmax(i, j) - low(i, j);
            const double Qm = low(i, j) - fmin(i, j);
            Rp(i, j) = (Pp > 0.0) ? std::min(1.0, Qp / Pp) : 1.0;
            Rm(i, j) = (Pm > 0.0) ? std::min(1.0, Qm / Pm) : 1.0;
        }

    ScalarFieldRZ out(g, Stag::Center);
    Array2D ar = Array2D::Zero(nr + 1, nz), az = Array2D::Zero(nr, nz + 1);
    for (int j = 0; j < nz; ++j)
        for (int i = 1; i < nr; ++i)
            ar(i, j) = (dFr(i, j) >= 0.0) ? std::min(Rp(i, j), Rm(i - 1, j))
                                          : std::min(Rp(i - 1, j), Rm(i, j));
    for (int j = 1; j < nz; ++j)
        for (int i = 0; i < nr; ++i)
            az(i, j) = (dFz(i, j) >= 0.0) ? std::min(Rp(i, j), Rm(i, j - 1))
                                          : std::min(Rp(i, j - 1), Rm(i, j));
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nr; ++i)
            out(i, j) = low(i, j) - dt / w(i) *
                                        (ar(i + 1, j) * dFr(i + 1, j) - ar(i, j) * dFr(i, j) +
                                         az(i, j + 1) * dFz(i, j + 1) - az(i, j) * dFz(i, j));
    return out;
}

ScalarFieldRZ advect_a_over_r(const ScalarFieldRZ& q, const VelocityFieldRZ& u, double dt,
                              const TransportOptions& opt) {
    require_same_grid(q.grid, u.grid, "advect_a_over_r");
    const GridSpec& g = q.grid;
    ScalarFieldRZ half(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double s = 0.5 * (u.ur(i, j) + u.ur(i + 1, j)) / g.rc(i);
            half(i, j) = q(i, j) * std::exp(-0.5 * dt * s);
        }
    ScalarFieldRZ adv = advect_scalar(half, u, dt, opt);
    ScalarFieldRZ out(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double s = 0.5 * (u.ur(i, j) + u.ur(i + 1, j)) / g.rc(i);
            out(i, j) = adv(i, j) * std::exp(-0.5 * dt * s);
        }
    return out;
}

}  // namespace axns
