#include "axns/operators.hpp"

#include <algorithm>
#include <cmath>

namespace axns {

namespace {

// Half weight for duplicated boundary samples of staggered fields.
double stag_weight(const ScalarFieldRZ& f, int i, int j) {
    const GridSpec& g = f.grid;
    double w = f.r(i) * g.dr() * g.dz();
    if ((f.stag == Stag::RFace || f.stag == Stag::Node) && (i == 0 || i == g.nr))
        w *= 0.5;
    if ((f.stag == Stag::ZFace || f.stag == Stag::Node) && (j == 0 || j == g.nz))
        w *= 0.5;
    return w;
}

}  // namespace

double weighted_l2_norm(const ScalarFieldRZ& f) {
    require_finite(f, "weighted_l2_norm");
    double s = 0.0;
    for (int j = 0; j < f.v.cols(); ++j)
        for (int i = 0; i < f.v.rows(); ++i) s += f.v(i, j) * f.v(i, j) * stag_weight(f, i, j);
    return std::sqrt(s);
}

double weighted_inner(const ScalarFieldRZ& f, const ScalarFieldRZ& g) {
    require_same_grid(f.grid, g.grid, "weighted_inner");
    if (f.stag != g.stag) throw ConfigError("weighted_inner: staggering mismatch");
    double s = 0.0;
    for (int j = 0; j < f.v.cols(); ++j)
        for (int i = 0; i < f.v.rows(); ++i) s += f.v(i, j) * g.v(i, j) * stag_weight(f, i, j);
    return s;
}

double weighted_sum(const ScalarFieldRZ& f) {
    double s = 0.0;
    for (int j = 0; j < f.v.cols(); ++j)
        for (int i = 0; i < f.v.rows(); ++i) s += f.v(i, j) * stag_weight(f, i, j);
    return s;
}

double linf_norm(const ScalarFieldRZ& f) { return f.v.abs().maxCoeff(); }

ScalarFieldRZ divergence(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    ScalarFieldRZ div(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double rflux =
                (g.rf(i + 1) * u.ur(i + 1, j) - g.rf(i) * u.ur(i, j)) / (g.rc(i) * dr);
            div(i, j) = rflux + (u.uz(i, j + 1) - u.uz(i, j)) / dz;
        }
    return div;
}

ScalarFieldRZ vorticity_nodes(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    ScalarFieldRZ w(g, Stag::Node);
    auto ur_at = [&](int i, int j) {  // odd ghosts: u^r = 0 on z boundaries
        if (j < 0) return -u.ur(i, 0);
        if (j >= g.nz) return -u.ur(i, g.nz - 1);
        return u.ur(i, j);
    };
    auto uz_at = [&](int i, int j) {  // even across axis, odd at r_max wall
        if (i < 0) return u.uz(0, j);
        if (i >= g.nr) return -u.uz(g.nr - 1, j);
        return u.uz(i, j);
    };
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i)
            w(i, j) = (ur_at(i, j) - ur_at(i, j - 1)) / dz - (uz_at(i, j) - uz_at(i - 1, j)) / dr;
    return w;
}

ScalarFieldRZ vorticity(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    ScalarFieldRZ wn = vorticity_nodes(u);
    ScalarFieldRZ wc(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            wc(i, j) = 0.25 * (wn(i, j) + wn(i + 1, j) + wn(i, j + 1) + wn(i + 1, j + 1));
    return wc;
}

void gradient(const ScalarFieldRZ& f, Array2D& gr, Array2D& gz) {
    if (f.stag != Stag::Center) throw ConfigError("gradient: expects a cell-centered field");
    const GridSpec& g = f.grid;
    const double dr = g.dr(), dz = g.dz();
    gr = Array2D::Zero(g.nr + 1, g.nz);
    gz = Array2D::Zero(g.nr, g.nz + 1);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) gr(i, j) = (f(i, j) - f(i - 1, j)) / dr;
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) gz(i, j) = (f(i, j) - f(i, j - 1)) / dz;
}

ScalarFieldRZ as_rface_field(const GridSpec& g, const Array2D& v) {
    ScalarFieldRZ f(g, Stag::RFace);
    f.v = v;
    return f;
}

ScalarFieldRZ as_zface_field(const GridSpec& g, const Array2D& v) {
    ScalarFieldRZ f(g, Stag::ZFace);
    f.v = v;
    return f;
}

ScalarFieldRZ apply_laplacian_r(const ScalarFieldRZ& f) {
    if (f.stag != Stag::RFace) throw ConfigError("apply_laplacian_r: expects an r-face field");
    const GridSpec& g = f.grid;
    const double axis_max = f.v.row(0).abs().maxCoeff();
    if (axis_max > 1e-14)
        throw ConfigError("apply_laplacian_r: nonzero axis-face value (" +
                          std::to_string(axis_max) + "); u^r must vanish at r=0");
    const double dr = g.dr(), dz = g.dz();
    ScalarFieldRZ out(g, Stag::RFace);
    auto at = [&](int i, int j) {  // odd ghosts in z (Dirichlet walls)
        if (j < 0) return -f(i, 0);
        if (j >= g.nz) return -f(i, g.nz - 1);
        return f(i, j);
    };
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const double R = g.rf(i);
            const double rad = (g.rc(i) * (f(i + 1, j) - f(i, j)) -
                                g.rc(i - 1) * (f(i, j) - f(i - 1, j))) /
                               (R * dr * dr);
            const double ax = (at(i, j + 1) - 2.0 * f(i, j) + at(i, j - 1)) / (dz * dz);
            out(i, j) = rad + ax - f(i, j) / (R * R);
        }
    return out;
}

ScalarFieldRZ apply_laplacian_z(const ScalarFieldRZ& f) {
    if (f.stag != Stag::ZFace) throw ConfigError("apply_laplacian_z: expects a z-face field");
    const GridSpec& g = f.grid;
    const double dr = g.dr(), dz = g.dz();
    ScalarFieldRZ out(g, Stag::ZFace);
    auto at = [&](int i, int j) {  // odd ghost at the r_max wall
        if (i >= g.nr) return -f(g.nr - 1, j);
        return f(i, j);
    };
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            // rf(i) = 0 at the axis kills the inner flux; no ghost needed
            const double inner = (i == 0) ? 0.0 : g.rf(i) * (f(i, j) - f(i - 1, j));
            const double rad =
                (g.rf(i + 1) * (at(i + 1, j) - f(i, j)) - inner) / (g.rc(i) * dr * dr);
            const double ax = (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (dz * dz);
            out(i, j) = rad + ax;
        }
    return out;
}

GradEntries gradient_entries(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    GradEntries e;
    e.dur_dr = Array2D::Zero(g.nr, g.nz);
    e.dur_dz = Array2D::Zero(g.nr + 1, g.nz + 1);
    e.duz_dr = Array2D::Zero(g.nr + 1, g.nz + 1);
    e.duz_dz = Array2D::Zero(g.nr, g.nz);
    e.ur_over_r = Array2D::Zero(g.nr + 1, g.nz);
    auto ur_at = [&](int i, int j) {
        if (j < 0) return -u.ur(i, 0);
        if (j >= g.nz) return -u.ur(i, g.nz - 1);
        return u.ur(i, j);
    };
    auto uz_at = [&](int i, int j) {
        if (i < 0) return u.uz(0, j);
        if (i >= g.nr) return -u.uz(g.nr - 1, j);
        return u.uz(i, j);
    };
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            e.dur_dr(i, j) = (u.ur(i + 1, j) - u.ur(i, j)) / dr;
            e.duz_dz(i, j) = (u.uz(i, j + 1) - u.uz(i, j)) / dz;
        }
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) {
            e.dur_dz(i, j) = (ur_at(i, j) - ur_at(i, j - 1)) / dz;
            e.duz_dr(i, j) = (uz_at(i, j) - uz_at(i - 1, j)) / dr;
        }
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i <= g.nr; ++i) e.ur_over_r(i, j) = u.ur(i, j) / g.rf(i);
    return e;
}

double grad_u_sq(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    ScalarFieldRZ fr = as_rface_field(g, u.ur);
    ScalarFieldRZ fz = as_zface_field(g, u.uz);
    ScalarFieldRZ lr = apply_laplacian_r(fr);
    ScalarFieldRZ lz = apply_laplacian_z(fz);
    double s = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) s -= u.ur(i, j) * lr(i, j) * g.rf(i) * dr * dz;
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) s -= u.uz(i, j) * lz(i, j) * g.rc(i) * dr * dz;
    return std::max(s, 0.0);
}

double grad_u_linf(const VelocityFieldRZ& u) {
    GradEntries e = gradient_entries(u);
    double m = e.dur_dr.abs().maxCoeff();
    m = std::max(m, e.dur_dz.abs().maxCoeff());
    m = std::max(m, e.duz_dr.abs().maxCoeff());
    m = std::max(m, e.duz_dz.abs().maxCoeff());
    m = std::max(m, e.ur_over_r.abs().maxCoeff());
    return m;
}

double ur_over_r_linf(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    double m = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i <= g.nr; ++i) m = std::max(m, std::abs(u.ur(i, j)) / g.rf(i));
    return m;
}

double ur_over_r_l2(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    double s = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const double q = u.ur(i, j) / g.rf(i);
            s += q * q * g.rf(i) * dr * dz;
        }
    return std::sqrt(s);
}

double kinetic_energy(const ScalarFieldRZ& rho, const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    require_same_grid(rho.grid, g, "kinetic_energy");
    const double dr = g.dr(), dz = g.dz();
    double s = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const double rf = 0.5 * (rho(i - 1, j) + rho(i, j));
            s += rf * u.ur(i, j) * u.ur(i, j) * g.rf(i) * dr * dz;
        }
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double rf = 0.5 * (rho(i, j - 1) + rho(i, j));
            s += rf * u.uz(i, j) * u.uz(i, j) * g.rc(i) * dr * dz;
        }
    return 0.5 * s;
}

double velocity_l2_sq(const VelocityFieldRZ& u) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    double s = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) s += u.ur(i, j) * u.ur(i, j) * g.rf(i) * dr * dz;
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) s += u.uz(i, j) * u.uz(i, j) * g.rc(i) * dr * dz;
    return s;
}

Array2D center_to_rfaces(const ScalarFieldRZ& c) {
    const GridSpec& g = c.grid;
    Array2D f = Array2D::Zero(g.nr + 1, g.nz);
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 1; i < g.nr; ++i) f(i, j) = 0.5 * (c(i - 1, j) + c(i, j));
        f(0, j) = c(0, j);
        f(g.nr, j) = c(g.nr - 1, j);
    }
    return f;
}

Array2D center_to_zfaces(const ScalarFieldRZ& c) {
    const GridSpec& g = c.grid;
    Array2D f = Array2D::Zero(g.nr, g.nz + 1);
    for (int i = 0; i < g.nr; ++i) {
        for (int j = 1; j < g.nz; ++j) f(i, j) = 0.5 * (c(i, j - 1) + c(i, j));
        f(i, 0) = c(i, 0);
        f(i, g.nz) = c(i, g.nz - 1);
    }
    return f;
}

}  // namespace axns
