#include "axns/state.hpp"

#include "axns/field_io.hpp"
#include "axns/operators.hpp"

#include <cmath>

namespace axns {

ScalarFieldRZ compute_a_over_r(const ScalarFieldRZ& rho) {
    if (rho.stag != Stag::Center)
        throw ConfigError("compute_a_over_r: expects cell-centered rho");
    const double rmin = rho.v.minCoeff();
    if (!(rmin > 0.0))
        throw NumericalError("compute_a_over_r: rho must be strictly positive, min=" +
                             std::to_string(rmin));
    const GridSpec& g = rho.grid;
    ScalarFieldRZ q(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            q(i, j) = (1.0 / rho(i, j) - 1.0) / g.rc(i);
    return q;
}

ScalarFieldRZ compute_gamma(const ScalarFieldRZ& omega) {
    require_finite(omega, "compute_gamma");
    const GridSpec& g = omega.grid;
    ScalarFieldRZ gamma(g, omega.stag);
    if (omega.stag == Stag::Node) {
        // the axis row is the regular limit; omega vanishes there
        for (int j = 0; j <= g.nz; ++j) {
            gamma(0, j) = 0.0;
            for (int i = 1; i <= g.nr; ++i) gamma(i, j) = omega(i, j) / g.rf(i);
        }
        return gamma;
    }
    for (int j = 0; j < omega.v.cols(); ++j)
        for (int i = 0; i < omega.v.rows(); ++i) gamma(i, j) = omega(i, j) / omega.r(i);
    return gamma;
}

InitFamily init_family_from_name(const std::string& s) {
    if (s == "vortex_ring" || s == "vortex-ring") return InitFamily::VortexRing;
    if (s == "shear_puff" || s == "shear-puff") return InitFamily::ShearPuff;
    if (s == "custom" || s == "custom-from-file") return InitFamily::CustomFromFile;
    throw ConfigError("unknown initial-data family '" + s + "'");
}

DensityFamily density_family_from_name(const std::string& s) {
    if (s == "uniform") return DensityFamily::Uniform;
    if (s == "off-axis-blob" || s == "off_axis_blob") return DensityFamily::OffAxisBlob;
    throw ConfigError("unknown density family '" + s + "'");
}

double InitialData::gamma0(double r, double z) const {
    const double s2 = 2.0 * sigma * sigma;
    const double q = ((r - r0) * (r - r0) + z * z) / s2;
    switch (family) {
        case InitFamily::VortexRing: return amplitude * std::exp(-q);
        case InitFamily::ShearPuff: return amplitude * (z / sigma) * std::exp(-q);
        case InitFamily::CustomFromFile: return 0.0;
    }
    return 0.0;
}

double InitialData::a0(double r, double z) const {
    if (density_family == DensityFamily::Uniform || epsilon == 0.0) return 0.0;
    const double w2 = 2.0 * blob_width * blob_width;
    const double q = ((r - blob_r) * (r - blob_r) + (z - blob_z) * (z - blob_z)) / w2;
    return epsilon * std::exp(-q);
}

namespace {

FlowState load_custom(const InitialData& spec, const GridSpec& grid) {
    FlowState s(grid);
    ScalarFieldRZ rho = read_field(spec.file_prefix + ".rho");
    ScalarFieldRZ ur = read_field(spec.file_prefix + ".ur");
    ScalarFieldRZ uz = read_field(spec.file_prefix + ".uz");
    require_same_grid(rho.grid, grid, "custom initial data (rho)");
    require_same_grid(ur.grid, grid, "custom initial data (ur)");
    if (rho.stag != Stag::Center || ur.stag != Stag::RFace || uz.stag != Stag::ZFace)
        throw ConfigError("custom initial data: unexpected staggering tags");
    s.rho = std::move(rho);
    s.u.ur = ur.v;
    s.u.uz = uz.v;
    const double axis = s.u.ur.row(0).abs().maxCoeff();
    if (axis > 1e-12)
        throw ConfigError("custom initial data: u^r must vanish on the axis face (max " +
                          std::to_string(axis) + ")");
    s.u.enforce_boundary_pins();
    const double div = linf_norm(divergence(s.u));
    if (div > 1e-10)
        throw ConfigError("custom initial data: velocity is not discretely "
                          "divergence-free (max|div| = " + std::to_string(div) + ")");
    std::filesystem::path pi_path = spec.file_prefix + ".pi";
    if (std::filesystem::exists(pi_path)) {
        ScalarFieldRZ pi = read_field(pi_path);
        require_same_grid(pi.grid, grid, "custom initial data (pi)");
        s.pi = std::move(pi);
    }
    if (s.rho.v.minCoeff() <= 0.0)
        throw ConfigError("custom initial data: rho must be strictly positive");
    return s;
}

}  // namespace

FlowState make_initial_data(const InitialData& spec, const GridSpec& grid,
                            double solver_tol, InitReport* report) {
    if (spec.family == InitFamily::CustomFromFile) {
        FlowState s = load_custom(spec, grid);
        if (report) {
            report->u_l2 = std::sqrt(velocity_l2_sq(s.u));
            report->grad_u_l2 = std::sqrt(grad_u_sq(s.u));
            report->ur_over_r_l2 = ur_over_r_l2(s.u);
            report->gamma0_l2 = weighted_l2_norm(compute_gamma(vorticity(s.u)));
            report->a_over_r_linf = linf_norm(compute_a_over_r(s.rho));
        }
        return s;
    }

    FlowState s(grid);

    if (spec.amplitude != 0.0) {
        // compact support: the envelope must be below 1e-14 A at the boundary
        double tail = 0.0;
        for (int j = 0; j < grid.nz; ++j)
            tail = std::max(tail, std::abs(spec.gamma0(grid.rc(grid.nr - 1), grid.zc(j))));
        for (int i = 0; i < grid.nr; ++i) {
            tail = std::max(tail, std::abs(spec.gamma0(grid.rc(i), grid.zc(0))));
            tail = std::max(tail, std::abs(spec.gamma0(grid.rc(i), grid.zc(grid.nz - 1))));
        }
        if (tail > 1e-14 * std::abs(spec.amplitude))
            throw ConfigError(
                "initial data reaches the domain boundary (envelope " +
                std::to_string(tail) + "); enlarge the domain so the support stays "
                "within a third of its extent");

        ScalarFieldRZ gamma_nodes(grid, Stag::Node);
        gamma_nodes.fill([&](double r, double z) { return spec.gamma0(r, z); });
        StreamSolver stream(grid);
        LinearSolveReport rep;
        s.u = stream.solve(gamma_nodes, VorticityInput::Gamma, solver_tol, 4000, rep);
        if (report) report->stream = rep;
    }

    if (spec.density_family == DensityFamily::OffAxisBlob && spec.epsilon != 0.0) {
        const double axis_val = std::exp(-spec.blob_r * spec.blob_r /
                                         (2.0 * spec.blob_width * spec.blob_width));
        if (axis_val > 1e-12)
            throw ConfigError("a0/r unbounded: density blob overlaps the axis "
                              "(envelope " + std::to_string(axis_val) +
                              " at r=0); move blob_center outward or shrink blob_width");
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.nr; ++i) {
                const double a = spec.a0(grid.rc(i), grid.zc(j));
                if (1.0 + a <= 0.0)
                    throw ConfigError("density blob makes rho nonpositive; reduce epsilon");
                s.rho(i, j) = 1.0 / (1.0 + a);
            }
    }

    if (report) {
        report->u_l2 = std::sqrt(velocity_l2_sq(s.u));
        report->grad_u_l2 = std::sqrt(grad_u_sq(s.u));
        report->ur_over_r_l2 = ur_over_r_l2(s.u);
        ScalarFieldRZ g0(grid, Stag::Center);
        g0.fill([&](double r, double z) { return spec.gamma0(r, z); });
        report->gamma0_l2 = weighted_l2_norm(g0);
        report->a_over_r_linf = linf_norm(compute_a_over_r(s.rho));
    }
    return s;
}

}  // namespace axns
