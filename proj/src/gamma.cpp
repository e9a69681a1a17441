#include "axns/gamma.hpp"

#include "axns/operators.hpp"
#include "axns/transport.hpp"

#include <cmath>

namespace axns {

GammaEvolver::GammaEvolver(const GridSpec& g) : grid_(g) {
    vol5_.resize(g.nr);
    for (int i = 0; i < g.nr; ++i) {
        const double r0 = g.rf(i), r1 = g.rf(i + 1);
        vol5_[i] = (r1 * r1 * r1 * r1 - r0 * r0 * r0 * r0) / 4.0;
    }
}

void GammaEvolver::prepare(double dt) {
    if (ldlt_ && cached_dt_ == dt) return;
    const GridSpec& g = grid_;
    const int N = g.nr * g.nz;
    const double dr = g.dr(), dz = g.dz();
    auto id = [&](int i, int j) { return i + g.nr * j; };
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(5) * N);
    Eigen::VectorXd diag(N);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) diag[id(i, j)] = vol5_[i] * dz;
    // r^3-weighted radial fluxes; the axis face metric vanishes, the outer
    // face is no-flux (Neumann), likewise both z ends
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const double R = g.rf(i);
            const double T = dt * R * R * R * dz / dr;
            const int a = id(i - 1, j), b = id(i, j);
            diag[a] += T;
            diag[b] += T;
            trip.emplace_back(a, b, -T);
            trip.emplace_back(b, a, -T);
        }
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double T = dt * vol5_[i] / dz;
            const int a = id(i, j - 1), b = id(i, j);
            diag[a] += T;
            diag[b] += T;
            trip.emplace_back(a, b, -T);
            trip.emplace_back(b, a, -T);
        }
    for (int n = 0; n < N; ++n) trip.emplace_back(n, n, diag[n]);
    Eigen::SparseMatrix<double> M(N, N);
    M.setFromTriplets(trip.begin(), trip.end());
    ldlt_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(M);
    if (ldlt_->info() != Eigen::Success)
        throw NumericalError("GammaEvolver: diffusion factorization failed");
    cached_dt_ = dt;
}

ScalarFieldRZ GammaEvolver::step(const ScalarFieldRZ& gamma, const VelocityFieldRZ& u,
                                 double dt, double cfl_max) {
    require_same_grid(gamma.grid, grid_, "GammaEvolver::step");
    TransportOptions opt;
    opt.cfl_max = cfl_max;
    opt.limiter = Limiter::Upwind;
    ScalarFieldRZ adv = advect_scalar(gamma, u, dt, opt);

    prepare(dt);
    const GridSpec& g = grid_;
    const int N = g.nr * g.nz;
    Eigen::VectorXd b(N);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) b[i + g.nr * j] = vol5_[i] * g.dz() * adv(i, j);
    Eigen::VectorXd x = ldlt_->solve(b);
    ScalarFieldRZ out(g, Stag::Center);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) out(i, j) = x[i + g.nr * j];
    return out;
}

std::vector<double> gamma_consistency_residual(const std::vector<FlowState>& snaps) {
    if (snaps.size() < 3)
        throw ConfigError("gamma_consistency_residual: need at least 3 snapshots");
    const GridSpec g = snaps.front().rho.grid;
    const double dt = snaps[1].t - snaps[0].t;
    for (size_t k = 0; k + 1 < snaps.size(); ++k) {
        require_same_grid(snaps[k].rho.grid, g, "gamma_consistency_residual");
        const double step = snaps[k + 1].t - snaps[k].t;
        if (std::abs(step - dt) > 1e-10 * std::max(1.0, std::abs(dt)))
            throw ConfigError("gamma_consistency_residual: snapshots are not uniformly "
                              "spaced in time");
    }
    const double dr = g.dr(), dz = g.dz();

    // Gamma at nodes for every snapshot (axis row is exactly zero)
    std::vector<Array2D> gam(snaps.size());
    for (size_t k = 0; k < snaps.size(); ++k) {
        ScalarFieldRZ wn = vorticity_nodes(snaps[k].u);
        Array2D G = Array2D::Zero(g.nr + 1, g.nz + 1);
        for (int j = 0; j <= g.nz; ++j)
            for (int i = 1; i <= g.nr; ++i) G(i, j) = wn(i, j) / g.rf(i);
        gam[k] = std::move(G);
    }

    std::vector<double> norms;
    const int trim = 2;
    for (size_t k = 1; k + 1 < snaps.size(); ++k) {
        const FlowState& s = snaps[k];
        const Array2D& G = gam[k];

        // face-sampled Pi gradients over rho and Gamma fluxes
        Array2D Pr = Array2D::Zero(g.nr + 1, g.nz);   // (d_r Pi)/rho at r-faces
        Array2D Pz = Array2D::Zero(g.nr, g.nz + 1);   // (d_z Pi)/rho at z-faces
        for (int j = 0; j < g.nz; ++j)
            for (int i = 1; i < g.nr; ++i)
                Pr(i, j) = (s.pi(i, j) - s.pi(i - 1, j)) / dr /
                           (0.5 * (s.rho(i - 1, j) + s.rho(i, j)));
        for (int j = 1; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i)
                Pz(i, j) = (s.pi(i, j) - s.pi(i, j - 1)) / dz /
                           (0.5 * (s.rho(i, j - 1) + s.rho(i, j)));

        // Qz = (d_z Gamma)/rho at (node-r, center-z)
        Array2D Qz = Array2D::Zero(g.nr + 1, g.nz);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 1; i < g.nr; ++i)
                Qz(i, j) = (G(i, j + 1) - G(i, j)) / dz /
                           (0.5 * (s.rho(i - 1, j) + s.rho(i, j)));
        // S = (r d_r Gamma + 2 Gamma)/rho at (center-r, node-z)
        Array2D S = Array2D::Zero(g.nr, g.nz + 1);
        for (int j = 1; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double dG = g.rc(i) * (G(i + 1, j) - G(i, j)) / dr;
                const double Gm = 0.5 * (G(i + 1, j) + G(i, j));
                S(i, j) = (dG + 2.0 * Gm) / (0.5 * (s.rho(i, j - 1) + s.rho(i, j)));
            }

        double acc = 0.0;
        for (int j = 1 + trim; j < g.nz - trim; ++j)
            for (int i = 1 + trim; i < g.nr - trim; ++i) {
                const double R = g.rf(i);
                const double dGdt = (gam[k + 1](i, j) - gam[k - 1](i, j)) / (2.0 * dt);
                const double urn = 0.5 * (s.u.ur(i, j - 1) + s.u.ur(i, j));
                const double uzn = 0.5 * (s.u.uz(i - 1, j) + s.u.uz(i, j));
                const double dGdr = (G(i + 1, j) - G(i - 1, j)) / (2.0 * dr);
                const double dGdz = (G(i, j + 1) - G(i, j - 1)) / (2.0 * dz);
                const double press =
                    (Pr(i, j) - Pr(i, j - 1)) / (R * dz) - (Pz(i, j) - Pz(i - 1, j)) / (R * dr);
                const double diff_z = (Qz(i, j) - Qz(i, j - 1)) / dz;
                const double diff_r = (S(i, j) - S(i - 1, j)) / (R * dr);
                const double res = dGdt + urn * dGdr + uzn * dGdz + press - diff_z - diff_r;
                acc += res * res * R * dr * dz;
            }
        norms.push_back(std::sqrt(acc));
    }
    return norms;
}

}  // namespace axns
