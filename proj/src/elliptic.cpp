#include "axns/elliptic.hpp"

#include <cmath>

namespace axns {

namespace {

using Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

struct PcgOut {
    int iters = 0;
    double rel = 0.0;
    bool conv = false;
};

// CG on the symmetric weighted system. Convergence measures the pointwise
// residual in the norm induced by conv_scale (elementwise), relative to b.
PcgOut pcg(const SpMat& A, const Eigen::SimplicialLDLT<SpMat>& M, const VectorXd& b,
           VectorXd& x, const VectorXd& conv_scale, double tol, int max_iter) {
    PcgOut out;
    x = VectorXd::Zero(b.size());
    const double bnorm = (b.array() * conv_scale.array()).matrix().norm();
    if (bnorm == 0.0) {
        out.conv = true;
        return out;
    }
    VectorXd r = b;
    VectorXd z = M.solve(r);
    VectorXd p = z;
    double rz = r.dot(z);
    for (int k = 1; k <= max_iter; ++k) {
        VectorXd Ap = A * p;
        const double pAp = p.dot(Ap);
        if (!(pAp > 0.0)) break;  // breakdown; report unconverged
        const double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        out.iters = k;
        out.rel = (r.array() * conv_scale.array()).matrix().norm() / bnorm;
        if (out.rel <= tol) {
            out.conv = true;
            return out;
        }
        z = M.solve(r);
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    return out;
}

// -(W div(beta grad .)) with cell (0,0) grounded to pin the constant mode.
SpMat assemble_pressure_matrix(const GridSpec& g, const Array2D& beta_r,
                               const Array2D& beta_z) {
    const int N = g.nr * g.nz;
    const int ground = 0;
    const double dr = g.dr(), dz = g.dz();
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(5) * N);
    VectorXd diag = VectorXd::Zero(N);
    auto id = [&](int i, int j) { return i + g.nr * j; };
    auto couple = [&](int a, int b, double T) {
        diag[a] += T;
        diag[b] += T;
        if (a != ground && b != ground) {
            trip.emplace_back(a, b, -T);
            trip.emplace_back(b, a, -T);
        }
    };
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i)
            couple(id(i - 1, j), id(i, j), g.rf(i) * beta_r(i, j) * dz / dr);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            couple(id(i, j - 1), id(i, j), g.rc(i) * beta_z(i, j) * dr / dz);
    for (int n = 0; n < N; ++n) trip.emplace_back(n, n, n == ground ? 1.0 : diag[n]);
    SpMat A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

// W ((rho/dt) I - theta L_component), SPD on the component's interior faces.
SpMat assemble_helmholtz_matrix(const GridSpec& g, const Array2D& rho_face, double dt,
                                Component c, double theta) {
    const double dr = g.dr(), dz = g.dz();
    std::vector<Triplet> trip;
    if (c == Component::R) {
        const int ni = g.nr - 1, nj = g.nz;
        const int N = ni * nj;
        VectorXd diag = VectorXd::Zero(N);
        auto id = [&](int i, int j) { return (i - 1) + ni * j; };
        trip.reserve(static_cast<size_t>(5) * N);
        for (int j = 0; j < nj; ++j)
            for (int i = 1; i < g.nr; ++i) {
                const int n = id(i, j);
                const double w = g.rf(i) * dr * dz;
                diag[n] += w * rho_face(i, j) / dt + theta * (dr * dz / g.rf(i));
                // radial couplings through cell-center fluxes
                const double Tin = theta * g.rc(i - 1) * dz / dr;
                const double Tout = theta * g.rc(i) * dz / dr;
                diag[n] += Tin + Tout;
                if (i > 1) {
                    trip.emplace_back(n, id(i - 1, j), -Tin);
                }
                if (i < g.nr - 1) {
                    trip.emplace_back(n, id(i + 1, j), -Tout);
                }
                // axial couplings; odd ghosts at the z walls double the pull
                const double Tz = theta * g.rf(i) * dr / dz;
                diag[n] += 2.0 * Tz;
                if (j > 0) trip.emplace_back(n, id(i, j - 1), -Tz);
                else diag[n] += Tz;
                if (j < nj - 1) trip.emplace_back(n, id(i, j + 1), -Tz);
                else diag[n] += Tz;
            }
        for (int n = 0; n < N; ++n) trip.emplace_back(n, n, diag[n]);
        SpMat A(N, N);
        A.setFromTriplets(trip.begin(), trip.end());
        return A;
    }
    const int ni = g.nr, nj = g.nz - 1;
    const int N = ni * nj;
    VectorXd diag = VectorXd::Zero(N);
    auto id = [&](int i, int j) { return i + ni * (j - 1); };
    trip.reserve(static_cast<size_t>(5) * N);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const int n = id(i, j);
            const double w = g.rc(i) * dr * dz;
            diag[n] += w * rho_face(i, j) / dt;
            const double Tin = theta * g.rf(i) * dz / dr;    // zero at the axis
            const double Tout = theta * g.rf(i + 1) * dz / dr;
            if (i > 0) {
                diag[n] += Tin;
                trip.emplace_back(n, id(i - 1, j), -Tin);
            }
            if (i < g.nr - 1) {
                diag[n] += Tout;
                trip.emplace_back(n, id(i + 1, j), -Tout);
            } else {
                diag[n] += 2.0 * Tout;  // odd ghost at the r_max wall
            }
            const double Tz = theta * g.rc(i) * dr / dz;
            diag[n] += 2.0 * Tz;  // both z neighbors exist or are pinned faces
            if (j > 1) trip.emplace_back(n, id(i, j - 1), -Tz);
            if (j < g.nz - 1) trip.emplace_back(n, id(i, j + 1), -Tz);
        }
    for (int n = 0; n < N; ++n) trip.emplace_back(n, n, diag[n]);
    SpMat A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

bool is_uniform(const Array2D& a) { return a.maxCoeff() == a.minCoeff(); }

}  // namespace

// ---------------------------------------------------------------------------
// matrix-free applications
// ---------------------------------------------------------------------------

ScalarFieldRZ apply_pressure_op(const ScalarFieldRZ& rho, const ScalarFieldRZ& pi) {
    require_same_grid(rho.grid, pi.grid, "apply_pressure_op");
    const GridSpec& g = pi.grid;
    Array2D gr, gz;
    gradient(pi, gr, gz);
    const Array2D rho_r = center_to_rfaces(rho);
    const Array2D rho_z = center_to_zfaces(rho);
    VelocityFieldRZ flux(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) flux.ur(i, j) = gr(i, j) / rho_r(i, j);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) flux.uz(i, j) = gz(i, j) / rho_z(i, j);
    return divergence(flux);
}

ScalarFieldRZ apply_helmholtz_op(const ScalarFieldRZ& rho, double dt,
                                 const ScalarFieldRZ& f, Component c) {
    require_same_grid(rho.grid, f.grid, "apply_helmholtz_op");
    const GridSpec& g = f.grid;
    ScalarFieldRZ lap = (c == Component::R) ? apply_laplacian_r(f) : apply_laplacian_z(f);
    const Array2D rho_face = (c == Component::R) ? center_to_rfaces(rho) : center_to_zfaces(rho);
    ScalarFieldRZ out(g, f.stag);
    if (c == Component::R) {
        for (int j = 0; j < g.nz; ++j)
            for (int i = 1; i < g.nr; ++i)
                out(i, j) = rho_face(i, j) / dt * f(i, j) - lap(i, j);
    } else {
        for (int j = 1; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i)
                out(i, j) = rho_face(i, j) / dt * f(i, j) - lap(i, j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PressureSolver
// ---------------------------------------------------------------------------

PressureSolver::PressureSolver(const GridSpec& g) : grid_(g) {
    const int N = g.nr * g.nz;
    w_.resize(N);
    conv_.resize(N);
    const WeightedMeasure wm(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            w_[i + g.nr * j] = wm.cell(i, j);
            conv_[i + g.nr * j] = 1.0 / std::sqrt(wm.cell(i, j));
        }
    const Array2D br = Array2D::Ones(g.nr + 1, g.nz);
    const Array2D bz = Array2D::Ones(g.nr, g.nz + 1);
    SpMat unit = assemble_pressure_matrix(g, br, bz);
    unit_ldlt_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(unit);
    if (unit_ldlt_->info() != Eigen::Success)
        throw NumericalError("PressureSolver: preconditioner factorization failed");
}

ScalarFieldRZ PressureSolver::solve(const ScalarFieldRZ& rho, const ScalarFieldRZ& rhs,
                                    double tol, int max_iter,
                                    LinearSolveReport& report) const {
    require_same_grid(rho.grid, grid_, "solve_pressure");
    require_same_grid(rhs.grid, grid_, "solve_pressure");
    require_finite(rhs, "solve_pressure rhs");
    if (rho.v.minCoeff() <= 0.0)
        throw NumericalError("solve_pressure: rho must be strictly positive");

    const GridSpec& g = grid_;
    const int N = g.nr * g.nz;
    const double wtot = w_.sum();

    // compatibility: the operator annihilates constants
    const double wsum = (w_.array() * Eigen::Map<const VectorXd>(rhs.v.data(), N).array()).sum();
    const double rms = weighted_l2_norm(rhs) / std::sqrt(wtot);
    if (std::abs(wsum / wtot) > 1e-8 * rms + 1e-300)
        throw ConfigError("solve_pressure: incompatible rhs, weighted mean " +
                          std::to_string(wsum / wtot) + " exceeds roundoff");

    VectorXd b = -(w_.array() * Eigen::Map<const VectorXd>(rhs.v.data(), N).array());
    b[0] = 0.0;  // grounded cell

    SpMat A;
    if (is_uniform(rho.v)) {
        const double beta = 1.0 / rho.v(0, 0);
        const Array2D br = Array2D::Constant(g.nr + 1, g.nz, beta);
        const Array2D bz = Array2D::Constant(g.nr, g.nz + 1, beta);
        A = assemble_pressure_matrix(g, br, bz);
    } else {
        Array2D br = center_to_rfaces(rho);
        Array2D bz = center_to_zfaces(rho);
        br = br.inverse();
        bz = bz.inverse();
        A = assemble_pressure_matrix(g, br, bz);
    }

    VectorXd x;
    PcgOut out = pcg(A, *unit_ldlt_, b, x, conv_, tol, max_iter);
    report.iterations = out.iters;
    report.residual_norm = out.rel;
    report.converged = out.conv;
    if (!out.conv)
        throw NumericalError("solve_pressure: no convergence in " +
                             std::to_string(max_iter) + " iterations (relative residual " +
                             std::to_string(out.rel) + ")");

    ScalarFieldRZ pi(g, Stag::Center);
    Eigen::Map<VectorXd>(pi.v.data(), N) = x;
    const double mean = (w_.array() * x.array()).sum() / wtot;
    pi.v -= mean;
    return pi;
}

// ---------------------------------------------------------------------------
// StreamSolver
// ---------------------------------------------------------------------------

StreamSolver::StreamSolver(const GridSpec& g) : grid_(g) {
    const int ni = g.nr - 1, nj = g.nz - 1;
    const int N = ni * nj;
    const double dr = g.dr(), dz = g.dz();
    auto id = [&](int i, int j) { return (i - 1) + ni * (j - 1); };
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(5) * N);
    VectorXd diag = VectorXd::Zero(N);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const int n = id(i, j);
            const double Tin = dz / (g.rc(i - 1) * dr);
            const double Tout = dz / (g.rc(i) * dr);
            diag[n] += Tin + Tout;  // psi = 0 neighbors only add to the diagonal
            if (i > 1) trip.emplace_back(n, id(i - 1, j), -Tin);
            if (i < g.nr - 1) trip.emplace_back(n, id(i + 1, j), -Tout);
            const double Tz = dr / (g.rf(i) * dz);
            diag[n] += 2.0 * Tz;
            if (j > 1) trip.emplace_back(n, id(i, j - 1), -Tz);
            if (j < g.nz - 1) trip.emplace_back(n, id(i, j + 1), -Tz);
        }
    for (int n = 0; n < N; ++n) trip.emplace_back(n, n, diag[n]);
    mat_.resize(N, N);
    mat_.setFromTriplets(trip.begin(), trip.end());
    conv_ = VectorXd::Ones(N);
    ldlt_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(mat_);
    if (ldlt_->info() != Eigen::Success)
        throw NumericalError("StreamSolver: factorization failed");
}

VelocityFieldRZ StreamSolver::solve(const ScalarFieldRZ& field, VorticityInput kind,
                                    double tol, int max_iter,
                                    LinearSolveReport& report) const {
    require_same_grid(field.grid, grid_, "stream_function_velocity");
    require_finite(field, "stream_function_velocity input");
    const GridSpec& g = grid_;
    const double dr = g.dr(), dz = g.dz();
    const int ni = g.nr - 1, nj = g.nz - 1;

    // omega at interior nodes
    Array2D wn = Array2D::Zero(g.nr + 1, g.nz + 1);
    if (field.stag == Stag::Node) {
        wn = field.v;
    } else if (field.stag == Stag::Center) {
        for (int j = 1; j < g.nz; ++j)
            for (int i = 1; i < g.nr; ++i)
                wn(i, j) = 0.25 * (field(i - 1, j - 1) + field(i, j - 1) +
                                   field(i - 1, j) + field(i, j));
    } else {
        throw ConfigError("stream_function_velocity: input must be cell- or node-sampled");
    }

    VectorXd b(ni * nj);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            double om = wn(i, j);
            if (kind == VorticityInput::Gamma) om *= g.rf(i);
            b[(i - 1) + ni * (j - 1)] = om * dr * dz;
        }

    VectorXd x;
    PcgOut out = pcg(mat_, *ldlt_, b, x, conv_, tol, max_iter);
    report.iterations = out.iters;
    report.residual_norm = out.rel;
    report.converged = out.conv;
    if (!out.conv)
        throw NumericalError("stream_function_velocity: no convergence in " +
                             std::to_string(max_iter) + " iterations");

    Array2D psi = Array2D::Zero(g.nr + 1, g.nz + 1);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) psi(i, j) = x[(i - 1) + ni * (j - 1)];

    // u = curl(psi): exactly divergence-free by construction
    VelocityFieldRZ u(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i)
            u.ur(i, j) = -(psi(i, j + 1) - psi(i, j)) / (g.rf(i) * dz);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            u.uz(i, j) = (psi(i + 1, j) - psi(i, j)) / (g.rc(i) * dr);
    u.enforce_boundary_pins();
    return u;
}

// ---------------------------------------------------------------------------
// HelmholtzSolver
// ---------------------------------------------------------------------------

struct HelmholtzSolver::Cache {
    double dt = -1.0;
    double theta = -1.0;
    Eigen::SimplicialLDLT<SpMat> ldlt;
};

HelmholtzSolver::HelmholtzSolver(const GridSpec& g) : grid_(g) {}

ScalarFieldRZ HelmholtzSolver::solve(const ScalarFieldRZ& rho, double dt,
                                     const ScalarFieldRZ& rhs, Component c, double tol,
                                     int max_iter, LinearSolveReport& report,
                                     double theta) const {
    require_same_grid(rho.grid, grid_, "solve_helmholtz");
    require_same_grid(rhs.grid, grid_, "solve_helmholtz");
    if (!(dt > 0.0)) throw ConfigError("solve_helmholtz: dt must be positive");
    const Stag want = (c == Component::R) ? Stag::RFace : Stag::ZFace;
    if (rhs.stag != want) throw ConfigError("solve_helmholtz: rhs staggering mismatch");

    const GridSpec& g = grid_;
    const Array2D rho_face = (c == Component::R) ? center_to_rfaces(rho) : center_to_zfaces(rho);
    SpMat A = assemble_helmholtz_matrix(g, rho_face, dt, c, theta);

    auto& cache = (c == Component::R) ? cache_r_ : cache_z_;
    if (!cache || cache->dt != dt || cache->theta != theta) {
        auto fresh = std::make_shared<Cache>();
        fresh->dt = dt;
        fresh->theta = theta;
        const Array2D ones_face = Array2D::Ones(rho_face.rows(), rho_face.cols());
        fresh->ldlt.compute(assemble_helmholtz_matrix(g, ones_face, dt, c, theta));
        if (fresh->ldlt.info() != Eigen::Success)
            throw NumericalError("solve_helmholtz: preconditioner factorization failed");
        cache = fresh;
    }

    // pack rhs (w-weighted) and convergence scaling on the interior unknowns
    const int ni = (c == Component::R) ? g.nr - 1 : g.nr;
    const int nj = (c == Component::R) ? g.nz : g.nz - 1;
    VectorXd b(ni * nj), conv(ni * nj);
    const double dr = g.dr(), dz = g.dz();
    if (c == Component::R) {
        for (int j = 0; j < nj; ++j)
            for (int i = 1; i < g.nr; ++i) {
                const double w = g.rf(i) * dr * dz;
                b[(i - 1) + ni * j] = w * rhs(i, j);
                conv[(i - 1) + ni * j] = 1.0 / std::sqrt(w);
            }
    } else {
        for (int j = 1; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double w = g.rc(i) * dr * dz;
                b[i + ni * (j - 1)] = w * rhs(i, j);
                conv[i + ni * (j - 1)] = 1.0 / std::sqrt(w);
            }
    }

    VectorXd x;
    PcgOut out = pcg(A, cache->ldlt, b, x, conv, tol, max_iter);
    report.iterations = out.iters;
    report.residual_norm = out.rel;
    report.converged = out.conv;
    if (!out.conv)
        throw NumericalError("solve_helmholtz: no convergence in " +
                             std::to_string(max_iter) + " iterations (relative residual " +
                             std::to_string(out.rel) + ")");

    ScalarFieldRZ sol(g, want);
    if (c == Component::R) {
        for (int j = 0; j < nj; ++j)
            for (int i = 1; i < g.nr; ++i) sol(i, j) = x[(i - 1) + ni * j];
    } else {
        for (int j = 1; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) sol(i, j) = x[i + ni * (j - 1)];
    }
    return sol;
}

// ---------------------------------------------------------------------------
// one-shot wrappers
// ---------------------------------------------------------------------------

std::pair<ScalarFieldRZ, LinearSolveReport> solve_pressure(const ScalarFieldRZ& rho,
                                                           const ScalarFieldRZ& rhs,
                                                           double tol, int max_iter) {
    PressureSolver solver(rhs.grid);
    LinearSolveReport rep;
    ScalarFieldRZ pi = solver.solve(rho, rhs, tol, max_iter, rep);
    return {std::move(pi), rep};
}

VelocityFieldRZ stream_function_velocity(const ScalarFieldRZ& omega, double tol,
                                         int max_iter, LinearSolveReport* report) {
    StreamSolver solver(omega.grid);
    LinearSolveReport rep;
    VelocityFieldRZ u = solver.solve(omega, VorticityInput::Omega, tol, max_iter, rep);
    if (report) *report = rep;
    return u;
}

std::pair<ScalarFieldRZ, LinearSolveReport> solve_helmholtz(const ScalarFieldRZ& rho,
                                                            double dt,
                                                            const ScalarFieldRZ& rhs,
                                                            Component c, double tol,
                                                            int max_iter) {
    HelmholtzSolver solver(rhs.grid);
    LinearSolveReport rep;
    ScalarFieldRZ sol = solver.solve(rho, dt, rhs, c, tol, max_iter, rep);
    return {std::move(sol), rep};
}

}  // namespace axns
