#include "axns/fourier.hpp"

#include "axns/elliptic.hpp"
#include "axns/operators.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace axns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// bilinear sample of a cell-centered axisymmetric field, even across the
// axis, zero outside the domain
double sample_centered(const ScalarFieldRZ& f, double r, double z) {
    const GridSpec& g = f.grid;
    const double dr = g.dr(), dz = g.dz();
    double s = r / dr - 0.5;
    double t = (z - g.z_min) / dz - 0.5;
    if (s > g.nr - 1 || t < -1.0 || t > g.nz) return 0.0;
    auto val = [&](int i, int j) -> double {
        if (i < 0) i = -1 - i;  // even reflection across the axis
        if (i >= g.nr || j < 0 || j >= g.nz) return 0.0;
        return f(i, j);
    };
    const int i0 = static_cast<int>(std::floor(s)), j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0, ft = t - j0;
    return (1 - fs) * (1 - ft) * val(i0, j0) + fs * (1 - ft) * val(i0 + 1, j0) +
           (1 - fs) * ft * val(i0, j0 + 1) + fs * ft * val(i0 + 1, j0 + 1);
}

// u^r sampled off faces: odd in r (vanishes at the axis), zero outside
double sample_ur(const VelocityFieldRZ& u, double r, double z) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    if (r >= g.r_max) return 0.0;
    const double s = r / dr;
    const double t = (z - g.z_min) / dz - 0.5;
    if (t < -1.0 || t > g.nz) return 0.0;
    auto val = [&](int i, int j) -> double {
        if (i > g.nr || j < 0 || j >= g.nz) return 0.0;
        return u.ur(i, j);
    };
    const int i0 = static_cast<int>(std::floor(s)), j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0, ft = t - j0;
    return (1 - fs) * (1 - ft) * val(i0, j0) + fs * (1 - ft) * val(i0 + 1, j0) +
           (1 - fs) * ft * val(i0, j0 + 1) + fs * ft * val(i0 + 1, j0 + 1);
}

double sample_uz(const VelocityFieldRZ& u, double r, double z) {
    const GridSpec& g = u.grid;
    const double dr = g.dr(), dz = g.dz();
    const double s = r / dr - 0.5;
    const double t = (z - g.z_min) / dz;
    if (s > g.nr - 1 || t < 0.0 || t > g.nz) return 0.0;
    auto val = [&](int i, int j) -> double {
        if (i < 0) i = -1 - i;  // even across the axis
        if (i >= g.nr || j < 0 || j > g.nz) return 0.0;
        return u.uz(i, j);
    };
    const int i0 = static_cast<int>(std::floor(s)), j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0, ft = t - j0;
    return (1 - fs) * (1 - ft) * val(i0, j0) + fs * (1 - ft) * val(i0 + 1, j0) +
           (1 - fs) * ft * val(i0, j0 + 1) + fs * ft * val(i0 + 1, j0 + 1);
}

// trilinear sample of a cube field at a physical point
double sample_cube(const Spectral3D& sp, const std::vector<std::complex<double>>& a,
                   double x, double y, double z) {
    const CartBox& b = sp.box();
    const double h = b.h();
    auto frac = [&](double c, int& k0, double& f) {
        const double s = (c + b.half_width) / h;
        k0 = static_cast<int>(std::floor(s));
        f = s - k0;
    };
    int i0, j0, k0;
    double fx, fy, fz;
    frac(x, i0, fx);
    frac(y, j0, fy);
    frac(z, k0, fz);
    auto val = [&](int i, int j, int k) -> double {
        if (i < 0 || j < 0 || k < 0 || i >= b.n || j >= b.n || k >= b.n) return 0.0;
        return a[sp.idx(i, j, k)].real();
    };
    double out = 0.0;
    for (int di = 0; di <= 1; ++di)
        for (int dj = 0; dj <= 1; ++dj)
            for (int dk = 0; dk <= 1; ++dk) {
                const double w = (di ? fx : 1 - fx) * (dj ? fy : 1 - fy) * (dk ? fz : 1 - fz);
                out += w * val(i0 + di, j0 + dj, k0 + dk);
            }
    return out;
}

}  // namespace

double Spectral3D::xi(int m) const {
    const int half = box_.n / 2;
    const int ms = (m <= half) ? m : m - box_.n;
    return std::numbers::pi * ms / box_.half_width;  // 2 pi m / (2 L)
}

Spectral3D::CVec Spectral3D::sample(
    const std::function<double(double, double, double)>& f) const {
    CVec a(size());
    for (int k = 0; k < box_.n; ++k)
        for (int j = 0; j < box_.n; ++j)
            for (int i = 0; i < box_.n; ++i)
                a[idx(i, j, k)] = f(box_.coord(i), box_.coord(j), box_.coord(k));
    return a;
}

void Spectral3D::fft(CVec& a) const {
    Eigen::FFT<double> fft;
    const int n = box_.n;
    CVec line(n), out(n);
    // axis 0 (contiguous)
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            std::complex<double>* p = &a[idx(0, j, k)];
            std::copy(p, p + n, line.begin());
            fft.fwd(out, line);
            std::copy(out.begin(), out.end(), p);
        }
    // axis 1
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) line[j] = a[idx(i, j, k)];
            fft.fwd(out, line);
            for (int j = 0; j < n; ++j) a[idx(i, j, k)] = out[j];
        }
    // axis 2
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) line[k] = a[idx(i, j, k)];
            fft.fwd(out, line);
            for (int k = 0; k < n; ++k) a[idx(i, j, k)] = out[k];
        }
}

void Spectral3D::ifft(CVec& a) const {
    Eigen::FFT<double> fft;
    const int n = box_.n;
    CVec line(n), out(n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            std::complex<double>* p = &a[idx(0, j, k)];
            std::copy(p, p + n, line.begin());
            fft.inv(out, line);
            std::copy(out.begin(), out.end(), p);
        }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) line[j] = a[idx(i, j, k)];
            fft.inv(out, line);
            for (int j = 0; j < n; ++j) a[idx(i, j, k)] = out[j];
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) line[k] = a[idx(i, j, k)];
            fft.inv(out, line);
            for (int k = 0; k < n; ++k) a[idx(i, j, k)] = out[k];
        }
}

void Spectral3D::inverse_laplacian_hat(CVec& hat) const {
    const int n = box_.n;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double xsq = xi(i) * xi(i) + xi(j) * xi(j) + xi(k) * xi(k);
                hat[idx(i, j, k)] = (xsq == 0.0) ? 0.0 : hat[idx(i, j, k)] / (-xsq);
            }
}

void Spectral3D::derivative_hat(CVec& hat, int axis) const {
    const int n = box_.n;
    const std::complex<double> I(0.0, 1.0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const int m = (axis == 0) ? i : (axis == 1) ? j : k;
                hat[idx(i, j, k)] *= I * xi(m);
            }
}

void Spectral3D::riesz_hat(CVec& hat, int ai, int aj) const {
    const int n = box_.n;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double x[3] = {xi(i), xi(j), xi(k)};
                const double xsq = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                hat[idx(i, j, k)] *= (xsq == 0.0) ? 0.0 : x[ai] * x[aj] / xsq;
            }
}

BiotSavartResult biot_savart_oracle(const ScalarFieldRZ& gamma_cells, int cart_n,
                                    double stream_tol) {
    if (gamma_cells.stag != Stag::Center)
        throw ConfigError("biot_savart_oracle: expects cell-centered Gamma");
    const GridSpec& g = gamma_cells.grid;
    BiotSavartResult out;
    out.cart_n = cart_n;

    const double gmax = linf_norm(gamma_cells);
    if (gmax == 0.0) return out;

    // numerical support extent; reject support touching the domain boundary
    const double thresh = 1e-12 * gmax;
    double ext = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            if (std::abs(gamma_cells(i, j)) > thresh)
                ext = std::max({ext, g.rc(i), std::abs(g.zc(j))});
    for (int j = 0; j < g.nz; ++j)
        if (std::abs(gamma_cells(g.nr - 1, j)) > thresh)
            throw ConfigError("biot_savart_oracle: support touches r_max "
                              "(periodic-image contamination)");
    for (int i = 0; i < g.nr; ++i)
        if (std::abs(gamma_cells(i, 0)) > thresh ||
            std::abs(gamma_cells(i, g.nz - 1)) > thresh)
            throw ConfigError("biot_savart_oracle: support touches the z boundary "
                              "(periodic-image contamination)");

    CartBox box{cart_n, 2.0 * ext};
    out.box_half_width = box.half_width;
    Spectral3D sp(box);

    auto gamma3 = [&](double x, double y, double z) {
        return sample_centered(gamma_cells, std::hypot(x, y), z);
    };
    Spectral3D::CVec ghat = sp.sample(gamma3);
    sp.fft(ghat);

    // W = d_z InvLap Gamma
    Spectral3D::CVec what = ghat;
    sp.inverse_laplacian_hat(what);
    sp.derivative_hat(what, 2);
    Spectral3D::CVec W = what;
    sp.ifft(W);

    // V = InvLap W; G1 = d_x V, G2 = d_y V
    Spectral3D::CVec vhat = what;
    sp.inverse_laplacian_hat(vhat);
    Spectral3D::CVec G1 = vhat, G2 = vhat;
    sp.derivative_hat(G1, 0);
    sp.ifft(G1);
    sp.derivative_hat(G2, 1);
    sp.ifft(G2);

    // Riesz fields for the pointwise decomposition check
    Spectral3D::CVec R11 = what, R22 = what, R12 = what;
    sp.riesz_hat(R11, 0, 0);
    sp.ifft(R11);
    sp.riesz_hat(R22, 1, 1);
    sp.ifft(R22);
    sp.riesz_hat(R12, 0, 1);
    sp.ifft(R12);

    const double r_mask = 4.0 * box.h();

    // (a) pointwise Riesz decomposition of (d_r/r) InvLap W
    {
        double max_l = 0.0, max_d = 0.0, acc_l = 0.0, acc_d = 0.0;
        for (int k = 0; k < box.n; ++k)
            for (int j = 0; j < box.n; ++j)
                for (int i = 0; i < box.n; ++i) {
                    const double x = box.coord(i), y = box.coord(j);
                    const double r2 = x * x + y * y;
                    if (r2 < r_mask * r_mask) continue;
                    const size_t n = sp.idx(i, j, k);
                    const double lhs = (x * G1[n].real() + y * G2[n].real()) / r2;
                    const double rhs = (y * y * R11[n].real() + x * x * R22[n].real() -
                                        2.0 * x * y * R12[n].real()) / r2;
                    max_l = std::max(max_l, std::abs(lhs));
                    max_d = std::max(max_d, std::abs(lhs - rhs));
                    acc_l += lhs * lhs;
                    acc_d += (lhs - rhs) * (lhs - rhs);
                }
        out.riesz_rel_max = (max_l > 0.0) ? max_d / max_l : 0.0;
        out.riesz_rel_l2 = (acc_l > 0.0) ? std::sqrt(acc_d / acc_l) : 0.0;
    }

    // (b) u^r/r from the stream function vs the spectral reconstruction
    StreamSolver stream(g);
    LinearSolveReport rep;
    VelocityFieldRZ u = stream.solve(gamma_cells, VorticityInput::Gamma, stream_tol, 4000, rep);
    {
        const double dr = g.dr(), dz = g.dz();
        double num = 0.0, den = 0.0;
        for (int j = 0; j < g.nz; ++j) {
            const double z = g.zc(j);
            if (std::abs(z) > ext) continue;
            for (int i = 1; i < g.nr; ++i) {
                const double r = g.rf(i);
                if (r > ext || r < r_mask) continue;
                const double q_ref = u.ur(i, j) / r;
                const double w_c = sample_cube(sp, W, r, 0.0, z);
                const double g1 = sample_cube(sp, G1, r, 0.0, z);
                const double q_spec = w_c - 2.0 * g1 / r;  // y = 0 plane
                const double w = r * dr * dz;
                num += (q_ref - q_spec) * (q_ref - q_spec) * w;
                den += q_ref * q_ref * w;
            }
        }
        out.rel_l2_ur_over_r = (den > 0.0) ? std::sqrt(num / den) : 0.0;
    }
    return out;
}

RieszCheckResult riesz_identity_check(
    const std::function<double(double, double, double)>& W, int cart_n,
    double half_width, double r_mask) {
    CartBox box{cart_n, half_width};
    Spectral3D sp(box);
    Spectral3D::CVec what = sp.sample(W);
    sp.fft(what);
    Spectral3D::CVec vhat = what;
    sp.inverse_laplacian_hat(vhat);
    Spectral3D::CVec G1 = vhat, G2 = vhat;
    sp.derivative_hat(G1, 0);
    sp.ifft(G1);
    sp.derivative_hat(G2, 1);
    sp.ifft(G2);
    Spectral3D::CVec R11 = what, R22 = what, R12 = what;
    sp.riesz_hat(R11, 0, 0);
    sp.ifft(R11);
    sp.riesz_hat(R22, 1, 1);
    sp.ifft(R22);
    sp.riesz_hat(R12, 0, 1);
    sp.ifft(R12);

    RieszCheckResult res;
    double max_l = 0.0, max_d = 0.0, acc_l = 0.0, acc_d = 0.0;
    for (int k = 0; k < box.n; ++k)
        for (int j = 0; j < box.n; ++j)
            for (int i = 0; i < box.n; ++i) {
                const double x = box.coord(i), y = box.coord(j);
                const double r2 = x * x + y * y;
                if (r2 < r_mask * r_mask) continue;
                const size_t n = sp.idx(i, j, k);
                const double lhs = (x * G1[n].real() + y * G2[n].real()) / r2;
                const double rhs = (y * y * R11[n].real() + x * x * R22[n].real() -
                                    2.0 * x * y * R12[n].real()) / r2;
                max_l = std::max(max_l, std::abs(lhs));
                max_d = std::max(max_d, std::abs(lhs - rhs));
                acc_l += lhs * lhs;
                acc_d += (lhs - rhs) * (lhs - rhs);
            }
    res.rel_max = (max_l > 0.0) ? max_d / max_l : 0.0;
    res.rel_l2 = (acc_l > 0.0) ? std::sqrt(acc_d / acc_l) : 0.0;
    return res;
}

LowFreqResult low_freq_energy(const VelocityFieldRZ& u, double rho_upper_bound,
                              double alpha, double t, int cart_n) {
    const GridSpec& g = u.grid;
    const double L = std::max({g.r_max, std::abs(g.z_min), std::abs(g.z_max)});
    CartBox box{cart_n, L};
    Spectral3D sp(box);

    auto u1 = [&](double x, double y, double z) {
        const double r = std::hypot(x, y);
        if (r == 0.0) return 0.0;
        return sample_ur(u, r, z) * x / r;
    };
    auto u2 = [&](double x, double y, double z) {
        const double r = std::hypot(x, y);
        if (r == 0.0) return 0.0;
        return sample_ur(u, r, z) * y / r;
    };
    auto u3 = [&](double x, double y, double z) {
        return sample_uz(u, std::hypot(x, y), z);
    };

    Spectral3D::CVec a1 = sp.sample(u1), a2 = sp.sample(u2), a3 = sp.sample(u3);
    sp.fft(a1);
    sp.fft(a2);
    sp.fft(a3);

    const double tbrack = std::sqrt(1.0 + t * t);
    const double radius_sq = 0.5 * rho_upper_bound * alpha / tbrack;
    const double h3 = box.h() * box.h() * box.h();
    const double norm = h3 / sp.size() / kTwoPi;  // Parseval, per unit angle

    LowFreqResult res;
    for (int k = 0; k < box.n; ++k)
        for (int j = 0; j < box.n; ++j)
            for (int i = 0; i < box.n; ++i) {
                const size_t n = sp.idx(i, j, k);
                const double e = norm * (std::norm(a1[n]) + std::norm(a2[n]) + std::norm(a3[n]));
                res.total += e;
                const double xsq = sp.xi(i) * sp.xi(i) + sp.xi(j) * sp.xi(j) + sp.xi(k) * sp.xi(k);
                if (xsq <= radius_sq) res.low_freq += e;
            }
    return res;
}

}  // namespace axns
