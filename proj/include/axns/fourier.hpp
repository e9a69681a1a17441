/// @file fourier.hpp
/// @brief 3-D Cartesian FFT oracle: free-space inverse Laplacian and Riesz
///        transforms (zero-mean convention) used to verify the axisymmetric
///        velocity-reconstruction identities, plus the low-frequency-ball
///        energy of the Fourier-splitting argument.
///
/// The oracle embeds axisymmetric fields into a periodic cube whose
/// half-width is twice the numerical support extent, so periodic images are
/// damped to the level of the tail truncation.

#pragma once

#include "axns/field.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace axns {

struct CartBox {
    int n = 0;
    double half_width = 0.0;
    double h() const { return 2.0 * half_width / n; }
    double coord(int k) const { return -half_width + k * h(); }
};

/// Periodic spectral calculus on a cube; lines are transformed per axis.
class Spectral3D {
  public:
    using CVec = std::vector<std::complex<double>>;

    explicit Spectral3D(const CartBox& box) : box_(box) {}

    const CartBox& box() const { return box_; }
    size_t size() const { return static_cast<size_t>(box_.n) * box_.n * box_.n; }
    size_t idx(int ix, int iy, int iz) const {
        return static_cast<size_t>(ix) + static_cast<size_t>(box_.n) * (iy + static_cast<size_t>(box_.n) * iz);
    }
    /// Signed wavenumber of index m along any axis.
    double xi(int m) const;

    CVec sample(const std::function<double(double, double, double)>& f) const;
    void fft(CVec& a) const;
    void ifft(CVec& a) const;

    /// In-place multipliers on spectral coefficients; the k=0 mode of the
    /// inverse Laplacian is set to zero (zero-mean convention).
    void inverse_laplacian_hat(CVec& hat) const;
    void derivative_hat(CVec& hat, int axis) const;
    void riesz_hat(CVec& hat, int ai, int aj) const;  // xi_i xi_j / |xi|^2

  private:
    CartBox box_;
};

struct BiotSavartResult {
    double rel_l2_ur_over_r = 0.0;  // velocity-identity mismatch vs stream solve
    double riesz_rel_max = 0.0;     // pointwise Riesz-decomposition check on W
    double riesz_rel_l2 = 0.0;
    int cart_n = 0;
    double box_half_width = 0.0;
};

/// Verifies u^r/r reconstructed spectrally from Gamma against the
/// stream-function velocity on the (r,z) grid. Gamma must be compactly
/// supported away from the outer boundaries (reject otherwise).
BiotSavartResult biot_savart_oracle(const ScalarFieldRZ& gamma_cells, int cart_n,
                                    double stream_tol = 1e-12);

struct RieszCheckResult {
    double rel_max = 0.0;
    double rel_l2 = 0.0;
};

/// Pointwise identity (d_r/r) InvLap W == angular Riesz combination, checked
/// spectrally for an axisymmetric W given in closed form; relative to the
/// max of the left side over the mask r >= r_mask.
RieszCheckResult riesz_identity_check(const std::function<double(double, double, double)>& W,
                                      int cart_n, double half_width, double r_mask);

struct LowFreqResult {
    double low_freq = 0.0;  // integral of |u_hat|^2 over the ball, per radian
    double total = 0.0;     // all modes (Parseval: the full L2 norm squared)
};

/// Energy in the shrinking ball S(t) = { |xi| <= sqrt(M/2) g(t) } with
/// g^2(t) = alpha / <t>, <t> = sqrt(1+t^2); per unit azimuthal angle so the
/// numbers are comparable with the r dr dz norms.
LowFreqResult low_freq_energy(const VelocityFieldRZ& u, double rho_upper_bound,
                              double alpha, double t, int cart_n);

}  // namespace axns
