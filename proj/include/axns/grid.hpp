/// @file grid.hpp
/// @brief Axisymmetric staggered (r,z) grid and the r-weighted cell measure.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace axns {

using Array2D = Eigen::ArrayXXd;  // (rows = r index, cols = z index)
using Eigen::ArrayXd;

/// Staggering location of a sampled field.
enum class Stag { Center, RFace, ZFace, Node };

const char* stag_name(Stag s);
Stag stag_from_name(const std::string& name);

/// Uniform MAC grid on [0, r_max] x [z_min, z_max].
///
/// Cell centers sit at r_i = (i+1/2) dr so no scalar sample touches the
/// axis; u^r faces sit at r = i dr with the i=0 face exactly on the axis.
struct GridSpec {
    int nr = 0;
    int nz = 0;
    double r_max = 0.0;
    double z_min = 0.0;
    double z_max = 0.0;

    GridSpec() = default;
    GridSpec(int nr_, int nz_, double r_max_, double z_min_, double z_max_);

    double dr() const { return r_max / nr; }
    double dz() const { return (z_max - z_min) / nz; }

    double rc(int i) const { return (i + 0.5) * dr(); }  // cell-center radius
    double rf(int i) const { return i * dr(); }          // face/node radius
    double zc(int j) const { return z_min + (j + 0.5) * dz(); }
    double zf(int j) const { return z_min + j * dz(); }

    /// Value-array shape for a given staggering.
    int rows(Stag s) const { return (s == Stag::RFace || s == Stag::Node) ? nr + 1 : nr; }
    int cols(Stag s) const { return (s == Stag::ZFace || s == Stag::Node) ? nz + 1 : nz; }

    bool operator==(const GridSpec& o) const {
        return nr == o.nr && nz == o.nz && r_max == o.r_max &&
               z_min == o.z_min && z_max == o.z_max;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    std::string describe() const;
};

/// Cell weights w_ij = r_i dr dz: volume per unit azimuthal angle, so that
/// sum(f^2 w) discretizes the integral of f^2 over r dr dz.
struct WeightedMeasure {
    explicit WeightedMeasure(const GridSpec& g);

    const GridSpec& grid() const { return grid_; }
    double cell(int i, int /*j*/) const { return rw_[i]; }
    double total() const { return total_; }

    /// Per-row weight r_i dr dz (independent of j).
    const ArrayXd& row_weights() const { return rw_; }

  private:
    GridSpec grid_;
    ArrayXd rw_;
    double total_ = 0.0;
};

/// Thrown when a field or operation violates a numeric precondition.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for invalid configuration / arguments.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace axns
