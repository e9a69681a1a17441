/// @file field.hpp
/// @brief Field containers: scalar fields at a declared staggering, MAC
///        velocity, and the full simulation state.

#pragma once

#include "axns/grid.hpp"

#include <functional>
#include <utility>

namespace axns {

/// Scalar samples on a declared staggering of the grid.
struct ScalarFieldRZ {
    GridSpec grid;
    Stag stag = Stag::Center;
    Array2D v;  // rows(stag) x cols(stag)

    ScalarFieldRZ() = default;
    ScalarFieldRZ(const GridSpec& g, Stag s)
        : grid(g), stag(s), v(Array2D::Zero(g.rows(s), g.cols(s))) {}

    double& operator()(int i, int j) { return v(i, j); }
    double operator()(int i, int j) const { return v(i, j); }

    /// r coordinate of sample (i, *) for this staggering.
    double r(int i) const {
        return (stag == Stag::RFace || stag == Stag::Node) ? grid.rf(i) : grid.rc(i);
    }
    /// z coordinate of sample (*, j).
    double z(int j) const {
        return (stag == Stag::ZFace || stag == Stag::Node) ? grid.zf(j) : grid.zc(j);
    }

    /// Fill from f(r, z) at the sample points.
    void fill(const std::function<double(double, double)>& f);
};

/// Throws NumericalError naming the first non-finite sample.
void require_finite(const ScalarFieldRZ& f, const char* what);

/// Throws ConfigError unless both fields share a grid.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

/// MAC velocity: u^r on r-faces ((nr+1) x nz), u^z on z-faces (nr x (nz+1)).
/// The axis face u^r(0,:) is pinned to zero, as are all outer-boundary
/// normal components.
struct VelocityFieldRZ {
    GridSpec grid;
    Array2D ur;
    Array2D uz;

    VelocityFieldRZ() = default;
    explicit VelocityFieldRZ(const GridSpec& g)
        : grid(g),
          ur(Array2D::Zero(g.nr + 1, g.nz)),
          uz(Array2D::Zero(g.nr, g.nz + 1)) {}

    /// Zero the axis face and all outer-boundary normal faces.
    void enforce_boundary_pins();

    /// Fill from closed forms and pin the boundary faces.
    void fill(const std::function<double(double, double)>& fur,
              const std::function<double(double, double)>& fuz);

    double max_abs_ur() const { return ur.abs().maxCoeff(); }
    double max_abs_uz() const { return uz.abs().maxCoeff(); }
};

void require_finite(const VelocityFieldRZ& u, const char* what);

/// Complete simulation state advanced by the time stepper.
struct FlowState {
    double t = 0.0;
    ScalarFieldRZ rho;  // center
    VelocityFieldRZ u;
    ScalarFieldRZ pi;   // center, pressure

    FlowState() = default;
    explicit FlowState(const GridSpec& g)
        : rho(g, Stag::Center), u(g), pi(g, Stag::Center) {
        rho.v.setOnes();
    }
};

}  // namespace axns
