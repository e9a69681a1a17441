/// @file operators.hpp
/// @brief Discrete differential operators in cylindrical coordinates and the
///        r-weighted inner products / norms.
///
/// Conventions: scalars live at cell centers r_i=(i+1/2)dr; u^r at faces
/// r=i*dr (axis face pinned to 0); u^z at z-faces. Outer boundaries carry
/// homogeneous Dirichlet velocity (odd ghost reflection for tangential
/// components) and homogeneous Neumann scalars (even reflection). All
/// operators are pure: inputs are read-only, a fresh output is produced.

#pragma once

#include "axns/field.hpp"

namespace axns {

// ---------------------------------------------------------------------------
// weighted integrals
// ---------------------------------------------------------------------------

/// (sum f^2 w)^(1/2) with w = r dr dz; boundary samples of staggered fields
/// get half weights so constants integrate exactly on every staggering.
double weighted_l2_norm(const ScalarFieldRZ& f);

/// sum f g w over matching staggerings.
double weighted_inner(const ScalarFieldRZ& f, const ScalarFieldRZ& g);

/// sum f w (used for pressure gauge and compatibility checks).
double weighted_sum(const ScalarFieldRZ& f);

double linf_norm(const ScalarFieldRZ& f);

// ---------------------------------------------------------------------------
// first-order operators
// ---------------------------------------------------------------------------

/// Cell-centered divergence (1/r) d(r u^r)/dr + d(u^z)/dz; exact zero for
/// discrete-curl fields.
ScalarFieldRZ divergence(const VelocityFieldRZ& u);

/// omega = d(u^r)/dz - d(u^z)/dr at grid nodes; exactly zero on the axis row.
ScalarFieldRZ vorticity_nodes(const VelocityFieldRZ& u);

/// Cell-centered vorticity (average of the four surrounding nodes).
ScalarFieldRZ vorticity(const VelocityFieldRZ& u);

/// Center-to-face gradients; boundary faces are left at zero (no normal
/// pressure correction through pinned faces).
void gradient(const ScalarFieldRZ& f, Array2D& gr, Array2D& gz);

// ---------------------------------------------------------------------------
// viscous operators (unit viscosity)
// ---------------------------------------------------------------------------

/// (1/r) d(r d u^r /dr)/dr + d2(u^r)/dz2 - u^r/r^2 on interior r-faces.
/// Rejects a nonzero axis-face value. Boundary rows of the result are zero.
ScalarFieldRZ apply_laplacian_r(const ScalarFieldRZ& f);

/// (1/r) d(r d u^z /dr)/dr + d2(u^z)/dz2 on interior z-faces; the axis needs
/// no ghost because the r=0 face flux carries a zero metric factor.
ScalarFieldRZ apply_laplacian_z(const ScalarFieldRZ& f);

ScalarFieldRZ as_rface_field(const GridSpec& g, const Array2D& v);
ScalarFieldRZ as_zface_field(const GridSpec& g, const Array2D& v);

// ---------------------------------------------------------------------------
// velocity functionals
// ---------------------------------------------------------------------------

/// The five entries of the 3-D gradient of an axisymmetric swirl-free field,
/// each at its natural staggering; used for the L-inf norms.
struct GradEntries {
    Array2D dur_dr;     // centers
    Array2D dur_dz;     // (r-face, z-node)
    Array2D duz_dr;     // (r-node, z-face)
    Array2D duz_dz;     // centers
    Array2D ur_over_r;  // r-faces, axis face zeroed
};
GradEntries gradient_entries(const VelocityFieldRZ& u);

/// ||grad u||^2 in L2(r dr dz), including the angular (u^r/r)^2 entry,
/// evaluated as -<u, L u>_w through the viscous stencils so it is exactly
/// the scheme's dissipation functional.
double grad_u_sq(const VelocityFieldRZ& u);

double grad_u_linf(const VelocityFieldRZ& u);

/// max over interior r-faces of |u^r| / r.
double ur_over_r_linf(const VelocityFieldRZ& u);

/// ||u^r/r||_{L2(r dr dz)} over interior r-faces.
double ur_over_r_l2(const VelocityFieldRZ& u);

/// (1/2) sum rho_face u^2 w over interior faces (rho averaged to faces).
double kinetic_energy(const ScalarFieldRZ& rho, const VelocityFieldRZ& u);

/// ||u||^2 in L2(r dr dz) over interior faces (rho == 1 case of the above,
/// without the 1/2).
double velocity_l2_sq(const VelocityFieldRZ& u);

/// Arithmetic average of a cell-centered field to interior faces.
Array2D center_to_rfaces(const ScalarFieldRZ& c);
Array2D center_to_zfaces(const ScalarFieldRZ& c);

}  // namespace axns
