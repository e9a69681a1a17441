/// @file state.hpp
/// @brief Initial-data families and the derived scalar fields a/r and Gamma.

#pragma once

#include "axns/elliptic.hpp"
#include "axns/field.hpp"

#include <optional>
#include <string>

namespace axns {

/// a/r = (1/rho - 1)/r at cell centers; finite because r >= dr/2.
/// Rejects rho <= 0 anywhere.
ScalarFieldRZ compute_a_over_r(const ScalarFieldRZ& rho);

/// Gamma = omega / r, pointwise at the staggering of omega.
ScalarFieldRZ compute_gamma(const ScalarFieldRZ& omega);

enum class InitFamily { VortexRing, ShearPuff, CustomFromFile };
enum class DensityFamily { Uniform, OffAxisBlob };

InitFamily init_family_from_name(const std::string& s);
DensityFamily density_family_from_name(const std::string& s);

/// Scenario description. The velocity is generated from a prescribed smooth
/// axis-regular Gamma_0 through the stream function, so u_0 is discretely
/// divergence-free and Gamma_0 is in L2 by construction. Density inhomogeneity
/// is an off-axis Gaussian blob in a = 1/rho - 1 whose amplitude epsilon
/// controls ||a_0/r||_inf.
struct InitialData {
    InitFamily family = InitFamily::VortexRing;
    double amplitude = 1.0;  // A
    double r0 = 1.0;
    double sigma = 0.25;
    DensityFamily density_family = DensityFamily::Uniform;
    double epsilon = 0.0;
    double blob_r = 1.0;
    double blob_z = 0.0;
    double blob_width = 0.25;
    std::string file_prefix;  // custom-from-file: <prefix>.rho/.ur/.uz[/.pi]

    /// Closed-form Gamma_0 for the analytic families.
    double gamma0(double r, double z) const;
    /// Closed-form a_0 for the blob density family (0 for uniform).
    double a0(double r, double z) const;
};

struct InitReport {
    double u_l2 = 0.0;
    double grad_u_l2 = 0.0;
    double ur_over_r_l2 = 0.0;
    double gamma0_l2 = 0.0;
    double a_over_r_linf = 0.0;
    LinearSolveReport stream;
};

/// Build the t=0 FlowState. Throws ConfigError when the data is inconsistent
/// with the grid (support reaching the boundary, blob overlapping the axis,
/// custom fields that are not divergence-free).
FlowState make_initial_data(const InitialData& spec, const GridSpec& grid,
                            double solver_tol = 1e-12, InitReport* report = nullptr);

}  // namespace axns
