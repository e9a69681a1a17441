/// @file diagnostics.hpp
/// @brief Monitored quantities: energy bookkeeping, norm records and CSV
///        output, decay fitting, the G0 functional, and the inequality probes.

#pragma once

#include "axns/field.hpp"
#include "axns/state.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace axns {

struct DiagnosticsRecord {
    double t = 0.0;
    double kinetic_energy = 0.0;   // (1/2) || sqrt(rho) u ||^2
    double grad_u_l2 = 0.0;        // includes the angular u^r/r entry
    double ur_over_r_l2 = 0.0;
    double gamma_l2 = 0.0;
    double gamma_linf = 0.0;
    double a_over_r_linf = 0.0;
    double div_linf = 0.0;
    double energy_residual = 0.0;  // relative to the initial energy
    double grad_u_linf = 0.0;
    double lipschitz_integral = 0.0;
    double low_freq_energy = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    // in memory only (not a CSV column): needed by the a/r bound audit
    double ur_over_r_linf = 0.0;
};

/// The pinned CSV column set, in order.
extern const char* const kCsvHeader;

std::string csv_row(const DiagnosticsRecord& r);
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

struct CollectorOptions {
    int cart_n = 0;      // 0 disables the spectral low-frequency column
    double alpha = 2.0;  // ball parameter, must exceed 2 beta(p)
    double rho_upper = 1.0;
};

/// Accumulates the running time integrals (dissipation, Lipschitz norm) at
/// every step and assembles full records at sample times. The accumulator
/// map round-trips through checkpoints bit-exactly.
class DiagnosticsCollector {
  public:
    explicit DiagnosticsCollector(const CollectorOptions& opt) : opt_(opt) {}

    void start(const FlowState& s0);
    void on_step(const FlowState& s);
    DiagnosticsRecord sample(const FlowState& s) const;

    std::map<std::string, double> accumulators() const;
    void restore(const std::map<std::string, double>& acc);

  private:
    CollectorOptions opt_;
    bool started_ = false;
    double e0_ = 0.0;
    double t_prev_ = 0.0;
    double grad_sq_prev_ = 0.0;
    double grad_linf_prev_ = 0.0;
    double int_grad_sq_ = 0.0;
    double int_grad_linf_ = 0.0;
};

/// Residual of the energy equality (lhs(t) - lhs(0), relative to the initial
/// energy), re-integrating ||grad u||^2 from the sampled rows by trapezoid.
std::vector<double> energy_residual(const std::vector<DiagnosticsRecord>& series);

/// Running trapezoid integral of ||grad u||_inf over the sampled series.
std::vector<double> lipschitz_integral(const std::vector<DiagnosticsRecord>& series);

struct NormEquivalence {
    double ratio_q2 = 0.0;  // ||omega||_L2 / ||grad u||_L2, 1 + O(h^2)
    double ratio_q4 = 0.0;  // reported only, no asserted value
    bool degenerate = false;  // 0/0 sentinel for the zero field
};
NormEquivalence norm_equivalence_check(const VelocityFieldRZ& u);

double beta_exponent(double p);  // 3/4 (2/p - 1)

struct DecayFitResult {
    double slope_u_sq = 0.0;
    double slope_grad_sq = 0.0;
    double ref_u_sq = 0.0;    // -2 beta(p)
    double ref_grad_sq = 0.0; // -1 - 2 beta(p)
    int points_used = 0;
    bool window_covers_decade = false;
};

/// Least-squares slope of log y against log <t> over the window, skipping
/// non-positive samples.
double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y,
                     double w0, double w1, int* points_used = nullptr);

DecayFitResult decay_fit(const std::vector<DiagnosticsRecord>& series, double p,
                         double w0, double w1);

struct InequalityProbeResult {
    double weighted_l4_ratio_max = 0.0;   // f^4 phi r^3 bound
    double ladyzhenskaya_ratio_max = 0.0; // 2-D L4 interpolation
    double sobolev_hardy_ratio_max = 0.0; // cubic / r^(3/2) instance
    bool skipped = false;
};

/// Max LHS/RHS over the anisotropic Gaussian family exp(-a r^2 - b z^2),
/// both sides by midpoint quadrature (derivatives in closed form).
InequalityProbeResult probe_inequalities(const GridSpec& g,
                                         const std::vector<double>& a_sweep,
                                         const std::vector<double>& b_sweep);

struct G0Report {
    double g0 = 0.0;
    double u0_l2 = 0.0;
    double u0_h1_sq = 0.0;
    double ur_over_r_l2 = 0.0;
    double gamma0_l2 = 0.0;
    double t1_info = 0.0;  // informational only (C = 1 convention); NaN if undefined
};

/// The compatibility functional with normalization C = 1.
G0Report compute_g0(const InitReport& init);

}  // namespace axns
