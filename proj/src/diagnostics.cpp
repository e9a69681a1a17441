#include "axns/diagnostics.hpp"

#include "axns/fourier.hpp"
#include "axns/operators.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace axns {

const char* const kCsvHeader =
    "t,kinetic_energy,grad_u_l2,ur_over_r_l2,gamma_l2,gamma_linf,a_over_r_linf,"
    "div_linf,energy_residual,grad_u_linf,lipschitz_integral,low_freq_energy,"
    "rho_min,rho_max";

std::string csv_row(const DiagnosticsRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g",
                  r.t, r.kinetic_energy, r.grad_u_l2, r.ur_over_r_l2, r.gamma_l2,
                  r.gamma_linf, r.a_over_r_linf, r.div_linf, r.energy_residual,
                  r.grad_u_linf, r.lipschitz_integral, r.low_freq_energy, r.rho_min,
                  r.rho_max);
    return buf;
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("read_csv: empty file " + path);
    if (line != kCsvHeader)
        throw ConfigError("read_csv: unexpected header in " + path);
    std::vector<DiagnosticsRecord> out;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double v[14];
        char comma;
        for (int k = 0; k < 14; ++k) {
            if (!(ls >> v[k]))
                throw ConfigError("read_csv: parse error at row " + std::to_string(row));
            if (k < 13 && !(ls >> comma) )
                throw ConfigError("read_csv: parse error at row " + std::to_string(row));
        }
        DiagnosticsRecord r;
        r.t = v[0];
        r.kinetic_energy = v[1];
        r.grad_u_l2 = v[2];
        r.ur_over_r_l2 = v[3];
        r.gamma_l2 = v[4];
        r.gamma_linf = v[5];
        r.a_over_r_linf = v[6];
        r.div_linf = v[7];
        r.energy_residual = v[8];
        r.grad_u_linf = v[9];
        r.lipschitz_integral = v[10];
        r.low_freq_energy = v[11];
        r.rho_min = v[12];
        r.rho_max = v[13];
        r.ur_over_r_linf = std::numeric_limits<double>::quiet_NaN();
        out.push_back(r);
    }
    return out;
}

void DiagnosticsCollector::start(const FlowState& s0) {
    e0_ = kinetic_energy(s0.rho, s0.u);
    t_prev_ = s0.t;
    grad_sq_prev_ = grad_u_sq(s0.u);
    grad_linf_prev_ = grad_u_linf(s0.u);
    int_grad_sq_ = 0.0;
    int_grad_linf_ = 0.0;
    started_ = true;
}

void DiagnosticsCollector::on_step(const FlowState& s) {
    if (!started_) throw ConfigError("DiagnosticsCollector: on_step before start");
    const double dt = s.t - t_prev_;
    const double gsq = grad_u_sq(s.u);
    const double glinf = grad_u_linf(s.u);
    int_grad_sq_ += 0.5 * dt * (grad_sq_prev_ + gsq);
    int_grad_linf_ += 0.5 * dt * (grad_linf_prev_ + glinf);
    grad_sq_prev_ = gsq;
    grad_linf_prev_ = glinf;
    t_prev_ = s.t;
}

DiagnosticsRecord DiagnosticsCollector::sample(const FlowState& s) const {
    DiagnosticsRecord r;
    r.t = s.t;
    r.kinetic_energy = kinetic_energy(s.rho, s.u);
    r.grad_u_l2 = std::sqrt(grad_u_sq(s.u));
    r.ur_over_r_l2 = ur_over_r_l2(s.u);
    ScalarFieldRZ gamma = compute_gamma(vorticity(s.u));
    r.gamma_l2 = weighted_l2_norm(gamma);
    r.gamma_linf = linf_norm(gamma);
    r.a_over_r_linf = linf_norm(compute_a_over_r(s.rho));
    r.div_linf = linf_norm(divergence(s.u));
    r.energy_residual =
        (e0_ > 0.0) ? (r.kinetic_energy + int_grad_sq_ - e0_) / e0_ : 0.0;
    r.grad_u_linf = grad_u_linf(s.u);
    r.lipschitz_integral = int_grad_linf_;
    if (opt_.cart_n > 0)
        r.low_freq_energy =
            low_freq_energy(s.u, opt_.rho_upper, opt_.alpha, s.t, opt_.cart_n).low_freq;
    r.rho_min = s.rho.v.minCoeff();
    r.rho_max = s.rho.v.maxCoeff();
    r.ur_over_r_linf = ur_over_r_linf(s.u);
    return r;
}

std::map<std::string, double> DiagnosticsCollector::accumulators() const {
    return {{"e0", e0_},
            {"t_prev", t_prev_},
            {"grad_sq_prev", grad_sq_prev_},
            {"grad_linf_prev", grad_linf_prev_},
            {"int_grad_sq", int_grad_sq_},
            {"int_grad_linf", int_grad_linf_}};
}

void DiagnosticsCollector::restore(const std::map<std::string, double>& acc) {
    e0_ = acc.at("e0");
    t_prev_ = acc.at("t_prev");
    grad_sq_prev_ = acc.at("grad_sq_prev");
    grad_linf_prev_ = acc.at("grad_linf_prev");
    int_grad_sq_ = acc.at("int_grad_sq");
    int_grad_linf_ = acc.at("int_grad_linf");
    started_ = true;
}

std::vector<double> energy_residual(const std::vector<DiagnosticsRecord>& series) {
    if (series.empty()) throw ConfigError("energy_residual: empty series");
    const double e0 = series.front().kinetic_energy;
    std::vector<double> out;
    out.reserve(series.size());
    double integral = 0.0;
    for (size_t k = 0; k < series.size(); ++k) {
        if (k > 0) {
            const double dt = series[k].t - series[k - 1].t;
            integral += 0.5 * dt *
                        (series[k - 1].grad_u_l2 * series[k - 1].grad_u_l2 +
                         series[k].grad_u_l2 * series[k].grad_u_l2);
        }
        const double lhs = series[k].kinetic_energy + integral - e0;
        out.push_back(e0 > 0.0 ? lhs / e0 : lhs);
    }
    return out;
}

std::vector<double> lipschitz_integral(const std::vector<DiagnosticsRecord>& series) {
    std::vector<double> out;
    out.reserve(series.size());
    double acc = 0.0;
    for (size_t k = 0; k < series.size(); ++k) {
        if (k > 0)
            acc += 0.5 * (series[k].t - series[k - 1].t) *
                   (series[k - 1].grad_u_linf + series[k].grad_u_linf);
        out.push_back(acc);
    }
    return out;
}

NormEquivalence norm_equivalence_check(const VelocityFieldRZ& u) {
    NormEquivalence res;
    const double om2 = weighted_l2_norm(vorticity(u));
    const double gr2 = std::sqrt(grad_u_sq(u));
    if (om2 == 0.0 && gr2 == 0.0) {
        res.degenerate = true;
        res.ratio_q2 = std::numeric_limits<double>::quiet_NaN();
        res.ratio_q4 = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.ratio_q2 = om2 / gr2;

    // q = 4, reported only: |grad u| assembled at cell centers
    const GridSpec& g = u.grid;
    GradEntries e = gradient_entries(u);
    ScalarFieldRZ om = vorticity(u);
    double num = 0.0, den = 0.0;
    const double dr = g.dr(), dz = g.dz();
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double durdz =
                0.25 * (e.dur_dz(i, j) + e.dur_dz(i + 1, j) + e.dur_dz(i, j + 1) +
                        e.dur_dz(i + 1, j + 1));
            const double duzdr =
                0.25 * (e.duz_dr(i, j) + e.duz_dr(i + 1, j) + e.duz_dr(i, j + 1) +
                        e.duz_dr(i + 1, j + 1));
            const double uror = 0.5 * (e.ur_over_r(i, j) + e.ur_over_r(i + 1, j));
            const double g2 = e.dur_dr(i, j) * e.dur_dr(i, j) + durdz * durdz +
                              duzdr * duzdr + e.duz_dz(i, j) * e.duz_dz(i, j) +
                              uror * uror;
            const double w = g.rc(i) * dr * dz;
            num += om(i, j) * om(i, j) * om(i, j) * om(i, j) * w;
            den += g2 * g2 * w;
        }
    res.ratio_q4 = (den > 0.0) ? std::pow(num / den, 0.25) : 0.0;
    return res;
}

double beta_exponent(double p) { return 0.75 * (2.0 / p - 1.0); }

double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y,
                     double w0, double w1, int* points_used) {
    if (t.size() != y.size()) throw ConfigError("fit_log_slope: length mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t k = 0; k < t.size(); ++k) {
        const double tb = std::sqrt(1.0 + t[k] * t[k]);
        if (tb < w0 || tb > w1 || !(y[k] > 0.0)) continue;
        const double x = std::log(tb);
        const double ly = std::log(y[k]);
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
        ++n;
    }
    if (points_used) *points_used = n;
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / denom;
}

DecayFitResult decay_fit(const std::vector<DiagnosticsRecord>& series, double p,
                         double w0, double w1) {
    if (!(p >= 1.0 && p < 2.0)) throw ConfigError("decay_fit: p must lie in [1,2)");
    DecayFitResult res;
    std::vector<double> t, usq, gsq;
    double tb_lo = std::numeric_limits<double>::infinity(), tb_hi = 0.0;
    for (const auto& r : series) {
        t.push_back(r.t);
        usq.push_back(2.0 * r.kinetic_energy);  // == ||u||^2 for rho == 1
        gsq.push_back(r.grad_u_l2 * r.grad_u_l2);
        const double tb = std::sqrt(1.0 + r.t * r.t);
        if (tb >= w0 && tb <= w1) {
            tb_lo = std::min(tb_lo, tb);
            tb_hi = std::max(tb_hi, tb);
        }
    }
    res.window_covers_decade = (tb_hi >= 10.0 * tb_lo);
    int n1 = 0, n2 = 0;
    res.slope_u_sq = fit_log_slope(t, usq, w0, w1, &n1);
    res.slope_grad_sq = fit_log_slope(t, gsq, w0, w1, &n2);
    res.points_used = std::min(n1, n2);
    const double b = beta_exponent(p);
    res.ref_u_sq = -2.0 * b;
    res.ref_grad_sq = -1.0 - 2.0 * b;
    return res;
}

InequalityProbeResult probe_inequalities(const GridSpec& g,
                                         const std::vector<double>& a_sweep,
                                         const std::vector<double>& b_sweep) {
    InequalityProbeResult res;
    if (a_sweep.empty() || b_sweep.empty()) {
        res.skipped = true;
        return res;
    }
    const double dr = g.dr(), dz = g.dz();
    auto phi = [](double r) {
        if (r <= 0.5) return 1.0;
        if (r >= 1.0) return 0.0;
        const double c = std::cos(0.5 * M_PI * (2.0 * r - 1.0));
        return c * c;
    };
    for (double a : a_sweep)
        for (double b : b_sweep) {
            double lhs9 = 0.0;                 // f^4 phi r^3 dr dz
            double f_w2 = 0.0, fr_w2 = 0.0, fz_w2 = 0.0;  // r dr dz norms, squared
            double f_p2 = 0.0, f_p4 = 0.0, grad_p2 = 0.0; // plain dr dz
            double lhs18 = 0.0;                // f^3 r^{-1/2} dr dz
            for (int j = 0; j < g.nz; ++j)
                for (int i = 0; i < g.nr; ++i) {
                    const double r = g.rc(i), z = g.zc(j);
                    const double f = std::exp(-a * r * r - b * z * z);
                    const double fr = -2.0 * a * r * f;
                    const double fz = -2.0 * b * z * f;
                    const double da = dr * dz;
                    lhs9 += f * f * f * f * phi(r) * r * r * r * da;
                    f_w2 += f * f * r * da;
                    fr_w2 += fr * fr * r * da;
                    fz_w2 += fz * fz * r * da;
                    f_p2 += f * f * da;
                    f_p4 += f * f * f * f * da;
                    grad_p2 += (fr * fr + fz * fz) * da;
                    lhs18 += f * f * f / std::sqrt(r) * da;
                }
            const double fw = std::sqrt(f_w2);
            const double rhs9 = f_w2 * (fw + std::sqrt(fr_w2)) * std::sqrt(fz_w2);
            if (rhs9 > 0.0)
                res.weighted_l4_ratio_max = std::max(res.weighted_l4_ratio_max, lhs9 / rhs9);
            const double rhs10 =
                std::sqrt(std::sqrt(f_p2)) * std::sqrt(std::sqrt(grad_p2));
            if (rhs10 > 0.0)
                res.ladyzhenskaya_ratio_max =
                    std::max(res.ladyzhenskaya_ratio_max, std::pow(f_p4, 0.25) / rhs10);
            const double rhs18 = std::sqrt(fr_w2 + fz_w2);
            if (rhs18 > 0.0)
                res.sobolev_hardy_ratio_max =
                    std::max(res.sobolev_hardy_ratio_max, std::cbrt(lhs18) / rhs18);
        }
    return res;
}

G0Report compute_g0(const InitReport& init) {
    G0Report rep;
    rep.u0_l2 = init.u_l2;
    rep.u0_h1_sq = init.u_l2 * init.u_l2 + init.grad_u_l2 * init.grad_u_l2;
    rep.ur_over_r_l2 = init.ur_over_r_l2;
    rep.gamma0_l2 = init.gamma0_l2;
    const double u2 = init.u_l2 * init.u_l2;
    rep.g0 = std::exp(u2 * (1.0 + u2 * u2 * u2)) *
             (rep.u0_h1_sq + init.ur_over_r_l2 * init.ur_over_r_l2 +
              2.0 * init.gamma0_l2 * init.gamma0_l2);
    rep.t1_info = std::numeric_limits<double>::quiet_NaN();
    if (init.gamma0_l2 > 0.0 && init.a_over_r_linf > 0.0 && rep.g0 > 0.0) {
        const double arg = init.gamma0_l2 * init.gamma0_l2 /
                           (2.0 * init.a_over_r_linf * init.a_over_r_linf * rep.g0);
        if (arg > 1.0)
            rep.t1_info =
                std::pow(std::log(arg) / (2.0 * init.gamma0_l2), 4.0 / 3.0);
    }
    return rep;
}

}  // namespace axns
