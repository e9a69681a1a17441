/// @file config.hpp
/// @brief Flat key = value scenario configuration with dotted keys.
///        Unknown keys are hard errors so misspelled physics parameters
///        cannot silently fall back to defaults.

#pragma once

#include "axns/momentum.hpp"
#include "axns/state.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace axns {

struct SimConfig {
    // grid.*
    int nr = 64;
    int nz = 128;
    double r_max = 4.0;
    double z_min = -4.0;
    double z_max = 4.0;
    // time.*
    double cfl = 0.4;
    double t_end = 1.0;
    double dt_max = 0.05;
    int sample_every = 1;
    int order = 1;
    // fluid.*
    double m = 1.0;
    double M = 1.0;
    // init.*
    InitialData init;
    double p_target = 1.0;
    // solver.*
    double tol = 1e-10;
    int max_iter = 2000;
    DiffusionMode diffusion = DiffusionMode::Implicit;
    Limiter limiter = Limiter::FctMinmod;
    // diag.*
    int cart_n = 0;
    double alpha = 2.0;
    double fit_w0 = -1.0;  // <0: default window [t_end/10, t_end]
    double fit_w1 = -1.0;
    // out.*
    std::string out_dir = "out";
    long checkpoint_every = 0;  // steps; 0 = final checkpoint only

    static SimConfig parse_file(const std::filesystem::path& path);
    static SimConfig parse_text(const std::string& text, const std::string& origin);

    void validate() const;
    GridSpec grid() const { return GridSpec(nr, nz, r_max, z_min, z_max); }
    StepControls step_controls() const;
    /// Canonical serialization (fixed key order, 17 significant digits).
    std::string canonical() const;
    std::uint64_t hash() const;
    double fit_window_lo() const { return fit_w0 >= 0.0 ? fit_w0 : t_end / 10.0; }
    double fit_window_hi() const { return fit_w1 >= 0.0 ? fit_w1 : t_end; }
};

}  // namespace axns
