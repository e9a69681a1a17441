#include "axns/config.hpp"

#include "axns/field_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace axns {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_real(const std::string& v, const std::string& key, int line) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' expects a real, got '" + v + "'");
    }
}

long to_int(const std::string& v, const std::string& key, int line) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' expects an integer, got '" + v + "'");
    }
}

std::pair<double, double> to_pair(const std::string& v, const std::string& key, int line) {
    const auto comma = v.find(',');
    if (comma == std::string::npos)
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' expects 'a,b', got '" + v + "'");
    return {to_real(trim(v.substr(0, comma)), key, line),
            to_real(trim(v.substr(comma + 1)), key, line)};
}

std::string real17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

SimConfig SimConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path.string());
}

SimConfig SimConfig::parse_text(const std::string& text, const std::string& origin) {
    SimConfig c;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + " line " + std::to_string(line) +
                              ": expected 'key = value', got '" + raw + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));

        if (key == "grid.nr") c.nr = static_cast<int>(to_int(val, key, line));
        else if (key == "grid.nz") c.nz = static_cast<int>(to_int(val, key, line));
        else if (key == "grid.r_max") c.r_max = to_real(val, key, line);
        else if (key == "grid.z_min") c.z_min = to_real(val, key, line);
        else if (key == "grid.z_max") c.z_max = to_real(val, key, line);
        else if (key == "time.cfl") c.cfl = to_real(val, key, line);
        else if (key == "time.t_end") c.t_end = to_real(val, key, line);
        else if (key == "time.dt_max") c.dt_max = to_real(val, key, line);
        else if (key == "time.sample_every") c.sample_every = static_cast<int>(to_int(val, key, line));
        else if (key == "time.order") c.order = static_cast<int>(to_int(val, key, line));
        else if (key == "fluid.m") c.m = to_real(val, key, line);
        else if (key == "fluid.M") c.M = to_real(val, key, line);
        else if (key == "init.family") c.init.family = init_family_from_name(val);
        else if (key == "init.A") c.init.amplitude = to_real(val, key, line);
        else if (key == "init.r0") c.init.r0 = to_real(val, key, line);
        else if (key == "init.sigma") c.init.sigma = to_real(val, key, line);
        else if (key == "init.density_family")
            c.init.density_family = density_family_from_name(val);
        else if (key == "init.epsilon") c.init.epsilon = to_real(val, key, line);
        else if (key == "init.blob_center") {
            const auto [r, z] = to_pair(val, key, line);
            c.init.blob_r = r;
            c.init.blob_z = z;
        } else if (key == "init.blob_width") c.init.blob_width = to_real(val, key, line);
        else if (key == "init.p_target") c.p_target = to_real(val, key, line);
        else if (key == "init.file") c.init.file_prefix = val;
        else if (key == "solver.tol") c.tol = to_real(val, key, line);
        else if (key == "solver.max_iter") c.max_iter = static_cast<int>(to_int(val, key, line));
        else if (key == "solver.diffusion_mode") {
            if (val == "explicit") c.diffusion = DiffusionMode::Explicit;
            else if (val == "implicit") c.diffusion = DiffusionMode::Implicit;
            else
                throw ConfigError(origin + " line " + std::to_string(line) +
                                  ": solver.diffusion_mode must be explicit|implicit");
        } else if (key == "solver.limiter") {
            if (val == "upwind") c.limiter = Limiter::Upwind;
            else if (val == "fct_minmod") c.limiter = Limiter::FctMinmod;
            else
                throw ConfigError(origin + " line " + std::to_string(line) +
                                  ": solver.limiter must be upwind|fct_minmod");
        } else if (key == "diag.cart_n") c.cart_n = static_cast<int>(to_int(val, key, line));
        else if (key == "diag.alpha") c.alpha = to_real(val, key, line);
        else if (key == "diag.fit_window") {
            const auto [a, b] = to_pair(val, key, line);
            c.fit_w0 = a;
            c.fit_w1 = b;
        } else if (key == "out.dir") c.out_dir = val;
        else if (key == "out.checkpoint_every") c.checkpoint_every = to_int(val, key, line);
        else
            throw ConfigError(origin + " line " + std::to_string(line) +
                              ": unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

void SimConfig::validate() const {
    grid();  // throws on bad geometry
    if (!(m > 0.0 && m <= 1.0 && M >= 1.0))
        throw ConfigError("config: need 0 < fluid.m <= 1 <= fluid.M");
    if (!(p_target >= 1.0 && p_target < 2.0))
        throw ConfigError("config: init.p_target must lie in [1,2)");
    if (!(tol > 0.0)) throw ConfigError("config: solver.tol must be positive");
    if (!(cfl > 0.0)) throw ConfigError("config: time.cfl must be positive");
    if (!(dt_max > 0.0)) throw ConfigError("config: time.dt_max must be positive");
    if (t_end < 0.0) throw ConfigError("config: time.t_end must be nonnegative");
    if (sample_every < 1) throw ConfigError("config: time.sample_every must be >= 1");
    if (order != 1 && order != 2) throw ConfigError("config: time.order must be 1 or 2");
    if (max_iter < 1) throw ConfigError("config: solver.max_iter must be >= 1");
    if (cart_n < 0) throw ConfigError("config: diag.cart_n must be >= 0");
    if (checkpoint_every < 0) throw ConfigError("config: out.checkpoint_every must be >= 0");
}

StepControls SimConfig::step_controls() const {
    StepControls sc;
    sc.cfl = cfl;
    sc.dt_max = dt_max;
    sc.tol = tol;
    sc.max_iter = max_iter;
    sc.diffusion = diffusion;
    sc.time_order = order;
    sc.limiter = limiter;
    sc.rho_min = m;
    sc.rho_max = M;
    return sc;
}

std::string SimConfig::canonical() const {
    std::ostringstream o;
    o << "grid.nr = " << nr << "\ngrid.nz = " << nz
      << "\ngrid.r_max = " << real17(r_max) << "\ngrid.z_min = " << real17(z_min)
      << "\ngrid.z_max = " << real17(z_max) << "\ntime.cfl = " << real17(cfl)
      << "\ntime.t_end = " << real17(t_end) << "\ntime.dt_max = " << real17(dt_max)
      << "\ntime.sample_every = " << sample_every << "\ntime.order = " << order
      << "\nfluid.m = " << real17(m) << "\nfluid.M = " << real17(M);
    o << "\ninit.family = ";
    switch (init.family) {
        case InitFamily::VortexRing: o << "vortex_ring"; break;
        case InitFamily::ShearPuff: o << "shear_puff"; break;
        case InitFamily::CustomFromFile: o << "custom-from-file"; break;
    }
    o << "\ninit.A = " << real17(init.amplitude) << "\ninit.r0 = " << real17(init.r0)
      << "\ninit.sigma = " << real17(init.sigma) << "\ninit.density_family = "
      << (init.density_family == DensityFamily::Uniform ? "uniform" : "off-axis-blob")
      << "\ninit.epsilon = " << real17(init.epsilon) << "\ninit.blob_center = "
      << real17(init.blob_r) << "," << real17(init.blob_z)
      << "\ninit.blob_width = " << real17(init.blob_width)
      << "\ninit.p_target = " << real17(p_target) << "\ninit.file = " << init.file_prefix
      << "\nsolver.tol = " << real17(tol) << "\nsolver.max_iter = " << max_iter
      << "\nsolver.diffusion_mode = "
      << (diffusion == DiffusionMode::Implicit ? "implicit" : "explicit")
      << "\nsolver.limiter = "
      << (limiter == Limiter::FctMinmod ? "fct_minmod" : "upwind")
      << "\ndiag.cart_n = " << cart_n << "\ndiag.alpha = " << real17(alpha)
      << "\ndiag.fit_window = " << real17(fit_window_lo()) << ","
      << real17(fit_window_hi()) << "\nout.checkpoint_every = " << checkpoint_every
      << "\n";
    return o.str();
}

std::uint64_t SimConfig::hash() const { return fnv1a64(canonical()); }

}  // namespace axns
