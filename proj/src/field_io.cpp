#include "axns/field_io.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace axns {

namespace {

std::string real17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string hexfloat(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", x);
    return buf;
}

double parse_hexfloat(const std::string& s) {
    return std::strtod(s.c_str(), nullptr);
}

}  // namespace

void write_field(const std::filesystem::path& path, const ScalarFieldRZ& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_field: cannot open " + path.string());
    const GridSpec& g = f.grid;
    out << g.nr << ' ' << g.nz << ' ' << real17(g.r_max) << ' ' << real17(g.z_min)
        << ' ' << real17(g.z_max) << ' ' << stag_name(f.stag) << '\n';
    // row-major: r index outer, z inner
    for (int i = 0; i < f.v.rows(); ++i)
        for (int j = 0; j < f.v.cols(); ++j) {
            const double x = f.v(i, j);
            out.write(reinterpret_cast<const char*>(&x), sizeof(double));
        }
    if (!out) throw ConfigError("write_field: write failed for " + path.string());
}

ScalarFieldRZ read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_field: cannot open " + path.string());
    std::string header;
    if (!std::getline(in, header))
        throw ConfigError("read_field: missing header in " + path.string());
    std::istringstream hs(header);
    int nr, nz;
    double r_max, z_min, z_max;
    std::string stag;
    if (!(hs >> nr >> nz >> r_max >> z_min >> z_max >> stag))
        throw ConfigError("read_field: malformed header '" + header + "' in " +
                          path.string());
    GridSpec g(nr, nz, r_max, z_min, z_max);
    ScalarFieldRZ f(g, stag_from_name(stag));
    for (int i = 0; i < f.v.rows(); ++i)
        for (int j = 0; j < f.v.cols(); ++j) {
            double x;
            in.read(reinterpret_cast<char*>(&x), sizeof(double));
            if (!in)
                throw ConfigError("read_field: truncated data in " + path.string());
            f.v(i, j) = x;
        }
    return f;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_checkpoint(const std::filesystem::path& dir, const FlowState& s,
                      const CheckpointMeta& meta) {
    std::filesystem::create_directories(dir);
    write_field(dir / "rho.field", s.rho);
    write_field(dir / "pi.field", s.pi);
    ScalarFieldRZ ur(s.u.grid, Stag::RFace), uz(s.u.grid, Stag::ZFace);
    ur.v = s.u.ur;
    uz.v = s.u.uz;
    write_field(dir / "ur.field", ur);
    write_field(dir / "uz.field", uz);

    nlohmann::json j;
    j["format"] = 1;
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016" PRIx64, meta.config_hash);
    j["config_hash"] = hashbuf;
    j["step"] = meta.step;
    j["t"] = real17(meta.t);
    j["t_hex"] = hexfloat(meta.t);
    nlohmann::json acc = nlohmann::json::object();
    for (const auto& [k, v] : meta.accumulators) acc[k] = hexfloat(v);
    j["accumulators"] = acc;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << '\n';
    if (!out) throw ConfigError("write_checkpoint: manifest write failed in " + dir.string());
}

CheckpointMeta read_checkpoint(const std::filesystem::path& dir, FlowState& s) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw ConfigError("read_checkpoint: cannot open " + (dir / "manifest.json").string());
    nlohmann::json j;
    in >> j;
    CheckpointMeta meta;
    meta.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    meta.step = j.at("step").get<long>();
    meta.t = parse_hexfloat(j.at("t_hex").get<std::string>());
    for (const auto& [k, v] : j.at("accumulators").items())
        meta.accumulators[k] = parse_hexfloat(v.get<std::string>());

    ScalarFieldRZ rho = read_field(dir / "rho.field");
    ScalarFieldRZ pi = read_field(dir / "pi.field");
    ScalarFieldRZ ur = read_field(dir / "ur.field");
    ScalarFieldRZ uz = read_field(dir / "uz.field");
    FlowState fresh(rho.grid);
    fresh.t = meta.t;
    fresh.rho = std::move(rho);
    fresh.pi = std::move(pi);
    fresh.u.ur = ur.v;
    fresh.u.uz = uz.v;
    s = std::move(fresh);
    return meta;
}

}  // namespace axns
