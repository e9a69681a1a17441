#include "axns/grid.hpp"

namespace axns {

const char* stag_name(Stag s) {
    switch (s) {
        case Stag::Center: return "center";
        case Stag::RFace: return "r-face";
        case Stag::ZFace: return "z-face";
        case Stag::Node: return "node";
    }
    return "?";
}

Stag stag_from_name(const std::string& name) {
    if (name == "center") return Stag::Center;
    if (name == "r-face") return Stag::RFace;
    if (name == "z-face") return Stag::ZFace;
    if (name == "node") return Stag::Node;
    throw ConfigError("unknown staggering tag '" + name + "'");
}

GridSpec::GridSpec(int nr_, int nz_, double r_max_, double z_min_, double z_max_)
    : nr(nr_), nz(nz_), r_max(r_max_), z_min(z_min_), z_max(z_max_) {
    if (nr < 4 || nz < 4)
        throw ConfigError("GridSpec: need nr >= 4 and nz >= 4, got nr=" +
                          std::to_string(nr) + " nz=" + std::to_string(nz));
    if (!(r_max > 0.0))
        throw ConfigError("GridSpec: r_max must be positive");
    if (!(z_min < z_max))
        throw ConfigError("GridSpec: need z_min < z_max");
}

std::string GridSpec::describe() const {
    return std::to_string(nr) + "x" + std::to_string(nz) + " grid, r in [0," +
           std::to_string(r_max) + "], z in [" + std::to_string(z_min) + "," +
           std::to_string(z_max) + "]";
}

WeightedMeasure::WeightedMeasure(const GridSpec& g) : grid_(g) {
    const double dr = g.dr(), dz = g.dz();
    rw_.resize(g.nr);
    for (int i = 0; i < g.nr; ++i) rw_[i] = g.rc(i) * dr * dz;
    // sum over i of r_i dr = r_max^2/2 exactly (midpoint rule on r)
    total_ = rw_.sum() * g.nz;
}

}  // namespace axns
