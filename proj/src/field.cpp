#include "axns/field.hpp"

#include <cmath>

namespace axns {

void ScalarFieldRZ::fill(const std::function<double(double, double)>& f) {
    for (int j = 0; j < v.cols(); ++j)
        for (int i = 0; i < v.rows(); ++i) v(i, j) = f(r(i), z(j));
}

void require_finite(const ScalarFieldRZ& f, const char* what) {
    if (f.v.allFinite()) return;
    for (int j = 0; j < f.v.cols(); ++j)
        for (int i = 0; i < f.v.rows(); ++i)
            if (!std::isfinite(f.v(i, j)))
                throw NumericalError(std::string(what) + ": non-finite value at (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     "), staggering " + stag_name(f.stag));
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (a != b)
        throw ConfigError(std::string(what) + ": grid mismatch (" + a.describe() +
                          " vs " + b.describe() + ")");
}

void VelocityFieldRZ::enforce_boundary_pins() {
    ur.row(0).setZero();
    ur.row(grid.nr).setZero();
    uz.col(0).setZero();
    uz.col(grid.nz).setZero();
}

void VelocityFieldRZ::fill(const std::function<double(double, double)>& fur,
                           const std::function<double(double, double)>& fuz) {
    for (int j = 0; j < grid.nz; ++j)
        for (int i = 0; i <= grid.nr; ++i) ur(i, j) = fur(grid.rf(i), grid.zc(j));
    for (int j = 0; j <= grid.nz; ++j)
        for (int i = 0; i < grid.nr; ++i) uz(i, j) = fuz(grid.rc(i), grid.zf(j));
    enforce_boundary_pins();
}

void require_finite(const VelocityFieldRZ& u, const char* what) {
    if (u.ur.allFinite() && u.uz.allFinite()) return;
    for (int j = 0; j < u.ur.cols(); ++j)
        for (int i = 0; i < u.ur.rows(); ++i)
            if (!std::isfinite(u.ur(i, j)))
                throw NumericalError(std::string(what) + ": non-finite u^r at face (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
    for (int j = 0; j < u.uz.cols(); ++j)
        for (int i = 0; i < u.uz.rows(); ++i)
            if (!std::isfinite(u.uz(i, j)))
                throw NumericalError(std::string(what) + ": non-finite u^z at face (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace axns
