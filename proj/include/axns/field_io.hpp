/// @file field_io.hpp
/// @brief Grid-dump file format and bit-exact checkpointing.
///
/// A field file is one ASCII header line
///     nr nz r_max z_min z_max staggering
/// (reals printed with 17 significant digits) followed by the samples as
/// raw little-endian doubles in row-major order (r index outer, z inner).
/// Round trips are bit-exact.

#pragma once

#include "axns/field.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace axns {

void write_field(const std::filesystem::path& path, const ScalarFieldRZ& f);
ScalarFieldRZ read_field(const std::filesystem::path& path);

/// FNV-1a over a canonical byte string; used for the config hash.
std::uint64_t fnv1a64(const std::string& bytes);

struct CheckpointMeta {
    std::uint64_t config_hash = 0;
    long step = 0;
    double t = 0.0;
    /// Running diagnostic accumulators, restored bit-exactly on resume.
    std::map<std::string, double> accumulators;
};

/// A checkpoint is a directory: rho/ur/uz/pi field dumps plus manifest.json
/// (hex-float encoded reals so resume is bit-exact).
void write_checkpoint(const std::filesystem::path& dir, const FlowState& s,
                      const CheckpointMeta& meta);
CheckpointMeta read_checkpoint(const std::filesystem::path& dir, FlowState& s);

}  // namespace axns
