/// @file runner.hpp
/// @brief Scenario driver: initial data or checkpoint resume, the time loop,
///        CSV emission, periodic checkpoints, and the run manifest.

#pragma once

#include "axns/config.hpp"
#include "axns/diagnostics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace axns {

struct RunOutcome {
    long steps = 0;
    std::filesystem::path csv_path;
    FlowState final_state;
    std::vector<DiagnosticsRecord> records;
    InitReport init_report;  // meaningful for fresh runs only
    double wall_seconds = 0.0;
};

/// Execute a configured run. `resume_from` restarts bit-exactly from a
/// checkpoint directory written by a run with the same config hash.
RunOutcome run_simulation(const SimConfig& cfg,
                          const std::optional<std::filesystem::path>& resume_from,
                          std::ostream* log = nullptr);

}  // namespace axns
