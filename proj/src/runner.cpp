#include "axns/runner.hpp"

#include "axns/field_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <fstream>
#include <ostream>

namespace axns {

namespace {

void write_run_manifest(const std::filesystem::path& dir, const SimConfig& cfg,
                        long steps, double wall, bool completed) {
    nlohmann::json j;
    j["tool"] = "axns";
    j["version"] = "0.1.0";
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016" PRIx64, cfg.hash());
    j["config_hash"] = hashbuf;
    j["config"] = cfg.canonical();
    j["steps"] = steps;
    j["wall_seconds"] = wall;
    j["completed"] = completed;
    std::ofstream out(dir / "run.json");
    out << j.dump(2) << '\n';
}

}  // namespace

RunOutcome run_simulation(const SimConfig& cfg,
                          const std::optional<std::filesystem::path>& resume_from,
                          std::ostream* log) {
    const auto wall0 = std::chrono::steady_clock::now();
    cfg.validate();
    const GridSpec grid = cfg.grid();
    const std::filesystem::path out_dir = cfg.out_dir;
    std::filesystem::create_directories(out_dir);

    RunOutcome outcome;
    outcome.csv_path = out_dir / "diagnostics.csv";

    CollectorOptions copt;
    copt.cart_n = cfg.cart_n;
    copt.alpha = cfg.alpha;
    copt.rho_upper = cfg.M;
    DiagnosticsCollector collector(copt);

    FlowState state;
    long step0 = 0;
    double dt_init = -1.0;
    std::ofstream csv;
    if (resume_from) {
        CheckpointMeta meta = read_checkpoint(*resume_from, state);
        if (meta.config_hash != cfg.hash())
            throw ConfigError("resume: checkpoint config hash does not match this config");
        step0 = meta.step;
        auto acc = meta.accumulators;
        if (auto it = acc.find("dt_cur"); it != acc.end()) {
            dt_init = it->second;
            acc.erase(it);
        }
        collector.restore(acc);
        csv.open(outcome.csv_path, std::ios::app);
        if (log) *log << "resumed from " << resume_from->string() << " at step " << step0
                      << ", t = " << state.t << "\n";
    } else {
        state = make_initial_data(cfg.init, grid, std::min(cfg.tol, 1e-12),
                                  &outcome.init_report);
        collector.start(state);
        csv.open(outcome.csv_path, std::ios::trunc);
        csv << kCsvHeader << '\n';
    }
    if (!csv) throw ConfigError("cannot open CSV for writing: " + outcome.csv_path.string());

    Stepper stepper(grid, cfg.step_controls());

    auto checkpoint = [&](const std::filesystem::path& dir, long step, double dt_cur) {
        CheckpointMeta meta;
        meta.config_hash = cfg.hash();
        meta.step = step;
        meta.t = state.t;
        meta.accumulators = collector.accumulators();
        if (dt_cur > 0.0) meta.accumulators["dt_cur"] = dt_cur;
        write_checkpoint(dir, state, meta);
    };

    RunControl rc;
    rc.t_end = cfg.t_end;
    rc.sample_every = cfg.sample_every;
    rc.step0 = step0;
    rc.dt_init = dt_init;
    rc.emit_initial = !resume_from;
    rc.on_sample = [&](const FlowState& s, const StepReport*, long) {
        DiagnosticsRecord rec = collector.sample(s);
        outcome.records.push_back(rec);
        csv << csv_row(rec) << '\n';
        csv.flush();
    };
    rc.on_step = [&](const FlowState& s, const StepReport&, long step, double dt_cur) {
        collector.on_step(s);
        if (cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0)
            checkpoint(out_dir / ("ckpt-" + std::to_string(step)), step, dt_cur);
    };

    long steps = 0;
    try {
        steps = run(stepper, state, rc);
    } catch (...) {
        // flush partial results and a failure-state dump before rethrowing
        csv.flush();
        try {
            checkpoint(out_dir / "failure-state", step0 + steps, -1.0);
        } catch (...) {}
        write_run_manifest(out_dir, cfg,
                           step0 + steps, std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - wall0).count(), false);
        throw;
    }

    checkpoint(out_dir / "final", step0 + steps, -1.0);
    outcome.steps = steps;
    outcome.final_state = std::move(state);
    outcome.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    write_run_manifest(out_dir, cfg, step0 + steps, outcome.wall_seconds, true);
    if (log)
        *log << "run complete: " << steps << " steps, t = " << outcome.final_state.t
             << ", wall " << outcome.wall_seconds << " s\n";
    return outcome;
}

}  // namespace axns
