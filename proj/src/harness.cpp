#include "uam/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "uam/csv.hpp"

namespace uam {

RunOutcome run_experiment(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output.dir);
    fs::create_directories(dir);

    {
        std::ofstream echo(dir / "resolved_config.ini");
        write_config(cfg, echo);
    }

    RunOutcome out;
    out.telemetry_path = (dir / cfg.output.telemetry).string();
    out.metrics_path = (dir / cfg.output.metrics).string();

    MetricsReport& rep = out.metrics;
    rep.controller = to_string(cfg.setup.controller);
    rep.trajectory = to_string(cfg.setup.traj.kind);
    rep.t_end = cfg.setup.sim.t_end;
    rep.control_period = cfg.setup.sim.control_period;
    rep.dt_plant = cfg.setup.sim.dt_plant;
    rep.seed = cfg.setup.sim.seed;

    TelemetryWriter telemetry(out.telemetry_path);
    std::unique_ptr<WeightsWriter> weights;
    const bool with_nn = cfg.setup.controller != ControllerKind::baseline_pid;
    if (!cfg.output.weights.empty() && with_nn) {
        weights = std::make_unique<WeightsWriter>((dir / cfg.output.weights).string(),
                                                  cfg.setup.nn);
    }

    MetricsAccum accum(cfg.metrics.window_start);
    ClosedLoopSim sim(cfg.setup);
    const auto t_start = std::chrono::steady_clock::now();
    long tick = 0;
    try {
        while (!sim.done()) {
            const TickRecord rec = sim.step();
            telemetry.row(rec);
            accum.add(rec);
            if (weights && tick % cfg.output.weights_every == 0) {
                weights->row(rec.t, sim.v0(), sim.v1());
            }
            ++tick;
        }
    } catch (const DivergenceError& e) {
        telemetry.flush();  // keep the partial CSV
        out.exit_code = 3;
        std::ostringstream msg;
        msg << "divergence: " << e.what() << " (tick " << tick << ")";
        out.error = msg.str();
        rep.diverged = true;
    }
    const auto t_stop = std::chrono::steady_clock::now();

    accum.finalize(rep);
    const RunMonitors& mon = sim.monitors();
    rep.runtime_s = std::chrono::duration<double>(t_stop - t_start).count();
    if (with_nn) {
        rep.etc_ineq_max = mon.etc_ineq_max;
        rep.hold_slack_max = mon.hold_slack_max;
        rep.kappa_min = mon.kappa_min;
        rep.kappa_max = mon.kappa_max;
        rep.max_y1 = mon.max_y1;
        rep.max_y2 = mon.max_y2;
        rep.max_iota1 = mon.max_iota1;
        rep.max_iota2 = mon.max_iota2;
        rep.max_v0_fro2 = mon.max_v0_fro2;
        rep.max_v1_fro2 = mon.max_v1_fro2;
    }
    rep.windup_count = mon.windup_count;

    std::ofstream mf(out.metrics_path);
    write_metrics(rep, mf);
    return out;
}

}  // namespace uam
