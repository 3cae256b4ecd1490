// sim.hpp - closed-loop orchestration: joint integration of plant, command
// filter, compensator, NN weights and trigger variable at the plant rate,
// with controller updates and event decisions at the control ticks.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "uam/cfilter.hpp"
#include "uam/controller.hpp"
#include "uam/nn.hpp"
#include "uam/pid.hpp"
#include "uam/plant.hpp"
#include "uam/rk4.hpp"
#include "uam/trajectory.hpp"

namespace uam {

enum class ControllerKind { et_nn, baseline_pid, time_triggered_nn };

ControllerKind controller_kind_from_string(const std::string& s);
std::string to_string(ControllerKind k);

struct SimConfig {
    double dt_plant = 1e-3;       // s
    double control_period = 0.01; // s (100 Hz)
    double t_end = 60.0;          // s
    std::uint64_t seed = 1;

    long substeps_per_tick() const {
        return std::lround(control_period / dt_plant);
    }
    long total_ticks() const { return std::lround(t_end / control_period); }
    bool valid() const {
        if (!(dt_plant > 0.0 && control_period > 0.0 && t_end > 0.0)) return false;
        const long n = substeps_per_tick();
        return n >= 1 && std::abs(n * dt_plant - control_period) < 1e-9 * control_period;
    }
};

// one telemetry row per control tick
struct TickRecord {
    double t = 0.0;
    Vec3 p, p_d, y1, y2, u_held;
    double kappa = 0.0;
    bool event = false;
    double v_s = 0.0;
    Vec3 fhat;
};

struct RunMonitors {
    double etc_ineq_max = -std::numeric_limits<double>::infinity();
    double hold_slack_max = -std::numeric_limits<double>::infinity();
    double kappa_min = std::numeric_limits<double>::infinity();
    double kappa_max = -std::numeric_limits<double>::infinity();
    double max_y1 = 0.0, max_y2 = 0.0;
    double max_iota1 = 0.0, max_iota2 = 0.0;
    double max_v0_fro2 = 0.0, max_v1_fro2 = 0.0;
    long windup_count = 0;
};

struct SimSetup {
    ControllerKind controller = ControllerKind::et_nn;
    PlantParams plant;
    CompGains comp;
    CtrlGains ctrl;
    FilterParams filter;
    NNConfig nn;
    TriggerParams trigger;
    PIDGains pid;
    TrajectorySpec traj;
    SimConfig sim;
    PlantState init_state{{0.0, 0.0, 1.0}, {}};
};

double lyapunov_surrogate(const ErrorCoords& ec, const CompState& cs);

// closed-form fixed-time bound calculators for user-supplied analysis
// constants; T <= 1/(l omega (1-p)) + 1/(omega m)
double settling_bound(double l, double m, double p_exp, double omega);
double value_bound(double l, double m, double n, double p_exp, double omega);

class ClosedLoopSim {
  public:
    explicit ClosedLoopSim(const SimSetup& setup);

    bool done() const { return tick_ >= setup_.sim.total_ticks(); }
    double time() const { return tick_ * setup_.sim.control_period; }

    // run one control tick and advance one control period
    TickRecord step();

    const RunMonitors& monitors() const { return mon_; }
    const TriggerState& trigger_state() const { return trig_; }
    std::span<const double> v0() const;
    std::span<const double> v1() const;

  private:
    TickRecord step_et();
    TickRecord step_pid();
    void integrate_period(double t0);

    SimSetup setup_;
    long tick_ = 0;
    std::vector<double> state_;  // flat joint state
    // layout offsets into state_
    std::size_t off_v0_ = 0, off_v1_ = 0, off_kappa_ = 0;
    TriggerState trig_;
    PIDState pid_state_;
    RunMonitors mon_;
    Rk4Workspace ws_;
    // tick-frozen controller outputs used by the inter-tick dynamics
    Vec3 alpha1_held_, fhat_held_, y2_held_, e_tilde_held_;
    std::vector<double> xd_held_;
};

}  // namespace uam
