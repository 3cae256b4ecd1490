#include "uam/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace uam {

ControllerKind controller_kind_from_string(const std::string& s) {
    if (s == "et_nn") return ControllerKind::et_nn;
    if (s == "baseline_pid") return ControllerKind::baseline_pid;
    if (s == "time_triggered_nn") return ControllerKind::time_triggered_nn;
    throw std::invalid_argument("unknown controller '" + s + "'");
}

std::string to_string(ControllerKind k) {
    switch (k) {
        case ControllerKind::et_nn: return "et_nn";
        case ControllerKind::baseline_pid: return "baseline_pid";
        case ControllerKind::time_triggered_nn: return "time_triggered_nn";
    }
    return "?";
}

double lyapunov_surrogate(const ErrorCoords& ec, const CompState& cs) {
    return 0.5 * (norm2(ec.y1) + norm2(ec.y2) + norm2(cs.iota1) + norm2(cs.iota2));
}

double settling_bound(double l, double m, double p_exp, double omega) {
    if (!(l > 0.0 && m > 0.0)) throw std::domain_error("settling_bound: l, m must be positive");
    if (!(omega > 0.0 && omega < 1.0)) throw std::domain_error("settling_bound: need 0 < omega < 1");
    if (!(p_exp > 0.5 && p_exp < 1.0)) throw std::domain_error("settling_bound: need 0.5 < p < 1");
    return 1.0 / (l * omega * (1.0 - p_exp)) + 1.0 / (omega * m);
}

double value_bound(double l, double m, double n, double p_exp, double omega) {
    if (!(l > 0.0 && m > 0.0)) throw std::domain_error("value_bound: l, m must be positive");
    if (n < 0.0) throw std::domain_error("value_bound: n must be non-negative");
    if (!(omega > 0.0 && omega < 1.0)) throw std::domain_error("value_bound: need 0 < omega < 1");
    if (!(p_exp > 0.5 && p_exp < 1.0)) throw std::domain_error("value_bound: need 0.5 < p < 1");
    const double via_l = std::pow(n / ((1.0 - omega) * l), 1.0 / p_exp);
    const double via_m = std::sqrt(n / ((1.0 - omega) * m));
    return std::min(via_l, via_m);
}

namespace {

// flat-state helpers
inline Vec3 get3(std::span<const double> x, std::size_t off) {
    return {x[off], x[off + 1], x[off + 2]};
}
inline void put3(std::span<double> x, std::size_t off, const Vec3& v) {
    x[off] = v.x;
    x[off + 1] = v.y;
    x[off + 2] = v.z;
}

constexpr std::size_t kOffP = 0, kOffV = 3, kOffChi = 6, kOffXi = 9, kOffI1 = 12, kOffI2 = 15;
constexpr std::size_t kEtHead = 18;

}  // namespace

ClosedLoopSim::ClosedLoopSim(const SimSetup& setup) : setup_(setup) {
    if (!setup_.sim.valid()) throw std::invalid_argument("sim config invalid");
    if (!setup_.plant.valid()) throw std::invalid_argument("plant params invalid");

    if (setup_.controller == ControllerKind::baseline_pid) {
        state_.assign(6, 0.0);
        put3(state_, kOffP, setup_.init_state.p);
        put3(state_, kOffV, setup_.init_state.v);
        return;
    }

    const NNConfig& nn = setup_.nn;
    off_v0_ = kEtHead;
    off_v1_ = off_v0_ + nn.v0_size();
    off_kappa_ = off_v1_ + nn.v1_size();
    state_.assign(off_kappa_ + 1, 0.0);
    put3(state_, kOffP, setup_.init_state.p);
    put3(state_, kOffV, setup_.init_state.v);

    Rng rng(setup_.sim.seed);
    const NNWeights w = init_weights(nn, rng);
    std::copy(w.v0.begin(), w.v0.end(), state_.begin() + long(off_v0_));
    std::copy(w.v1.begin(), w.v1.end(), state_.begin() + long(off_v1_));
    state_[off_kappa_] = setup_.trigger.kappa0;
    trig_.kappa = setup_.trigger.kappa0;

    // chi(0) = alpha1(0), computed from the initial position error alone
    const TrajectorySample tr0 = traj_sample(setup_.traj, 0.0);
    ErrorCoords ec0;
    ec0.x1 = setup_.init_state.p - tr0.p_d;
    ec0.y1 = ec0.x1;  // iota1(0) = 0
    const Vec3 a1_0 = alpha1(tr0, ec0, CompState{}, setup_.ctrl, setup_.comp);
    const FilterState fs0 = filter_init(a1_0);
    put3(state_, kOffChi, fs0.chi);
    put3(state_, kOffXi, fs0.xi);

    xd_held_.assign(std::size_t(nn.n0) + 1, 0.0);
    xd_held_.back() = 1.0;
}

std::span<const double> ClosedLoopSim::v0() const {
    if (setup_.controller == ControllerKind::baseline_pid) return {};
    return {state_.data() + off_v0_, setup_.nn.v0_size()};
}
std::span<const double> ClosedLoopSim::v1() const {
    if (setup_.controller == ControllerKind::baseline_pid) return {};
    return {state_.data() + off_v1_, setup_.nn.v1_size()};
}

TickRecord ClosedLoopSim::step() {
    if (done()) throw std::logic_error("step() past end of run");
    return setup_.controller == ControllerKind::baseline_pid ? step_pid() : step_et();
}

TickRecord ClosedLoopSim::step_et() {
    const double t = time();
    const TrajectorySample traj = traj_sample(setup_.traj, t);

    const PlantState plant{get3(state_, kOffP), get3(state_, kOffV)};
    const FilterState fs{get3(state_, kOffChi), get3(state_, kOffXi)};
    const CompState cs{get3(state_, kOffI1), get3(state_, kOffI2)};
    trig_.kappa = state_[off_kappa_];

    const ErrorCoords ec = error_coords(plant, traj, fs, cs);
    for (std::size_t i = 0; i < 3; ++i) xd_held_[i] = traj.pd_dot[int(i)];
    const Vec3 fhat = nn_forward(setup_.nn, v0(), v1(), xd_held_);
    const Vec3 a1 = alpha1(traj, ec, cs, setup_.ctrl, setup_.comp);
    const Vec3 a2 = alpha2(fs.xi, ec, cs, setup_.ctrl, setup_.comp);
    const Vec3 bu = bar_u(a2, ec.y2, trig_.kappa, setup_.trigger);

    Vec3 e_tilde = trig_.u_held - bu;
    bool event = false;
    const bool every_tick = setup_.controller == ControllerKind::time_triggered_nn;
    if (tick_ == 0 || every_tick || trigger_fire(trig_.kappa, e_tilde, setup_.trigger)) {
        trig_ = apply_event(trig_, bu, t);
        e_tilde = Vec3{};
        event = true;
    }

    // runtime monitors, evaluated after the event decision
    mon_.etc_ineq_max = std::max(mon_.etc_ineq_max, dot(ec.y2, trig_.u_held - a2));
    const double thr = setup_.trigger.sigma + trig_.kappa / setup_.trigger.delta;
    for (int j = 0; j < 3; ++j) {
        mon_.hold_slack_max = std::max(mon_.hold_slack_max, std::abs(e_tilde[j]) - thr);
    }
    mon_.kappa_min = std::min(mon_.kappa_min, trig_.kappa);
    mon_.kappa_max = std::max(mon_.kappa_max, trig_.kappa);
    mon_.max_y1 = std::max(mon_.max_y1, norm(ec.y1));
    mon_.max_y2 = std::max(mon_.max_y2, norm(ec.y2));
    mon_.max_iota1 = std::max(mon_.max_iota1, norm(cs.iota1));
    mon_.max_iota2 = std::max(mon_.max_iota2, norm(cs.iota2));
    mon_.max_v0_fro2 = std::max(mon_.max_v0_fro2, fro2(v0()));
    mon_.max_v1_fro2 = std::max(mon_.max_v1_fro2, fro2(v1()));

    TickRecord rec;
    rec.t = t;
    rec.p = plant.p;
    rec.p_d = traj.p_d;
    rec.y1 = ec.y1;
    rec.y2 = ec.y2;
    rec.u_held = trig_.u_held;
    rec.kappa = trig_.kappa;
    rec.event = event;
    rec.v_s = lyapunov_surrogate(ec, cs);
    rec.fhat = fhat;

    alpha1_held_ = a1;
    fhat_held_ = fhat;
    y2_held_ = ec.y2;
    e_tilde_held_ = e_tilde;
    integrate_period(t);
    tick_ += 1;
    return rec;
}

TickRecord ClosedLoopSim::step_pid() {
    const double t = time();
    const TrajectorySample traj = traj_sample(setup_.traj, t);
    const PlantState plant{get3(state_, kOffP), get3(state_, kOffV)};
    const Vec3 e1 = plant.p - traj.p_d;
    const Vec3 e1_dot = plant.v - traj.pd_dot;
    const Vec3 uc = pid_control(e1, e1_dot, pid_state_, traj, setup_.plant, setup_.pid,
                                setup_.sim.control_period);
    trig_ = apply_event(trig_, u_from_uc(uc, setup_.plant), t);
    mon_.windup_count = pid_state_.windup_count;

    TickRecord rec;
    rec.t = t;
    rec.p = plant.p;
    rec.p_d = traj.p_d;
    rec.y1 = e1;
    rec.y2 = e1_dot;
    rec.u_held = trig_.u_held;
    rec.kappa = 0.0;
    rec.event = true;
    rec.v_s = 0.5 * (norm2(e1) + norm2(e1_dot));
    rec.fhat = Vec3{};

    integrate_period(t);
    tick_ += 1;
    return rec;
}

void ClosedLoopSim::integrate_period(double t0) {
    const double dt = setup_.sim.dt_plant;
    const long n_sub = setup_.sim.substeps_per_tick();
    const bool pid_mode = setup_.controller == ControllerKind::baseline_pid;

    auto deriv = [this, pid_mode](double t, std::span<const double> x, std::span<double> dx) {
        const PlantState ps{get3(x, kOffP), get3(x, kOffV)};
        const PlantDeriv pd = plant_deriv(ps, trig_.u_held, t, setup_.plant);
        put3(dx, kOffP, pd.p_dot);
        put3(dx, kOffV, pd.v_dot);
        if (pid_mode) return;

        const FilterState fs{get3(x, kOffChi), get3(x, kOffXi)};
        const FilterDeriv fd = filter_deriv(fs, alpha1_held_, setup_.filter);
        put3(dx, kOffChi, fd.chi_dot);
        put3(dx, kOffXi, fd.xi_dot);

        const CompState cs{get3(x, kOffI1), get3(x, kOffI2)};
        const CompDeriv cd = comp_deriv(cs, fs.chi, alpha1_held_, fhat_held_, setup_.comp);
        put3(dx, kOffI1, cd.iota1_dot);
        put3(dx, kOffI2, cd.iota2_dot);

        nn_update_deriv(setup_.nn, x.subspan(off_v0_, setup_.nn.v0_size()),
                        x.subspan(off_v1_, setup_.nn.v1_size()), xd_held_, y2_held_,
                        dx.subspan(off_v0_, setup_.nn.v0_size()),
                        dx.subspan(off_v1_, setup_.nn.v1_size()));

        dx[off_kappa_] = kappa_deriv(x[off_kappa_], e_tilde_held_, setup_.trigger);
    };

    for (long i = 0; i < n_sub; ++i) {
        rk4_step(deriv, std::span<double>(state_), t0 + i * dt, dt, ws_);
        if (!pid_mode) {
            clamp_to_ball({state_.data() + off_v0_, setup_.nn.v0_size()}, setup_.nn.vbar0);
            clamp_to_ball({state_.data() + off_v1_, setup_.nn.v1_size()}, setup_.nn.vbar1);
        }
    }
}

}  // namespace uam
