#include "uam/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "uam/csv.hpp"

namespace uam {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Table = std::map<std::string, Entry>;  // "section.key" -> entry

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& name, const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        fail(name, e.line, "key '" + key + "': expected a number, got '" + v + "'");
    }
    return out;
}

long parse_long(const std::string& name, const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        fail(name, e.line, "key '" + key + "': expected an integer, got '" + v + "'");
    }
    return out;
}

Vec3 parse_vec3(const std::string& name, const Entry& e, const std::string& key) {
    std::istringstream ss(e.value);
    std::string part;
    Vec3 out;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) fail(name, e.line, "key '" + key + "': expected 3 comma-separated numbers");
        part = trim(part);
        double d = 0.0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), d);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
            fail(name, e.line, "key '" + key + "': bad component '" + part + "'");
        }
        out[i++] = d;
    }
    if (i != 3) fail(name, e.line, "key '" + key + "': expected 3 comma-separated numbers");
    return out;
}

// Pulls typed values out of the table, remembering lines for later
// cross-field checks.
class Reader {
  public:
    Reader(const std::string& name, Table& tab) : name_(name), tab_(tab) {}

    bool has(const std::string& full) {
        auto it = tab_.find(full);
        return it != tab_.end();
    }
    int line_of(const std::string& full) {
        auto it = tab_.find(full);
        return it == tab_.end() ? 0 : it->second.line;
    }

    void num(const std::string& full, double& dst) {
        auto it = tab_.find(full);
        if (it == tab_.end()) return;
        it->second.used = true;
        dst = parse_double(name_, it->second, full);
    }
    void integer(const std::string& full, long& dst) {
        auto it = tab_.find(full);
        if (it == tab_.end()) return;
        it->second.used = true;
        dst = parse_long(name_, it->second, full);
    }
    void u64(const std::string& full, std::uint64_t& dst) {
        long v = long(dst);
        integer(full, v);
        if (v < 0) fail(name_, line_of(full), "key '" + full + "': must be non-negative");
        dst = std::uint64_t(v);
    }
    void vec(const std::string& full, Vec3& dst) {
        auto it = tab_.find(full);
        if (it == tab_.end()) return;
        it->second.used = true;
        dst = parse_vec3(name_, it->second, full);
    }
    void gain(const std::string& full, DiagGain3& dst) {
        Vec3 v{dst.d1, dst.d2, dst.d3};
        vec(full, v);
        dst = {v.x, v.y, v.z};
        if (has(full) && !dst.valid()) {
            fail(name_, line_of(full), "key '" + full + "': entries must be strictly positive");
        }
    }
    void str(const std::string& full, std::string& dst) {
        auto it = tab_.find(full);
        if (it == tab_.end()) return;
        it->second.used = true;
        dst = trim(it->second.value);
    }

    // range checks tied to the key's line (no-op when the key is absent and
    // the default already satisfies the predicate)
    void require(const std::string& full, bool ok, const std::string& msg) {
        if (ok) return;
        fail(name_, line_of(full), msg);
    }

    void finish() {
        for (const auto& [k, e] : tab_) {
            if (!e.used) fail(name_, e.line, "unknown key '" + k + "'");
        }
    }

  private:
    const std::string& name_;
    Table& tab_;
};

const char* kSections[] = {"run",     "plant",   "gains",      "filter", "nn",     "trigger",
                           "pid",     "trajectory", "sim",     "metrics", "output"};

bool known_section(const std::string& s) {
    for (const char* k : kSections) {
        if (s == k) return true;
    }
    return false;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& name) {
    Table tab;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(name, lineno, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!known_section(section)) fail(name, lineno, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
        if (section.empty()) fail(name, lineno, "key outside any [section]");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(name, lineno, "empty key");
        const std::string full = section + "." + key;
        if (tab.count(full)) fail(name, lineno, "duplicate key '" + full + "'");
        tab[full] = Entry{s.substr(eq + 1), lineno, false};
    }

    RunConfig cfg;
    SimSetup& st = cfg.setup;
    Reader rd(name, tab);

    std::string ctrl = to_string(st.controller);
    rd.str("run.controller", ctrl);
    try {
        st.controller = controller_kind_from_string(ctrl);
    } catch (const std::invalid_argument& e) {
        fail(name, rd.line_of("run.controller"), e.what());
    }

    rd.num("plant.m_t", st.plant.m_t);
    rd.num("plant.g", st.plant.g);
    rd.vec("plant.visc", st.plant.visc);
    rd.vec("plant.coul", st.plant.coul);
    rd.num("plant.v_s", st.plant.v_s);
    rd.vec("plant.dist_amp", st.plant.dist_amp);
    rd.vec("plant.dist_freq", st.plant.dist_freq);
    rd.vec("plant.dist_phase", st.plant.dist_phase);
    rd.num("plant.delta_bar", st.plant.delta_bar);
    rd.num("plant.v_max", st.plant.v_max);
    rd.vec("plant.p0", st.init_state.p);
    rd.vec("plant.v0", st.init_state.v);
    rd.require("plant.m_t", st.plant.m_t > 0.0, "m_t must be positive");
    rd.require("plant.g", st.plant.g > 0.0, "g must be positive");
    rd.require("plant.v_s", st.plant.v_s > 0.0, "v_s must be positive");
    rd.require("plant.v_max", st.plant.v_max > 0.0, "v_max must be positive");
    rd.require("plant.dist_amp", norm(st.plant.dist_amp) <= st.plant.delta_bar + 1e-12,
               "|dist_amp| must not exceed delta_bar");

    rd.gain("gains.c1", st.comp.c1);
    rd.gain("gains.c2", st.comp.c2);
    rd.gain("gains.k", st.comp.k);
    rd.gain("gains.k1", st.comp.k1);
    rd.gain("gains.k2", st.comp.k2);
    rd.gain("gains.beta1", st.ctrl.beta1);
    rd.gain("gains.gamma1", st.ctrl.gamma1);
    rd.gain("gains.beta2", st.ctrl.beta2);
    rd.gain("gains.gamma2", st.ctrl.gamma2);
    rd.num("gains.p_exp", st.comp.sw.p_exp);
    rd.num("gains.switch_eps", st.comp.sw.switch_eps);
    rd.require("gains.p_exp", st.comp.sw.p_exp > 0.5 && st.comp.sw.p_exp < 1.0,
               "exponent must satisfy 0.5 < p < 1");
    rd.require("gains.switch_eps", st.comp.sw.switch_eps > 0.0, "switch_eps must be positive");
    st.ctrl.sw = st.comp.sw;  // shared exponent and threshold

    rd.num("filter.eps", st.filter.filt_eps);
    rd.num("filter.zeta", st.filter.zeta);
    rd.num("filter.rho", st.filter.rho);
    rd.require("filter.eps", st.filter.filt_eps > 0.0, "filter eps must be positive");
    rd.require("filter.zeta", st.filter.zeta > 0.0, "zeta must be positive");
    rd.require("filter.rho", st.filter.rho > 0.0, "rho must be positive");

    long hidden = st.nn.n1;
    rd.integer("nn.hidden", hidden);
    rd.require("nn.hidden", hidden >= 1, "hidden width must be at least 1");
    st.nn.n1 = int(hidden);
    rd.num("nn.vbar0", st.nn.vbar0);
    rd.num("nn.vbar1", st.nn.vbar1);
    rd.num("nn.gamma0", st.nn.gamma0);
    rd.num("nn.gamma1", st.nn.gamma1);
    rd.num("nn.init_scale", st.nn.init_scale);
    rd.require("nn.vbar0", st.nn.vbar0 > 0.0, "vbar0 must be positive");
    rd.require("nn.vbar1", st.nn.vbar1 > 0.0, "vbar1 must be positive");
    rd.require("nn.gamma0", st.nn.gamma0 > 0.0, "gamma0 must be positive");
    rd.require("nn.gamma1", st.nn.gamma1 > 0.0, "gamma1 must be positive");
    rd.require("nn.init_scale", st.nn.init_scale >= 0.0, "init_scale must be non-negative");

    rd.num("trigger.sigma", st.trigger.sigma);
    rd.num("trigger.delta", st.trigger.delta);
    rd.num("trigger.kappa0", st.trigger.kappa0);
    rd.require("trigger.sigma", st.trigger.sigma > 0.0, "sigma must be positive");
    rd.require("trigger.delta", st.trigger.delta > 0.0, "delta must be positive");
    rd.require("trigger.kappa0", st.trigger.kappa0 >= 0.0, "kappa0 must be non-negative");

    rd.gain("pid.kp", st.pid.kp);
    rd.gain("pid.ki", st.pid.ki);
    rd.gain("pid.kd", st.pid.kd);
    rd.num("pid.i_max", st.pid.i_max);
    rd.require("pid.i_max", st.pid.i_max > 0.0, "i_max must be positive");

    std::string kind = to_string(st.traj.kind);
    rd.str("trajectory.kind", kind);
    try {
        st.traj.kind = traj_kind_from_string(kind);
    } catch (const std::invalid_argument& e) {
        fail(name, rd.line_of("trajectory.kind"), e.what());
    }
    rd.vec("trajectory.center", st.traj.center);
    rd.num("trajectory.a", st.traj.a);
    rd.num("trajectory.b", st.traj.b);
    rd.num("trajectory.alt_amp", st.traj.alt_amp);
    rd.num("trajectory.omega", st.traj.omega);
    rd.num("trajectory.ramp", st.traj.ramp);
    if (st.traj.kind != TrajKind::setpoint) {
        rd.require("trajectory.omega", st.traj.omega > 0.0, "omega must be positive");
        rd.require("trajectory.ramp", st.traj.ramp > 0.0, "ramp must be positive");
    }

    rd.num("sim.dt_plant", st.sim.dt_plant);
    rd.num("sim.control_period", st.sim.control_period);
    rd.num("sim.t_end", st.sim.t_end);
    rd.u64("sim.seed", st.sim.seed);
    rd.require("sim.dt_plant", st.sim.dt_plant > 0.0, "dt_plant must be positive");
    rd.require("sim.control_period",
               st.sim.control_period > 0.0 && st.sim.valid(),
               "control_period must be a positive integer multiple of dt_plant");
    rd.require("sim.t_end", st.sim.t_end >= st.sim.control_period,
               "t_end must cover at least one control period");

    // default window starts at 5 s but never past the end of a short run
    if (!rd.has("metrics.window_start")) {
        cfg.metrics.window_start = std::min(5.0, 0.5 * st.sim.t_end);
    }
    rd.num("metrics.window_start", cfg.metrics.window_start);
    rd.require("metrics.window_start",
               cfg.metrics.window_start >= 0.0 && cfg.metrics.window_start < st.sim.t_end,
               "window_start must lie in [0, t_end)");

    rd.str("output.dir", cfg.output.dir);
    rd.str("output.telemetry", cfg.output.telemetry);
    rd.str("output.metrics", cfg.output.metrics);
    rd.str("output.weights", cfg.output.weights);
    rd.integer("output.weights_every", cfg.output.weights_every);
    rd.require("output.weights_every", cfg.output.weights_every >= 1,
               "weights_every must be at least 1");

    rd.finish();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    return parse_config(in, path);
}

namespace {

void emit(std::ostream& o, const char* k, double v) { o << k << " = " << fmt_double(v) << "\n"; }
void emit(std::ostream& o, const char* k, const Vec3& v) {
    o << k << " = " << fmt_double(v.x) << ", " << fmt_double(v.y) << ", " << fmt_double(v.z) << "\n";
}
void emit(std::ostream& o, const char* k, const DiagGain3& g) {
    emit(o, k, Vec3{g.d1, g.d2, g.d3});
}

}  // namespace

void write_config(const RunConfig& cfg, std::ostream& o) {
    const SimSetup& st = cfg.setup;
    o << "[run]\n";
    o << "controller = " << to_string(st.controller) << "\n\n";

    o << "[plant]\n";
    emit(o, "m_t", st.plant.m_t);
    emit(o, "g", st.plant.g);
    emit(o, "visc", st.plant.visc);
    emit(o, "coul", st.plant.coul);
    emit(o, "v_s", st.plant.v_s);
    emit(o, "dist_amp", st.plant.dist_amp);
    emit(o, "dist_freq", st.plant.dist_freq);
    emit(o, "dist_phase", st.plant.dist_phase);
    emit(o, "delta_bar", st.plant.delta_bar);
    emit(o, "v_max", st.plant.v_max);
    emit(o, "p0", st.init_state.p);
    emit(o, "v0", st.init_state.v);
    o << "\n[gains]\n";
    emit(o, "c1", st.comp.c1);
    emit(o, "k1", st.comp.k1);
    emit(o, "beta1", st.ctrl.beta1);
    emit(o, "gamma1", st.ctrl.gamma1);
    emit(o, "c2", st.comp.c2);
    emit(o, "k2", st.comp.k2);
    emit(o, "beta2", st.ctrl.beta2);
    emit(o, "gamma2", st.ctrl.gamma2);
    emit(o, "k", st.comp.k);
    emit(o, "p_exp", st.comp.sw.p_exp);
    emit(o, "switch_eps", st.comp.sw.switch_eps);
    o << "\n[filter]\n";
    emit(o, "eps", st.filter.filt_eps);
    emit(o, "zeta", st.filter.zeta);
    emit(o, "rho", st.filter.rho);
    o << "\n[nn]\n";
    o << "hidden = " << st.nn.n1 << "\n";
    emit(o, "vbar0", st.nn.vbar0);
    emit(o, "vbar1", st.nn.vbar1);
    emit(o, "gamma0", st.nn.gamma0);
    emit(o, "gamma1", st.nn.gamma1);
    emit(o, "init_scale", st.nn.init_scale);
    o << "\n[trigger]\n";
    emit(o, "sigma", st.trigger.sigma);
    emit(o, "delta", st.trigger.delta);
    emit(o, "kappa0", st.trigger.kappa0);
    o << "\n[pid]\n";
    emit(o, "kp", st.pid.kp);
    emit(o, "ki", st.pid.ki);
    emit(o, "kd", st.pid.kd);
    emit(o, "i_max", st.pid.i_max);
    o << "\n[trajectory]\n";
    o << "kind = " << to_string(st.traj.kind) << "\n";
    emit(o, "center", st.traj.center);
    emit(o, "a", st.traj.a);
    emit(o, "b", st.traj.b);
    emit(o, "alt_amp", st.traj.alt_amp);
    emit(o, "omega", st.traj.omega);
    emit(o, "ramp", st.traj.ramp);
    o << "\n[sim]\n";
    emit(o, "dt_plant", st.sim.dt_plant);
    emit(o, "control_period", st.sim.control_period);
    emit(o, "t_end", st.sim.t_end);
    o << "seed = " << st.sim.seed << "\n";
    o << "\n[metrics]\n";
    emit(o, "window_start", cfg.metrics.window_start);
    o << "\n[output]\n";
    o << "dir = " << cfg.output.dir << "\n";
    o << "telemetry = " << cfg.output.telemetry << "\n";
    o << "metrics = " << cfg.output.metrics << "\n";
    if (!cfg.output.weights.empty()) o << "weights = " << cfg.output.weights << "\n";
    o << "weights_every = " << cfg.output.weights_every << "\n";
}

}  // namespace uam
