// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
//
// Usage: acceptance [path-to-uamsim-cli]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "uam/config.hpp"
#include "uam/csv.hpp"
#include "uam/harness.hpp"
#include "uam/metrics.hpp"
#include "uam/nn.hpp"
#include "uam/rk4.hpp"
#include "uam/rng.hpp"
#include "uam/sim.hpp"

using namespace uam;
namespace fs = std::filesystem;

namespace {

struct Summary {
    int passed = 0;
    int failed = 0;

    void report(int id, const std::string& what, bool ok, double seconds,
                const std::string& detail) {
        std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                    seconds, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        ok ? ++passed : ++failed;
    }
};

double run_timed(const std::function<bool(std::string&)>& fn, bool& ok, std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    ok = fn(detail);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check(int id, const std::string& what, Summary& s,
           const std::function<bool(std::string&)>& fn) {
    bool ok = false;
    std::string detail;
    const double sec = run_timed(fn, ok, detail);
    s.report(id, what, ok, sec, detail);
}

Vec3 random_dir(Rng& rng) {
    for (;;) {
        const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = norm(v);
        if (n > 1e-3 && n <= 1.0) return v / n;
    }
}

fs::path work_dir() {
    const fs::path p = fs::temp_directory_path() / "uamsim_acceptance";
    fs::create_directories(p);
    return p;
}

RunConfig nominal(TrajKind kind, ControllerKind ctrl, const std::string& tag) {
    std::istringstream empty("");
    RunConfig cfg = parse_config(empty, "defaults");
    cfg.setup.traj.kind = kind;
    cfg.setup.controller = ctrl;
    cfg.output.dir = (work_dir() / tag).string();
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    Summary s;

    // shared nominal runs (used by criteria 4-8)
    RunOutcome ellipse_et, fig8_et, ellipse_pid, fig8_pid, ellipse_tt;
    {
        ellipse_et = run_experiment(nominal(TrajKind::ellipse, ControllerKind::et_nn, "ellipse_et"));
        fig8_et = run_experiment(nominal(TrajKind::figure_eight, ControllerKind::et_nn, "fig8_et"));
        ellipse_pid =
            run_experiment(nominal(TrajKind::ellipse, ControllerKind::baseline_pid, "ellipse_pid"));
        fig8_pid = run_experiment(
            nominal(TrajKind::figure_eight, ControllerKind::baseline_pid, "fig8_pid"));
        ellipse_tt = run_experiment(
            nominal(TrajKind::ellipse, ControllerKind::time_triggered_nn, "ellipse_tt"));
    }

    check(1, "switch map: continuity, growth bound, sign alignment", s, [&](std::string& d) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(101);
        double worst_jump = 0.0;
        for (int i = 0; i < 2000; ++i) {
            SwitchParams sp;
            sp.p_exp = rng.uniform(0.55, 0.95);
            sp.switch_eps = std::pow(10.0, rng.uniform(-6.0, -2.0));
            const Vec3 u = random_dir(rng);
            const double r = std::sqrt(sp.switch_eps);
            const double dd = 1e-12 * std::max(1.0, r);
            worst_jump = std::max(worst_jump, norm(theta((r + dd) * u, sp) - theta((r - dd) * u, sp)));
        }
        bool bound_ok = true, sign_ok = true;
        for (long i = 0; i < 1000000; ++i) {
            SwitchParams sp;
            sp.p_exp = rng.uniform(0.55, 0.95);
            sp.switch_eps = std::pow(10.0, rng.uniform(-6.0, -1.0));
            const Vec3 v = std::pow(10.0, rng.uniform(-8.0, 2.0)) * random_dir(rng);
            const Vec3 th = theta(v, sp);
            bound_ok = bound_ok && norm(th) <= norm(v) + 1.0 + 1e-12;
            sign_ok = sign_ok && dot(v, th) >= 0.0;
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream ss;
        ss << "max boundary jump " << worst_jump;
        d = ss.str();
        return worst_jump < 1e-8 && bound_ok && sign_ok && sec < 5.0;
    });

    check(2, "weight updates match Gamma-scaled numerical gradients", s, [&](std::string& d) {
        const auto t0 = std::chrono::steady_clock::now();
        NNConfig cfg;
        cfg.vbar0 = cfg.vbar1 = 1e9;  // keep the projection inactive
        Rng rng(103);
        double worst = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            NNWeights w;
            w.v0.resize(cfg.v0_size());
            w.v1.resize(cfg.v1_size());
            for (auto& e : w.v0) e = rng.uniform(-1, 1);
            for (auto& e : w.v1) e = rng.uniform(-1, 1);
            const NNInput in(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
            const Vec3 y2{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            std::vector<double> dv0(cfg.v0_size()), dv1(cfg.v1_size());
            nn_update_deriv(cfg, w.v0, w.v1, in.x, y2, dv0, dv1);
            auto objective = [&](const std::vector<double>& v0, const std::vector<double>& v1) {
                return dot(y2, nn_forward(cfg, v0, v1, in.x));
            };
            const double h = 1e-5;
            for (std::size_t i = 0; i < w.v1.size(); ++i) {
                auto wp = w.v1, wm = w.v1;
                wp[i] += h;
                wm[i] -= h;
                const double want = cfg.gamma1 * (objective(w.v0, wp) - objective(w.v0, wm)) / (2 * h);
                if (std::abs(want) > 1e-6) {
                    worst = std::max(worst, std::abs(dv1[i] - want) / std::abs(want));
                }
            }
            for (std::size_t i = 0; i < w.v0.size(); ++i) {
                auto wp = w.v0, wm = w.v0;
                wp[i] += h;
                wm[i] -= h;
                const double want = cfg.gamma0 * (objective(wp, w.v1) - objective(wm, w.v1)) / (2 * h);
                if (std::abs(want) > 1e-6) {
                    worst = std::max(worst, std::abs(dv0[i] - want) / std::abs(want));
                }
            }
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream ss;
        ss << "worst relative error " << worst;
        d = ss.str();
        return worst < 1e-5 && sec < 5.0;
    });

    check(3, "projection keeps weights inside the norm ball for 1e5 steps", s,
          [&](std::string& d) {
              NNConfig cfg;  // stock vbar = 100
              Rng rng(107);
              std::vector<double> state(cfg.v0_size() + cfg.v1_size());
              for (auto& e : state) e = rng.uniform(-0.1, 0.1);
              const std::size_t n0 = cfg.v0_size();
              Rk4Workspace ws;
              const double dt = 1e-3;
              double worst0 = 0.0, worst1 = 0.0;
              for (long step = 0; step < 100000; ++step) {
                  const double t = step * dt;
                  const Vec3 y2{5.0 * sgn(std::sin(37.0 * t)), 4.0 * std::cos(11.0 * t),
                                5.0 * sgn(std::cos(5.0 * t))};
                  const std::vector<double> xd{std::sin(t), std::cos(t), 0.4, 1.0};
                  auto deriv = [&](double, std::span<const double> x, std::span<double> dx) {
                      nn_update_deriv(cfg, x.subspan(0, n0), x.subspan(n0), xd, y2,
                                      dx.subspan(0, n0), dx.subspan(n0));
                  };
                  rk4_step(deriv, std::span<double>(state), t, dt, ws);
                  clamp_to_ball(std::span<double>(state).subspan(0, n0), cfg.vbar0);
                  clamp_to_ball(std::span<double>(state).subspan(n0), cfg.vbar1);
                  worst0 = std::max(worst0, fro2(std::span<const double>(state).subspan(0, n0)));
                  worst1 = std::max(worst1, fro2(std::span<const double>(state).subspan(n0)));
              }
              std::ostringstream ss;
              ss << "max |V0|^2 " << worst0 << ", max |V1|^2 " << worst1;
              d = ss.str();
              return worst0 <= cfg.vbar0 + 1e-6 && worst1 <= cfg.vbar1 + 1e-6 &&
                     worst1 > 0.9 * cfg.vbar1;  // boundary genuinely engaged
          });

    check(4, "held command never fights y2 harder than alpha2 does", s, [&](std::string& d) {
        std::ostringstream ss;
        ss << "max y2'(u_held - alpha2): ellipse " << ellipse_et.metrics.etc_ineq_max << ", fig8 "
           << fig8_et.metrics.etc_ineq_max;
        d = ss.str();
        return ellipse_et.exit_code == 0 && fig8_et.exit_code == 0 &&
               ellipse_et.metrics.etc_ineq_max <= 1e-9 && fig8_et.metrics.etc_ineq_max <= 1e-9;
    });

    check(5, "no Zeno: dwell >= control period; transmissions under 60%", s, [&](std::string& d) {
        const double ratio = ellipse_et.metrics.transmission_ratio;
        bool dwell_ok = true;
        for (const RunOutcome* r : {&ellipse_et, &fig8_et, &ellipse_tt, &ellipse_pid, &fig8_pid}) {
            dwell_ok = dwell_ok && r->metrics.min_interevent >= 0.01 - 1e-12;
        }
        std::ostringstream ss;
        ss << "ellipse ratio " << ratio << " (time-triggered "
           << ellipse_tt.metrics.transmission_ratio << "), min dwell "
           << ellipse_et.metrics.min_interevent << " s";
        d = ss.str();
        return dwell_ok && ellipse_tt.metrics.transmission_ratio == 1.0 && ratio < 0.6;
    });

    check(6, "centimeter tracking with all signals bounded on both runs", s, [&](std::string& d) {
        bool ok = true;
        std::ostringstream ss;
        for (const RunOutcome* r : {&ellipse_et, &fig8_et}) {
            const MetricsReport& m = r->metrics;
            ok = ok && r->exit_code == 0;
            for (int a = 0; a < 3; ++a) ok = ok && m.mean_err[a] < 0.05;
            ok = ok && m.max_y1 < 1.0 && m.max_y2 < 1.0;
            ok = ok && m.max_iota1 < 1.0 && m.max_iota2 < 1.0;
            ok = ok && m.kappa_max <= 0.1 && m.kappa_min >= -1e-9;
            ok = ok && m.max_v0_fro2 <= 100.0 + 1e-6 && m.max_v1_fro2 <= 100.0 + 1e-6;
            ok = ok && m.runtime_s < 10.0;
            ss << m.trajectory << " mean (" << m.mean_err.x << ", " << m.mean_err.y << ", "
               << m.mean_err.z << ") in " << m.runtime_s << " s; ";
        }
        d = ss.str();
        return ok;
    });

    check(7, "event-triggered controller beats the PID baseline on x and y", s,
          [&](std::string& d) {
              bool ok = ellipse_pid.exit_code == 0 && fig8_pid.exit_code == 0;
              ok = ok && ellipse_et.metrics.mean_err.x < ellipse_pid.metrics.mean_err.x;
              ok = ok && ellipse_et.metrics.mean_err.y < ellipse_pid.metrics.mean_err.y;
              ok = ok && fig8_et.metrics.mean_err.x < fig8_pid.metrics.mean_err.x;
              ok = ok && fig8_et.metrics.mean_err.y < fig8_pid.metrics.mean_err.y;
              std::ostringstream ss;
              ss << "ellipse x " << ellipse_et.metrics.mean_err.x << " vs "
                 << ellipse_pid.metrics.mean_err.x << ", y " << ellipse_et.metrics.mean_err.y
                 << " vs " << ellipse_pid.metrics.mean_err.y << "; fig8 x "
                 << fig8_et.metrics.mean_err.x << " vs " << fig8_pid.metrics.mean_err.x << ", y "
                 << fig8_et.metrics.mean_err.y << " vs " << fig8_pid.metrics.mean_err.y;
              d = ss.str();
              return ok;
          });

    check(8, "same config and seed replay byte-identical telemetry", s, [&](std::string& d) {
        RunConfig cfg = nominal(TrajKind::ellipse, ControllerKind::et_nn, "det_a");
        const RunOutcome a = run_experiment(cfg);
        cfg.output.dir = (work_dir() / "det_b").string();
        const RunOutcome b = run_experiment(cfg);
        const bool ok = a.exit_code == 0 && b.exit_code == 0 &&
                        slurp(a.telemetry_path) == slurp(b.telemetry_path);
        d = ok ? "CSV bytes identical" : "CSV bytes differ";
        return ok;
    });

    check(9, "integrator shows fourth-order convergence", s, [&](std::string& d) {
        auto f = [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0]; };
        auto global_err = [&](double dt) {
            std::vector<double> x{1.0};
            Rk4Workspace ws;
            const long n = std::lround(1.0 / dt);
            for (long i = 0; i < n; ++i) rk4_step(f, std::span<double>(x), i * dt, dt, ws);
            return std::abs(x[0] - std::exp(1.0));
        };
        const double ratio = global_err(0.05) / global_err(0.025);
        std::ostringstream ss;
        ss << "error ratio under dt halving: " << ratio;
        d = ss.str();
        return ratio > 16.0 * 0.8 && ratio < 16.0 * 1.2;
    });

    check(10, "settling-time calculator prints T <= 10", s, [&](std::string& d) {
        if (cli.empty()) {
            // no CLI path given: exercise the library function directly
            const double T = settling_bound(1.0, 1.0, 0.75, 0.5);
            d = "library path only, T = " + fmt_double(T);
            return T == 10.0;
        }
        const std::string cmd = cli + " bound --l 1 --m 1 --omega 0.5 --p 0.75";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            d = "popen failed";
            return false;
        }
        char buf[256];
        std::string out;
        while (fgets(buf, sizeof(buf), pipe)) out += buf;
        const int rc = pclose(pipe);
        d = "cli printed: " + out.substr(0, out.find('\n'));
        return rc == 0 && out.find("T <= 10\n") != std::string::npos;
    });

    std::printf("%d/%d criteria passed\n", s.passed, s.passed + s.failed);
    return s.failed == 0 ? 0 : 1;
}
