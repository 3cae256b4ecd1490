// uamsim - batch experiment harness for the event-triggered backstepping
// tracking simulator.
//
// Verbs:
//   run <config> [--out DIR]          execute one configured run
//   compare <ours> <reference>        error-reduction table of two metrics files
//   sweep <glob>                      run every config matching a glob
//   bound --l L --m M [--n N] --omega W --p P
//                                     fixed-time settling/value bound calculator
#include <glob.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uam/csv.hpp"
#include "uam/harness.hpp"
#include "uam/metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

int do_run(const std::string& config_path, const std::string& out_override) {
    uam::RunConfig cfg;
    try {
        cfg = uam::load_config(config_path);
    } catch (const uam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!out_override.empty()) cfg.output.dir = out_override;

    const uam::RunOutcome out = uam::run_experiment(cfg);
    if (out.exit_code != 0) {
        std::cerr << out.error << "\n";
        std::cerr << "partial telemetry retained at " << out.telemetry_path << "\n";
        return out.exit_code;
    }
    const uam::MetricsReport& m = out.metrics;
    if (cfg.setup.controller != uam::ControllerKind::baseline_pid && m.kappa_min < -1e-9) {
        std::cerr << "warning: trigger variable dipped to " << uam::fmt_double(m.kappa_min)
                  << "\n";
    }
    if (m.windup_count > 0) {
        std::cerr << "warning: integral clamp engaged " << m.windup_count << " times\n";
    }
    std::cout << "run " << m.controller << " / " << m.trajectory << ": mean |e| = ("
              << uam::fmt_double(m.mean_err.x) << ", " << uam::fmt_double(m.mean_err.y) << ", "
              << uam::fmt_double(m.mean_err.z) << ") m, events " << m.event_count << "/"
              << m.total_ticks << " (ratio " << uam::fmt_double(m.transmission_ratio) << ")\n";
    std::cout << "metrics: " << out.metrics_path << "\n";
    return kExitOk;
}

int do_compare(const std::string& ours_path, const std::string& ref_path,
               const std::string& out_file) {
    try {
        const uam::MetricsReport ours = uam::read_metrics(ours_path);
        const uam::MetricsReport ref = uam::read_metrics(ref_path);
        const uam::CompareTable t = uam::compare(ours, ref);
        std::cout << uam::render_compare(t);
        if (!out_file.empty()) {
            std::ofstream f(out_file);
            uam::write_compare(t, f);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return kExitConfig;
    }
}

int do_sweep(const std::string& pattern) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc != 0) {
        std::cerr << "sweep: no configs match '" << pattern << "'\n";
        return kExitConfig;
    }
    std::vector<std::string> paths(g.gl_pathv, g.gl_pathv + g.gl_pathc);
    ::globfree(&g);

    // independent runs; each writes to its own output directory
    std::vector<std::future<int>> jobs;
    jobs.reserve(paths.size());
    for (const auto& p : paths) {
        jobs.push_back(std::async(std::launch::async, [p] { return do_run(p, ""); }));
    }
    int worst = kExitOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const int code = jobs[i].get();
        std::cout << paths[i] << ": " << (code == 0 ? "ok" : "FAILED") << "\n";
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-triggered backstepping tracking simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "execute one configured run");
    run->add_option("config", config_path, "run configuration file")->required();
    run->add_option("--out", out_dir, "override the output directory");

    std::string ours_path, ref_path, compare_out;
    auto* cmp = app.add_subcommand("compare", "error reductions of one run against a reference");
    cmp->add_option("ours", ours_path, "metrics file of the candidate run")->required();
    cmp->add_option("reference", ref_path, "metrics file of the reference run")->required();
    cmp->add_option("--out", compare_out, "also write the table as key = value");

    std::string pattern;
    auto* sweep = app.add_subcommand("sweep", "run every config matching a glob");
    sweep->add_option("glob", pattern, "config file glob, e.g. 'configs/*.ini'")->required();

    double b_l = 0.0, b_m = 0.0, b_n = -1.0, b_omega = 0.0, b_p = 0.0;
    auto* bound = app.add_subcommand("bound", "fixed-time settling/value bound calculator");
    bound->add_option("--l", b_l, "fractional-power decay constant")->required();
    bound->add_option("--m", b_m, "quadratic decay constant")->required();
    bound->add_option("--n", b_n, "residual constant (enables the value bound)");
    bound->add_option("--omega", b_omega, "split factor in (0, 1)")->required();
    bound->add_option("--p", b_p, "fractional exponent in (0.5, 1)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (run->parsed()) return do_run(config_path, out_dir);
    if (cmp->parsed()) return do_compare(ours_path, ref_path, compare_out);
    if (sweep->parsed()) return do_sweep(pattern);
    if (bound->parsed()) {
        try {
            const double T = uam::settling_bound(b_l, b_m, b_p, b_omega);
            std::cout << "T <= " << uam::fmt_double(T) << "\n";
            if (b_n >= 0.0) {
                const double V = uam::value_bound(b_l, b_m, b_n, b_p, b_omega);
                std::cout << "V <= " << uam::fmt_double(V) << "\n";
            }
            return kExitOk;
        } catch (const std::domain_error& e) {
            std::cerr << "bound: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    return kExitOk;
}
