// metrics.hpp - per-run error/trigger statistics in the comparison-table
// format, persisted in the same flat key = value dialect as configs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "uam/sim.hpp"

namespace uam {

struct MetricsReport {
    std::string controller;
    std::string trajectory;
    double t_end = 0.0;
    double window_start = 0.0;
    double control_period = 0.0;
    double dt_plant = 0.0;
    std::uint64_t seed = 0;
    bool diverged = false;

    Vec3 max_err;   // per-axis max |p - p_d| over the window, m
    Vec3 mean_err;  // per-axis mean |p - p_d| over the window, m

    long event_count = 0;
    long total_ticks = 0;
    double transmission_ratio = 0.0;
    double min_interevent = 0.0;   // s
    double mean_interevent = 0.0;  // s
    double final_vs = 0.0;
    double runtime_s = 0.0;

    // run monitors (diagnostics)
    double etc_ineq_max = 0.0;
    double hold_slack_max = 0.0;
    double kappa_min = 0.0, kappa_max = 0.0;
    double max_y1 = 0.0, max_y2 = 0.0;
    double max_iota1 = 0.0, max_iota2 = 0.0;
    double max_v0_fro2 = 0.0, max_v1_fro2 = 0.0;
    long windup_count = 0;
};

// streaming accumulation over tick records
class MetricsAccum {
  public:
    explicit MetricsAccum(double window_start) : window_start_(window_start) {}

    void add(const TickRecord& r);
    // fills the error/trigger fields; caller sets identification and monitors
    void finalize(MetricsReport& rep) const;

  private:
    double window_start_;
    Vec3 abs_sum_, abs_max_;
    long window_count_ = 0;
    long events_ = 0;
    long ticks_ = 0;
    double last_event_t_ = 0.0;
    bool have_event_ = false;
    double min_gap_ = 0.0, gap_sum_ = 0.0;
    long gaps_ = 0;
    double final_vs_ = 0.0;
};

void write_metrics(const MetricsReport& rep, std::ostream& out);
MetricsReport read_metrics(const std::string& path);

struct CompareTable {
    Vec3 max_ours, max_ref, max_reduced_pct;
    Vec3 mean_ours, mean_ref, mean_reduced_pct;
};

// reductions of `ours` relative to `ref`: (ref - ours)/ref * 100, rounded to
// two decimals; rejects reports from different trajectories or horizons
CompareTable compare(const MetricsReport& ours, const MetricsReport& ref);

std::string render_compare(const CompareTable& t);
void write_compare(const CompareTable& t, std::ostream& out);  // key = value form

}  // namespace uam
