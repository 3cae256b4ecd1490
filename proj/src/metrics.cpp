#include "uam/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uam/csv.hpp"

namespace uam {

void MetricsAccum::add(const TickRecord& r) {
    ticks_ += 1;
    final_vs_ = r.v_s;
    if (r.event) {
        events_ += 1;
        if (have_event_) {
            const double gap = r.t - last_event_t_;
            min_gap_ = gaps_ == 0 ? gap : std::min(min_gap_, gap);
            gap_sum_ += gap;
            gaps_ += 1;
        }
        last_event_t_ = r.t;
        have_event_ = true;
    }
    if (r.t + 1e-12 < window_start_) return;
    const Vec3 e = r.p - r.p_d;
    for (int j = 0; j < 3; ++j) {
        const double a = std::abs(e[j]);
        abs_sum_[j] += a;
        if (a > abs_max_[j]) abs_max_[j] = a;
    }
    window_count_ += 1;
}

void MetricsAccum::finalize(MetricsReport& rep) const {
    rep.max_err = abs_max_;
    rep.mean_err = window_count_ > 0 ? abs_sum_ / double(window_count_) : Vec3{};
    rep.event_count = events_;
    rep.total_ticks = ticks_;
    rep.transmission_ratio = ticks_ > 0 ? double(events_) / double(ticks_) : 0.0;
    rep.min_interevent = gaps_ > 0 ? min_gap_ : 0.0;
    rep.mean_interevent = gaps_ > 0 ? gap_sum_ / double(gaps_) : 0.0;
    rep.final_vs = final_vs_;
    rep.window_start = window_start_;
}

void write_metrics(const MetricsReport& rep, std::ostream& o) {
    auto kv = [&o](const char* k, const std::string& v) { o << k << " = " << v << "\n"; };
    auto kvd = [&o](const char* k, double v) { o << k << " = " << fmt_double(v) << "\n"; };
    auto kvl = [&o](const char* k, long v) { o << k << " = " << v << "\n"; };
    kv("controller", rep.controller);
    kv("trajectory", rep.trajectory);
    kvd("t_end", rep.t_end);
    kvd("window_start", rep.window_start);
    kvd("control_period", rep.control_period);
    kvd("dt_plant", rep.dt_plant);
    kvl("seed", long(rep.seed));
    kvl("diverged", rep.diverged ? 1 : 0);
    kvd("max_err_x", rep.max_err.x);
    kvd("max_err_y", rep.max_err.y);
    kvd("max_err_z", rep.max_err.z);
    kvd("mean_err_x", rep.mean_err.x);
    kvd("mean_err_y", rep.mean_err.y);
    kvd("mean_err_z", rep.mean_err.z);
    kvl("event_count", rep.event_count);
    kvl("total_ticks", rep.total_ticks);
    kvd("transmission_ratio", rep.transmission_ratio);
    kvd("min_interevent", rep.min_interevent);
    kvd("mean_interevent", rep.mean_interevent);
    kvd("final_vs", rep.final_vs);
    kvd("runtime_s", rep.runtime_s);
    kvd("etc_ineq_max", rep.etc_ineq_max);
    kvd("hold_slack_max", rep.hold_slack_max);
    kvd("kappa_min", rep.kappa_min);
    kvd("kappa_max", rep.kappa_max);
    kvd("max_y1", rep.max_y1);
    kvd("max_y2", rep.max_y2);
    kvd("max_iota1", rep.max_iota1);
    kvd("max_iota2", rep.max_iota2);
    kvd("max_v0_fro2", rep.max_v0_fro2);
    kvd("max_v1_fro2", rep.max_v1_fro2);
    kvl("windup_count", rep.windup_count);
}

MetricsReport read_metrics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open metrics file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
    }
    auto want = [&](const char* k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error(path + ": missing key '" + std::string(k) + "'");
        return it->second;
    };
    auto wantd = [&](const char* k) {
        const std::string v = want(k);
        double d = 0.0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), d);
        if (res.ec != std::errc{}) throw std::runtime_error(path + ": bad number for '" + k + "'");
        return d;
    };
    MetricsReport r;
    r.controller = want("controller");
    r.trajectory = want("trajectory");
    r.t_end = wantd("t_end");
    r.window_start = wantd("window_start");
    r.control_period = wantd("control_period");
    r.dt_plant = wantd("dt_plant");
    r.seed = std::uint64_t(wantd("seed"));
    r.diverged = wantd("diverged") != 0.0;
    r.max_err = {wantd("max_err_x"), wantd("max_err_y"), wantd("max_err_z")};
    r.mean_err = {wantd("mean_err_x"), wantd("mean_err_y"), wantd("mean_err_z")};
    r.event_count = long(wantd("event_count"));
    r.total_ticks = long(wantd("total_ticks"));
    r.transmission_ratio = wantd("transmission_ratio");
    r.min_interevent = wantd("min_interevent");
    r.mean_interevent = wantd("mean_interevent");
    r.final_vs = wantd("final_vs");
    r.runtime_s = wantd("runtime_s");
    r.etc_ineq_max = wantd("etc_ineq_max");
    r.hold_slack_max = wantd("hold_slack_max");
    r.kappa_min = wantd("kappa_min");
    r.kappa_max = wantd("kappa_max");
    r.max_y1 = wantd("max_y1");
    r.max_y2 = wantd("max_y2");
    r.max_iota1 = wantd("max_iota1");
    r.max_iota2 = wantd("max_iota2");
    r.max_v0_fro2 = wantd("max_v0_fro2");
    r.max_v1_fro2 = wantd("max_v1_fro2");
    r.windup_count = long(wantd("windup_count"));
    return r;
}

namespace {
double reduced_pct(double ref, double ours) {
    if (ref == 0.0) return 0.0;
    return std::round((ref - ours) / ref * 10000.0) / 100.0;  // two decimals
}
}  // namespace

CompareTable compare(const MetricsReport& ours, const MetricsReport& ref) {
    if (ours.trajectory != ref.trajectory) {
        throw std::invalid_argument("compare: trajectories differ (" + ours.trajectory + " vs " +
                                    ref.trajectory + ")");
    }
    if (ours.t_end != ref.t_end || ours.window_start != ref.window_start ||
        ours.control_period != ref.control_period) {
        throw std::invalid_argument("compare: horizons differ");
    }
    CompareTable t;
    t.max_ours = ours.max_err;
    t.max_ref = ref.max_err;
    t.mean_ours = ours.mean_err;
    t.mean_ref = ref.mean_err;
    for (int j = 0; j < 3; ++j) {
        t.max_reduced_pct[j] = reduced_pct(ref.max_err[j], ours.max_err[j]);
        t.mean_reduced_pct[j] = reduced_pct(ref.mean_err[j], ours.mean_err[j]);
    }
    return t;
}

std::string render_compare(const CompareTable& t) {
    char buf[256];
    std::string out;
    out += "Error      Row            x (m)        y (m)        z (m)\n";
    auto row = [&](const char* group, const char* name, const Vec3& v, bool pct) {
        if (pct) {
            std::snprintf(buf, sizeof(buf), "%-10s %-10s %11.2f%% %11.2f%% %11.2f%%\n", group, name,
                          v.x, v.y, v.z);
        } else {
            std::snprintf(buf, sizeof(buf), "%-10s %-10s %12.4f %12.4f %12.4f\n", group, name, v.x,
                          v.y, v.z);
        }
        out += buf;
    };
    row("Max", "ours", t.max_ours, false);
    row("", "reference", t.max_ref, false);
    row("", "reduced", t.max_reduced_pct, true);
    row("Mean", "ours", t.mean_ours, false);
    row("", "reference", t.mean_ref, false);
    row("", "reduced", t.mean_reduced_pct, true);
    return out;
}

void write_compare(const CompareTable& t, std::ostream& o) {
    auto kv = [&o](const char* k, const Vec3& v) {
        o << k << "_x = " << fmt_double(v.x) << "\n";
        o << k << "_y = " << fmt_double(v.y) << "\n";
        o << k << "_z = " << fmt_double(v.z) << "\n";
    };
    kv("max_ours", t.max_ours);
    kv("max_ref", t.max_ref);
    kv("max_reduced_pct", t.max_reduced_pct);
    kv("mean_ours", t.mean_ours);
    kv("mean_ref", t.mean_ref);
    kv("mean_reduced_pct", t.mean_reduced_pct);
}

}  // namespace uam
