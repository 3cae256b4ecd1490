#include "uam/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace uam {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* const kTelemetryHeader =
    "t,p_x,p_y,p_z,pd_x,pd_y,pd_z,y1_x,y1_y,y1_z,y2_x,y2_y,y2_z,"
    "u_held_x,u_held_y,u_held_z,kappa,event,V_s,fhat_x,fhat_y,fhat_z";

TelemetryWriter::TelemetryWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open telemetry file '" + path + "'");
    out_ << kTelemetryHeader << "\n";
}

namespace {
void put3(std::ofstream& o, const Vec3& v) {
    o << ',' << fmt_double(v.x) << ',' << fmt_double(v.y) << ',' << fmt_double(v.z);
}
}  // namespace

void TelemetryWriter::row(const TickRecord& r) {
    out_ << fmt_double(r.t);
    put3(out_, r.p);
    put3(out_, r.p_d);
    put3(out_, r.y1);
    put3(out_, r.y2);
    put3(out_, r.u_held);
    out_ << ',' << fmt_double(r.kappa) << ',' << (r.event ? 1 : 0) << ',' << fmt_double(r.v_s);
    put3(out_, r.fhat);
    out_ << '\n';
}

WeightsWriter::WeightsWriter(const std::string& path, const NNConfig& cfg) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open weights file '" + path + "'");
    out_ << "t";
    for (int r = 0; r < cfg.v0_rows(); ++r) {
        for (int c = 0; c < cfg.v0_cols(); ++c) out_ << ",v0_" << r << "_" << c;
    }
    for (int r = 0; r < cfg.v1_rows(); ++r) {
        for (int c = 0; c < cfg.v1_cols(); ++c) out_ << ",v1_" << r << "_" << c;
    }
    out_ << "\n";
}

void WeightsWriter::row(double t, std::span<const double> v0, std::span<const double> v1) {
    out_ << fmt_double(t);
    for (double v : v0) out_ << ',' << fmt_double(v);
    for (double v : v1) out_ << ',' << fmt_double(v);
    out_ << '\n';
}

}  // namespace uam
