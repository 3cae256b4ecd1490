// csv.hpp - telemetry CSV writer with a fixed, versioned column order.
#pragma once

#include <fstream>
#include <string>

#include "uam/nn.hpp"
#include "uam/sim.hpp"

namespace uam {

// shortest round-trip decimal form, '.' decimal separator, no locale
std::string fmt_double(double v);

extern const char* const kTelemetryHeader;

class TelemetryWriter {
  public:
    explicit TelemetryWriter(const std::string& path);

    void row(const TickRecord& r);
    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
};

// flattened weight-matrix dump at a configurable tick decimation
class WeightsWriter {
  public:
    WeightsWriter(const std::string& path, const NNConfig& cfg);

    void row(double t, std::span<const double> v0, std::span<const double> v1);

  private:
    std::ofstream out_;
};

}  // namespace uam
