#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lhk/quadrature.hpp"

namespace lhk::harness {

/// One verification result. Metrics carrying a tolerance get pass/fail;
/// quantities without a paper constant stay "measured".
struct Metric {
    std::string name;
    double value = 0.0;
    double reference = std::numeric_limits<double>::quiet_NaN(); // bound or expected value
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string status; // "pass" | "fail" | "measured"
    std::string note;
};

struct EstimateReport {
    std::string suite;
    std::string version;
    std::string config_digest;
    std::uint64_t grid_checksum = 0;
    std::vector<std::pair<std::string, std::string>> params; // ordered
    std::vector<Metric> metrics;
    std::vector<std::string> warnings;

    bool all_pass() const;
    int fail_count() const;
    Metric& add_pass_fail(const std::string& name, double value, double reference,
                          double tolerance, bool pass, const std::string& note = "");
    Metric& add_measured(const std::string& name, double value, const std::string& note = "");
};

/// 17-significant-digit fixed formatting; byte-deterministic for equal bits.
std::string fmt17(double v);

/// Deterministic serializations: fixed field order, fmt17 floats.
std::string report_to_json(const EstimateReport& r);
std::string report_to_csv(const EstimateReport& r);

void emit_report(const EstimateReport& r, const std::string& format, const std::string& path);

/// CSV dumps with fixed headers ("lambda,m,re,im" / "x,t,re,im").
std::string spectral_to_csv(const quad::SpectralFunction& F);
std::string grid_to_csv(const quad::GridFunction& f);
void write_text_file(const std::string& path, const std::string& content);

} // namespace lhk::harness
