#include "lhk/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lhk/version.hpp"

namespace lhk::harness {

bool EstimateReport::all_pass() const { return fail_count() == 0; }

int EstimateReport::fail_count() const {
    int n = 0;
    for (const Metric& m : metrics)
        if (m.status == "fail") ++n;
    return n;
}

Metric& EstimateReport::add_pass_fail(const std::string& name, double value, double reference,
                                      double tolerance, bool pass, const std::string& note) {
    metrics.push_back({name, value, reference, tolerance, pass ? "pass" : "fail", note});
    return metrics.back();
}

Metric& EstimateReport::add_measured(const std::string& name, double value,
                                     const std::string& note) {
    Metric m;
    m.name = name;
    m.value = value;
    m.status = "measured";
    m.note = note;
    metrics.push_back(m);
    return metrics.back();
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string report_to_json(const EstimateReport& r) {
    std::string o;
    o += "{\n";
    o += "  \"suite\": \"" + json_escape(r.suite) + "\",\n";
    o += "  \"version\": \"" + json_escape(r.version.empty() ? kVersion : r.version) + "\",\n";
    o += "  \"config_digest\": \"" + json_escape(r.config_digest) + "\",\n";
    char cs[20];
    std::snprintf(cs, sizeof cs, "%016llx", static_cast<unsigned long long>(r.grid_checksum));
    o += std::string("  \"grid_checksum\": \"") + cs + "\",\n";
    o += "  \"hp_norm_convention\": \"atomic proxy (sum |beta_k|^p)^{1/p}\",\n";
    o += "  \"params\": {";
    for (size_t i = 0; i < r.params.size(); ++i) {
        if (i) o += ", ";
        o += "\"" + json_escape(r.params[i].first) + "\": \"" + json_escape(r.params[i].second) +
             "\"";
    }
    o += "},\n";
    o += "  \"warnings\": [";
    for (size_t i = 0; i < r.warnings.size(); ++i) {
        if (i) o += ", ";
        o += "\"" + json_escape(r.warnings[i]) + "\"";
    }
    o += "],\n";
    o += "  \"metrics\": [\n";
    for (size_t i = 0; i < r.metrics.size(); ++i) {
        const Metric& m = r.metrics[i];
        o += "    {\"name\": \"" + json_escape(m.name) + "\", \"value\": " + fmt17(m.value) +
             ", \"reference\": " + fmt17(m.reference) + ", \"tolerance\": " + fmt17(m.tolerance) +
             ", \"status\": \"" + m.status + "\"";
        if (!m.note.empty()) o += ", \"note\": \"" + json_escape(m.note) + "\"";
        o += "}";
        if (i + 1 < r.metrics.size()) o += ",";
        o += "\n";
    }
    o += "  ],\n";
    o += std::string("  \"all_pass\": ") + (r.all_pass() ? "true" : "false") + "\n";
    o += "}\n";
    return o;
}

std::string report_to_csv(const EstimateReport& r) {
    std::string o = "suite,name,value,reference,tolerance,status,note\n";
    for (const Metric& m : r.metrics) {
        o += r.suite + "," + m.name + "," + fmt17(m.value) + "," +
             (std::isnan(m.reference) ? "" : fmt17(m.reference)) + "," +
             (std::isnan(m.tolerance) ? "" : fmt17(m.tolerance)) + "," + m.status + "," + m.note +
             "\n";
    }
    return o;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_report(const EstimateReport& r, const std::string& format, const std::string& path) {
    if (format == "json")
        write_text_file(path, report_to_json(r));
    else if (format == "csv")
        write_text_file(path, report_to_csv(r));
    else
        throw std::invalid_argument("emit_report: unknown format '" + format + "'");
}

std::string spectral_to_csv(const quad::SpectralFunction& F) {
    const quad::SpectralGrid& g = *F.grid;
    std::string o = "lambda,m,re,im\n";
    for (int k = 0; k < g.n_lambda_nodes(); ++k)
        for (int m = 0; m <= g.m_max; ++m) {
            const cplx v = F.at(k, m);
            o += fmt17(g.lam[k]) + "," + std::to_string(m) + "," + fmt17(v.real()) + "," +
                 fmt17(v.imag()) + "\n";
        }
    return o;
}

std::string grid_to_csv(const quad::GridFunction& f) {
    const quad::PhysicalGrid& g = *f.grid;
    std::string o = "x,t,re,im\n";
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nt(); ++j) {
            const cplx v = f.at(i, j);
            o += fmt17(g.x[i]) + "," + fmt17(g.t[j]) + "," + fmt17(v.real()) + "," +
                 fmt17(v.imag()) + "\n";
        }
    return o;
}

} // namespace lhk::harness
