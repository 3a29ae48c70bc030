#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "pqha/suite.hpp"

// Deterministic text emission: fixed key order, fixed float formatting, no
// locale dependence. Two runs with the same inputs produce identical bytes.

namespace pqha {

// 17 significant digits round-trips every double exactly.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

inline std::string params_json(const RunConfig& cfg) {
    std::string s = "{";
    s += "\"kind\":" + json_str(dsf_kind_name(cfg.kind));
    s += ",\"p\":" + fmt17(cfg.params.p);
    s += ",\"q\":" + fmt17(cfg.params.q);
    s += ",\"mu\":" + fmt17(cfg.params.mu);
    s += ",\"hbar\":" + fmt17(cfg.params.hbar);
    s += ",\"gauge\":" + json_str(cfg.gauge.label);
    if (cfg.eta_a_override) s += ",\"eta_a\":" + json_str(cfg.eta_a_override->to_string());
    s += "}";
    return s;
}

inline std::string check_json(const CheckReport& c) {
    return "{\"name\":" + json_str(c.name) + ",\"residual\":" + fmt17(c.residual) +
           ",\"tolerance\":" + fmt17(c.tolerance) + ",\"pass\":" + (c.pass ? "true" : "false") +
           "}";
}

inline std::string suite_json(const SuiteReport& rep) {
    std::string s = "{";
    s += "\"params\":" + params_json(rep.config);
    s += ",\"dim\":" + std::to_string(rep.config.dim);
    s += ",\"margin\":" + std::to_string(rep.config.margin);
    s += ",\"checks\":[";
    for (size_t i = 0; i < rep.checks.size(); ++i) {
        if (i) s += ",";
        s += check_json(rep.checks[i]);
    }
    s += "],\"findings\":[";
    for (size_t i = 0; i < rep.findings.size(); ++i) {
        if (i) s += ",";
        const Finding& f = rep.findings[i];
        s += "{\"name\":" + json_str(f.name) + ",\"value\":" + fmt17(f.value) +
             ",\"note\":" + json_str(f.note) + "}";
    }
    s += "],\"all_pass\":";
    s += rep.all_pass() ? "true" : "false";
    s += "}\n";
    return s;
}

// One JSON object per grid point, newline separated, grid order preserved.
inline std::string sweep_jsonl(const std::vector<SweepRow>& rows) {
    std::string s;
    for (const SweepRow& row : rows) {
        s += "{\"p\":" + fmt17(row.p) + ",\"q\":" + fmt17(row.q) + ",\"mu\":" + fmt17(row.mu);
        s += ",\"max_residual_by_check\":{";
        for (size_t i = 0; i < row.report.checks.size(); ++i) {
            if (i) s += ",";
            s += json_str(row.report.checks[i].name) + ":" +
                 fmt17(row.report.checks[i].residual);
        }
        s += "},\"pass\":";
        s += row.report.all_pass() ? "true" : "false";
        s += "}\n";
    }
    return s;
}

inline std::string table_csv(const std::string& value_header, const std::vector<double>& values) {
    std::string s = "n," + value_header + "\n";
    for (size_t n = 0; n < values.size(); ++n)
        s += std::to_string(n) + "," + fmt17(values[n]) + "\n";
    return s;
}

// Plain-text rendering of the same content, for terminals.
inline std::string suite_text(const SuiteReport& rep) {
    std::string s;
    s += "kind=" + std::string(dsf_kind_name(rep.config.kind)) + " p=" +
         fmt17(rep.config.params.p) +
         " q=" + fmt17(rep.config.params.q) + " mu=" + fmt17(rep.config.params.mu) +
         " gauge=" + rep.config.gauge.label + " dim=" + std::to_string(rep.config.dim) +
         " margin=" + std::to_string(rep.config.margin) + "\n";
    for (const CheckReport& c : rep.checks) {
        s += (c.pass ? "PASS " : "FAIL ") + c.name + "  residual=" + fmt17(c.residual) +
             "  tol=" + fmt17(c.tolerance) + "\n";
    }
    for (const Finding& f : rep.findings)
        s += "note " + f.name + "=" + fmt17(f.value) + "  (" + f.note + ")\n";
    s += rep.all_pass() ? "all checks passed\n" : "some checks failed\n";
    return s;
}

}  // namespace pqha
