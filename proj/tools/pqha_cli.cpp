// Command line front end: evaluate structure functions, run the identity
// suite, derive metric closed forms, and sweep parameter grids.
//
// Exit codes: 0 all requested checks pass, 1 at least one check failed,
// 2 invalid input (bad flags, unphysical structure function, parse errors).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pqha/report_io.hpp"

namespace {

struct CommonOpts {
    std::string kind = "undeformed";
    double p = 1.0, q = 1.0, mu = 0.0, hbar = 1.0;
    int dim = pqha::default_dim;
    int margin = 4;
    std::string gauge = "symmetric";
    std::string eta_a;   // optional explicit adjoint metric
    std::string table;   // comma separated phi values for kind=custom
    std::string format;  // subcommand specific default
    std::string out;     // output path, empty = stdout
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& default_format) {
    o.format = default_format;
    cmd->add_option("--kind", o.kind, "structure function family");
    cmd->add_option("--p", o.p, "left deformation parameter");
    cmd->add_option("--q", o.q, "right deformation parameter");
    cmd->add_option("--mu", o.mu, "commutator deformation strength");
    cmd->add_option("--hbar", o.hbar, "Planck constant");
    cmd->add_option("--dim", o.dim, "truncation dimension");
    cmd->add_option("--margin", o.margin, "rows/cols ignored at the truncation edge");
    cmd->add_option("--gauge", o.gauge, "ladder weight: symmetric, case-a, case-b, w:<g1>,<g0>");
    cmd->add_option("--eta-a", o.eta_a, "adjoint metric, e.g. qpow:0,1,-1 or Q^(0/1*N^2+1/1*N+-1/1)");
    cmd->add_option("--table", o.table, "comma separated phi values (kind=custom)");
    cmd->add_option("--format", o.format, "output format");
    cmd->add_option("--out", o.out, "write output to file instead of stdout");
}

std::vector<double> parse_table(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        const double x = std::stod(item, &used);
        if (used == 0) throw std::invalid_argument("bad table entry: " + item);
        v.push_back(x);
    }
    return v;
}

pqha::RunConfig make_config(const CommonOpts& o) {
    pqha::RunConfig cfg;
    const auto kind = pqha::parse_dsf_kind(o.kind);
    if (!kind) throw std::invalid_argument("unknown kind: " + o.kind);
    cfg.kind = *kind;
    cfg.params = {o.p, o.q, o.mu, o.hbar};
    const auto gauge = pqha::parse_gauge(o.gauge);
    if (!gauge) throw std::invalid_argument("unknown gauge: " + o.gauge);
    cfg.gauge = *gauge;
    cfg.dim = o.dim;
    cfg.margin = o.margin;
    if (!o.table.empty()) cfg.table = parse_table(o.table);
    if (!o.eta_a.empty()) {
        const auto spec = pqha::EtaSpec::parse(o.eta_a);
        if (!spec) throw std::invalid_argument("bad eta spec: " + o.eta_a);
        cfg.eta_a_override = *spec;
    }
    return cfg;
}

void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + o.out);
    f << payload;
}

// "a:b:c" inclusive range, or a single value
pqha::SweepRange parse_range(const std::string& s) {
    pqha::SweepRange r;
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() == 1) {
        r.start = r.stop = parts[0];
        r.step = 0.0;
    } else if (parts.size() == 3) {
        r.start = parts[0];
        r.stop = parts[1];
        r.step = parts[2];
    } else {
        throw std::invalid_argument("range must be <value> or <start>:<stop>:<step>: " + s);
    }
    return r;
}

std::string values_json(const pqha::RunConfig& cfg, const std::string& key,
                        const std::vector<double>& values) {
    std::string s = "{\"params\":" + pqha::params_json(cfg) + ",\"" + key + "\":[";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += pqha::fmt17(values[i]);
    }
    s += "]}\n";
    return s;
}

int run_dsf(const CommonOpts& o, int n_max) {
    const pqha::RunConfig cfg = make_config(o);
    std::vector<double> phi(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        phi[static_cast<size_t>(n)] = pqha::eval_dsf(cfg.kind, cfg.params, n, cfg.table_ptr());
    emit(o, o.format == "json" ? values_json(cfg, "phi", phi) : pqha::table_csv("phi", phi));
    return 0;
}

// Spectrum JSON is an array of {n, E} pairs; CSV mirrors it as columns n,E.
std::string spectrum_json(const std::vector<double>& en) {
    std::string s = "[";
    for (size_t n = 0; n < en.size(); ++n) {
        if (n) s += ",";
        s += "{\"n\":" + std::to_string(n) + ",\"E\":" + pqha::fmt17(en[n]) + "}";
    }
    s += "]\n";
    return s;
}

int run_spectrum(const CommonOpts& o, int n_max) {
    const pqha::RunConfig cfg = make_config(o);
    const auto en = pqha::spectrum_values(cfg.kind, cfg.params, n_max, cfg.table_ptr());
    emit(o, o.format == "json" ? spectrum_json(en) : pqha::table_csv("E", en));
    return 0;
}

int run_verify(const CommonOpts& o) {
    const pqha::RunConfig cfg = make_config(o);
    const pqha::SuiteReport rep = pqha::run_verify_suite(cfg);
    emit(o, o.format == "json" ? pqha::suite_json(rep) : pqha::suite_text(rep));
    return rep.all_pass() ? 0 : 1;
}

int run_eta(const CommonOpts& o) {
    const pqha::RunConfig cfg = make_config(o);
    const pqha::EtaSpec eta_a =
        cfg.eta_a_override ? *cfg.eta_a_override : pqha::eta_a_of_gauge(cfg.gauge);
    const pqha::EtaPair pair = pqha::derive_eta_closed_forms(eta_a);
    const bool ok = pqha::derive_consistency(pair);
    const pqha::GaugeSpec gauge = pqha::gauge_for_eta_a(eta_a);
    std::string s;
    if (o.format == "json") {
        s = "{\"eta_a\":" + pqha::json_str(eta_a.to_string()) +
            ",\"eta_x\":" + pqha::json_str(pair.eta_x.to_string()) +
            ",\"eta_p\":" + pqha::json_str(pair.eta_p.to_string()) +
            ",\"consistent\":" + (ok ? "true" : "false") +
            ",\"gauge\":{\"g1\":" + pqha::fmt17(gauge.g1) +
            ",\"g0\":" + pqha::fmt17(gauge.g0) + "}}\n";
    } else {
        s = "eta_a = " + eta_a.to_string() + "\neta_x = " + pair.eta_x.to_string() +
            "\neta_p = " + pair.eta_p.to_string() +
            "\nconsistent = " + (ok ? "yes" : "no") + "\ngauge weights: g1=" +
            pqha::fmt17(gauge.g1) + " g0=" + pqha::fmt17(gauge.g0) + "\n";
    }
    emit(o, s);
    return ok ? 0 : 1;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& ps, const std::string& qs,
                  const std::string& ms) {
    const pqha::RunConfig base = make_config(o);
    const auto rows = pqha::run_sweep(base, parse_range(ps), parse_range(qs), parse_range(ms));
    emit(o, pqha::sweep_jsonl(rows));
    for (const auto& row : rows)
        if (!row.report.all_pass()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated Fock-space laboratory for two-parameter deformed oscillators"};
    app.require_subcommand(1);

    CommonOpts dsf_o, spec_o, ver_o, eta_o, sweep_o;
    int dsf_nmax = 16, spec_nmax = 16;
    std::string sweep_p = "1", sweep_q = "1", sweep_mu = "0";

    CLI::App* c_dsf = app.add_subcommand("dsf", "tabulate the structure function phi(n)");
    add_common(c_dsf, dsf_o, "csv");
    c_dsf->add_option("--n-max", dsf_nmax, "highest level to print");

    CLI::App* c_spec = app.add_subcommand("spectrum", "tabulate oscillator energies E(n)");
    add_common(c_spec, spec_o, "csv");
    c_spec->add_option("--n-max", spec_nmax, "highest level to print");

    CLI::App* c_ver = app.add_subcommand("verify", "run the full identity suite");
    add_common(c_ver, ver_o, "text");

    CLI::App* c_eta = app.add_subcommand("eta", "derive metric closed forms from eta_a");
    add_common(c_eta, eta_o, "text");

    CLI::App* c_sweep = app.add_subcommand("sweep", "run the suite over a parameter grid");
    add_common(c_sweep, sweep_o, "jsonl");
    c_sweep->add_option("--p-range", sweep_p, "p grid: <value> or start:stop:step");
    c_sweep->add_option("--q-range", sweep_q, "q grid: <value> or start:stop:step");
    c_sweep->add_option("--mu-range", sweep_mu, "mu grid: <value> or start:stop:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_dsf->parsed()) return run_dsf(dsf_o, dsf_nmax);
        if (c_spec->parsed()) return run_spectrum(spec_o, spec_nmax);
        if (c_ver->parsed()) return run_verify(ver_o);
        if (c_eta->parsed()) return run_eta(eta_o);
        if (c_sweep->parsed()) return run_sweep_cmd(sweep_o, sweep_p, sweep_q, sweep_mu);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
