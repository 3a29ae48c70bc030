#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pqha/commutation_identities.hpp"
#include "pqha/hamiltonians.hpp"

namespace pqha {

struct RunConfig {
    DsfKind kind = DsfKind::Undeformed;
    DeformationParams params;
    GaugeSpec gauge = GaugeSpec::symmetric();
    int dim = default_dim;
    int margin = 4;
    std::vector<double> table;  // Custom kind only
    std::optional<EtaSpec> eta_a_override;  // probe a different adjoint relation

    const std::vector<double>* table_ptr() const {
        return kind == DsfKind::Custom ? &table : nullptr;
    }
};

// Informational results that are reported but do not gate the exit status:
// properties the construction does not promise (monotone spectra, vanishing
// phi(0) for every family) and fitted diagnostics.
struct Finding {
    std::string name;
    double value = 0.0;
    std::string note;
};

struct SuiteReport {
    RunConfig config;
    std::vector<CheckReport> checks;
    std::vector<Finding> findings;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckReport& c) { return c.pass; });
    }
};

// Runs every identity check the representation supports, in a fixed order.
// Checks always evaluate the honest dense-matrix arithmetic; which naive
// hermiticity statements are *expected* depends on the gauge preset, so only
// those are included (symmetric: both X and P, case-a: P, case-b: X). For
// p != q the symmetric-gauge hermiticity checks fail by construction; that
// failure is the point, and it is reported rather than suppressed.
inline SuiteReport run_verify_suite(const RunConfig& cfg) {
    cfg.params.validate();
    SuiteReport rep_out;
    rep_out.config = cfg;

    const TruncatedRep rep = build_rep(cfg.kind, cfg.params, cfg.gauge, cfg.dim, cfg.table_ptr());
    const int m = cfg.margin;
    check_margin(cfg.dim, m);
    auto& checks = rep_out.checks;

    for (auto& c : verify_doa(rep, m)) checks.push_back(c);

    const PositionMomentumPair pair = build_xp(rep);
    const Matrix h_ladder = build_H(rep, HamiltonianForm::Ladder);

    checks.push_back(make_check(
        "heisenberg_commutator",
        pq_commutator_residual(pair, cfg.params, m, cfg.params.mu != 0.0 ? &h_ladder : nullptr),
        1e-10, m));
    checks.push_back(make_check("skew_hermiticity",
                                skew_hermiticity_residual(pair, cfg.params, m), 1e-10, m));

    {
        const auto [lower, raise] = recover_ladder(pair, cfg.params);
        const double r = std::max(scaled_residual(lower, rep.lower_op, 1),
                                  scaled_residual(raise, rep.raise_op, 1));
        checks.push_back(make_check("ladder_recovery", r, 1e-12, 1));
    }

    const EtaSpec eta_a = cfg.eta_a_override ? *cfg.eta_a_override : eta_a_of_gauge(cfg.gauge);
    checks.push_back(make_check("conjugation_raise",
                                conjugation_residual(rep, eta_a, ConjugationForm::Left),
                                1e-11, 0));

    const double Q = cfg.params.Q();
    const EtaPair metrics = derive_eta_closed_forms(eta_a);
    checks.push_back(make_check("x_pseudo_hermitian",
                                pseudo_hermiticity_residual(pair.X, metrics.eta_x, Q, m),
                                1e-10, m));
    checks.push_back(make_check("p_pseudo_hermitian",
                                pseudo_hermiticity_residual(pair.P, metrics.eta_p, Q, m),
                                1e-10, m));

    if (cfg.gauge.label == "symmetric" || cfg.gauge.label == "case-b")
        checks.push_back(make_check("x_hermitian", hermiticity_residual(pair.X, m), 1e-10, m));
    if (cfg.gauge.label == "symmetric" || cfg.gauge.label == "case-a")
        checks.push_back(make_check("p_hermitian", hermiticity_residual(pair.P, m), 1e-10, m));

    const FnSpec linear = FnSpec::poly({1.0, 0.0});
    checks.push_back(make_check("fn_x_permutation", fn_x_residual(rep, linear, m), 1e-10, m));
    checks.push_back(make_check("fn_p_permutation", fn_p_residual(rep, linear, m), 1e-10, m));
    checks.push_back(make_check("ladder_shift_up",
                                ladder_shift_residual(rep, linear, +1, m), 1e-10, m));
    checks.push_back(make_check("ladder_shift_down",
                                ladder_shift_residual(rep, linear, -1, m), 1e-10, m));
    checks.push_back(make_check("a_remainder_reorder", a_tilde_reorder_residual(rep), 1e-12, 0));
    checks.push_back(make_check("a_remainder_commutation",
                                a_tilde_commutation_residual(rep, m), 1e-10, m));

    {
        const int md = std::max(m, 1);
        // n_max = dim-1 keeps the phi lookups within the same range build_rep used
        const std::vector<double> en = spectrum_values(cfg.kind, cfg.params, cfg.dim - 1,
                                                       cfg.table_ptr());
        // level 0 realizes phi(1)/2 because the matrices never see phi(0)
        const Matrix target =
            diagonal_of(cfg.dim, [&](int n) {
                return n == 0 ? 0.5 * rep.phi[1] : en[static_cast<size_t>(n)];
            });
        checks.push_back(make_check("hamiltonian_ladder_spectrum",
                                    scaled_residual(h_ladder, target, md), 1e-13, md));
    }

    if (cfg.kind == DsfKind::NonstandardPQ) {
        const Matrix hq = build_H(rep, HamiltonianForm::Quadrature);
        const Matrix hr = build_H(rep, HamiltonianForm::QuadratureReduced);
        const Matrix hn = build_H(rep, HamiltonianForm::Normal);
        checks.push_back(make_check("hamiltonian_quadrature_equivalence",
                                    scaled_residual(hq, h_ladder, m), 1e-9, m));
        checks.push_back(make_check("hamiltonian_reduced_equivalence",
                                    scaled_residual(hr, h_ladder, m), 1e-9, m));
        checks.push_back(make_check("hamiltonian_normal_equivalence",
                                    scaled_residual(hn, h_ladder, m), 1e-9, m));
    }

    {
        const int mh = std::max(m, 2);
        const Matrix ht = build_H_tilde(rep, metrics.eta_x, metrics.eta_p);
        checks.push_back(make_check("h_tilde_hermitian", hermiticity_residual(ht, mh),
                                    1e-11, mh));
    }

    // findings (never gate the exit status)
    {
        const auto phys = validate_physical(cfg.kind, cfg.params, cfg.dim, cfg.table_ptr());
        rep_out.findings.push_back(
            {"phi0_zero", phys.phi0,
             phys.zero_ok ? "phi(0) vanishes" : "phi(0) does not vanish"});
        if (!phys.positive_ok)
            rep_out.findings.push_back({"phi_positive",
                                        static_cast<double>(phys.first_nonpositive),
                                        "first non-positive phi level"});

        const auto en = spectrum_values(cfg.kind, cfg.params, cfg.dim - 1, cfg.table_ptr());
        int first_drop = -1;
        for (size_t n = 0; n + 1 < en.size(); ++n)
            if (!(en[n + 1] > en[n])) { first_drop = static_cast<int>(n); break; }
        rep_out.findings.push_back({"spectrum_monotone", first_drop < 0 ? 1.0 : 0.0,
                                    first_drop < 0 ? "E(n) strictly increasing"
                                                   : "first E(n+1) <= E(n) at n=" +
                                                         std::to_string(first_drop)});

        if (cfg.params.mu != 0.0 || cfg.kind == DsfKind::TwoSidedEqualGH) {
            try {
                const MuFit fit = fit_mu(pair, cfg.params, h_ladder, m);
                rep_out.findings.push_back({"mu_fit", fit.mu_hat,
                                            "post-fit residual " +
                                                std::to_string(fit.residual_after)});
            } catch (const DegenerateFit& e) {
                rep_out.findings.push_back({"mu_fit", 0.0, std::string("not fitted: ") + e.what()});
            }
        }
    }

    return rep_out;
}

// Inclusive numeric range for sweeps; a bare value is a single-point range.
struct SweepRange {
    double start = 1.0;
    double stop = 1.0;
    double step = 0.0;

    std::vector<double> values() const {
        if (step <= 0.0 || stop <= start) return {start};
        std::vector<double> v;
        const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) v.push_back(start + step * i);
        return v;
    }
};

struct SweepRow {
    double p = 0, q = 0, mu = 0;
    SuiteReport report;
};

// Row-major grid over (p, q, mu): p outermost, mu innermost.
inline std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepRange& pr,
                                       const SweepRange& qr, const SweepRange& mr) {
    std::vector<SweepRow> rows;
    for (double p : pr.values())
        for (double q : qr.values())
            for (double mu : mr.values()) {
                RunConfig cfg = base;
                cfg.params.p = p;
                cfg.params.q = q;
                cfg.params.mu = mu;
                rows.push_back({p, q, mu, run_verify_suite(cfg)});
            }
    return rows;
}

}  // namespace pqha
