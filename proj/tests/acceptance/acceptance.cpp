// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. All tolerances are
// pinned here, next to the checks they gate.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqha/report_io.hpp"

using namespace pqha;

namespace {

int g_passed = 0;
int g_total = 0;

void criterion(int idx, const std::string& name, bool ok) {
    ++g_total;
    if (ok) ++g_passed;
    std::printf("%s %2d  %s\n", ok ? "PASS" : "FAIL", idx, name.c_str());
    std::fflush(stdout);
}

const std::vector<double> grid{0.5, 0.8, 1.0, 1.25, 2.0};

// ---------------------------------------------------------------- criterion 1
bool dual_form_agreement() {
    for (double p : grid) {
        for (double q : grid) {
            const DeformationParams par{p, q};
            for (int n = 0; n <= 40; ++n) {
                const double a = eval_dsf(DsfKind::NonstandardPQ, par, n);
                const double b = eval_nonstandard_alt(par, n);
                if (a == 0.0 && b == 0.0) continue;
                const double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
                if (!(rel <= 1e-12)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2
bool equal_parameter_reduction() {
    for (double q0 : {0.5, 1.0, 1.7}) {
        const DeformationParams par{q0, q0};
        for (int n = 0; n <= 40; ++n) {
            const double target = n / q0;
            if (std::abs(eval_dsf(DsfKind::NonstandardPQ, par, n) - target) >
                1e-12 * std::max(1.0, target))
                return false;
            // the equal-GH ladder keeps its level-0 defect (-1/q) even at p = q
            const double gh_target = n == 0 ? -1.0 / q0 : target;
            if (std::abs(eval_dsf(DsfKind::TwoSidedEqualGH, par, n) - gh_target) >
                1e-12 * std::max(1.0, std::abs(gh_target)))
                return false;
        }
        // the Hamiltonian collapses to a rescaled oscillator
        const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 32);
        const Matrix h = build_H(rep, HamiltonianForm::Ladder);
        for (int n = 0; n < 31; ++n) {
            const double target = 0.5 / q0 + (n == 0 ? 0.0 : n / q0);
            if (std::abs(h(n, n).real() - target) > 1e-12 * std::max(1.0, target)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
bool weighted_commutator_identity() {
    for (double p : grid) {
        for (double q : grid) {
            const DeformationParams par{p, q};
            for (const auto& g :
                 {GaugeSpec::symmetric(), GaugeSpec::case_a(), GaugeSpec::case_b()}) {
                const auto rep = build_rep(DsfKind::NonstandardPQ, par, g, 48);
                const auto pair = build_xp(rep);
                if (!(pq_commutator_residual(pair, par, 4) <= 1e-10)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
bool conjugation_and_metric_rules() {
    const DeformationParams par{1.0, 2.0};
    const double Q = par.Q();
    const auto rat = [](long long n, long long d) { return Rational(n, d); };

    const auto rep_a = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::case_a(), 48);
    const auto pair_a = build_xp(rep_a);
    if (!(conjugation_residual(rep_a, EtaSpec{rat(0, 1), rat(1, 1), rat(-1, 1)},
                               ConjugationForm::Left) <= 1e-13))
        return false;
    if (!(hermiticity_residual(pair_a.P, 4) <= 1e-11)) return false;
    if (!(pseudo_hermiticity_residual(pair_a.X, EtaSpec{rat(1, 1), rat(0, 1), rat(0, 1)}, Q,
                                      4) <= 1e-11))
        return false;

    const auto rep_b = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::case_b(), 48);
    const auto pair_b = build_xp(rep_b);
    if (!(conjugation_residual(rep_b, EtaSpec{rat(0, 1), rat(-1, 1), rat(-2, 1)},
                               ConjugationForm::Left) <= 1e-11))
        return false;
    if (!(hermiticity_residual(pair_b.X, 4) <= 1e-11)) return false;
    if (!(pseudo_hermiticity_residual(pair_b.P, EtaSpec{rat(-1, 1), rat(0, 1), rat(0, 1)}, Q,
                                      4) <= 1e-11))
        return false;

    // standard conjugation: both quadratures need quadratic metrics
    const auto rep_s = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 48);
    const auto pair_s = build_xp(rep_s);
    if (!(pseudo_hermiticity_residual(pair_s.X, EtaSpec{rat(1, 2), rat(3, 2), rat(0, 1)}, Q,
                                      4) <= 1e-10))
        return false;
    if (!(pseudo_hermiticity_residual(pair_s.P, EtaSpec{rat(-1, 2), rat(3, 2), rat(0, 1)}, Q,
                                      4) <= 1e-10))
        return false;
    return true;
}

// ---------------------------------------------------------------- criterion 5
bool metric_recurrence_closed_forms() {
    const auto rat = [](long long n, long long d) { return Rational(n, d); };
    struct Case {
        EtaSpec eta_a, want_x, want_p;
    };
    const std::vector<Case> cases{
        {{rat(0, 1), rat(-1, 1), rat(-2, 1)},
         {rat(0, 1), rat(0, 1), rat(0, 1)},
         {rat(-1, 1), rat(0, 1), rat(0, 1)}},
        {{rat(0, 1), rat(1, 1), rat(-1, 1)},
         {rat(1, 1), rat(0, 1), rat(0, 1)},
         {rat(0, 1), rat(0, 1), rat(0, 1)}},
        {{rat(0, 1), rat(0, 1), rat(0, 1)},
         {rat(1, 2), rat(3, 2), rat(0, 1)},
         {rat(-1, 2), rat(3, 2), rat(0, 1)}},
        {{rat(0, 1), rat(0, 1), rat(2, 3)},
         {rat(1, 2), rat(3, 2) + rat(2, 3), rat(0, 1)},
         {rat(-1, 2), rat(3, 2) + rat(2, 3), rat(0, 1)}},
    };
    for (const auto& c : cases) {
        const EtaPair got = derive_eta_closed_forms(c.eta_a);  // exact, zero tolerance
        if (!(got.eta_x == c.want_x)) return false;
        if (!(got.eta_p == c.want_p)) return false;
        if (!derive_consistency(got)) return false;
        for (long long n = 0; n <= 30; ++n) {
            if (got.eta_x.exponent_at(n + 1) - got.eta_x.exponent_at(n) !=
                Rational(n) + 2 + c.eta_a.exponent_at(n))
                return false;
            if (got.eta_p.exponent_at(n + 1) - got.eta_p.exponent_at(n) !=
                -(Rational(n) - 1) + c.eta_a.exponent_at(n))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
bool polynomial_ladder_coefficients() {
    for (int k = 1; k <= 12; ++k)
        for (long long N = -6; N <= 6; ++N)
            if (a_k_closed(k, N) != a_k_recurrence(k, N)) return false;
    for (long long N : {-5LL, -1LL, 0LL, 3LL, 9LL}) {
        if (a_k_closed(2, N) != 2 * N) return false;
        if (a_k_closed(3, N) != 3 * N * N + 1) return false;
        if (a_k_closed(4, N) != 4 * N * N * N + 4 * N) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7
bool function_permutation_identities() {
    std::mt19937 rng(20240814u);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> degree(1, 3);
    std::vector<FnSpec> specs;
    for (int i = 0; i < 14; ++i) {
        std::vector<double> c(static_cast<size_t>(degree(rng)) + 1);
        for (double& x : c) x = coeff(rng);
        specs.push_back(FnSpec::poly(c));
    }
    const auto rat = [](long long n, long long d) { return Rational(n, d); };
    for (long long twice_c2 : {0LL, 1LL, -1LL}) {
        for (long long c1 : {1LL, -2LL}) {
            specs.push_back(
                FnSpec::q_power(EtaSpec{rat(twice_c2, 2), rat(c1, 1), rat(0, 1)}));
        }
    }
    // 14 random polynomials + 6 exponential specs = 20
    for (double q : {0.9, 1.1}) {
        const DeformationParams par{1.0, q};
        const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::case_a(), 48);
        for (const auto& f : specs) {
            if (!(fn_x_residual(rep, f, 3) <= 1e-10)) return false;
            if (!(fn_p_residual(rep, f, 3) <= 1e-10)) return false;
            if (!(ladder_shift_residual(rep, f, +1, 3) <= 1e-10)) return false;
            if (!(ladder_shift_residual(rep, f, -1, 3) <= 1e-10)) return false;
        }
        if (!(a_tilde_reorder_residual(rep) <= 1e-12)) return false;
        if (!(a_tilde_commutation_residual(rep, 3) <= 1e-10)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool hamiltonian_form_equivalence() {
    for (double p : grid) {
        for (double q : grid) {
            const DeformationParams par{p, q};
            for (const GaugeSpec& g : {GaugeSpec::symmetric(), GaugeSpec::case_a()}) {
                const auto rep = build_rep(DsfKind::NonstandardPQ, par, g, 48);
                const Matrix hl = build_H(rep, HamiltonianForm::Ladder);
                const Matrix hq = build_H(rep, HamiltonianForm::Quadrature);
                const Matrix hr = build_H(rep, HamiltonianForm::QuadratureReduced);
                const Matrix hn = build_H(rep, HamiltonianForm::Normal);
                for (const Matrix* a : {&hl, &hq, &hr}) {
                    for (const Matrix* b : {&hq, &hr, &hn}) {
                        if (a == b) continue;
                        if (!(scaled_residual(*a, *b, 4) <= 1e-9)) return false;
                    }
                }
                const auto en = spectrum_values(DsfKind::NonstandardPQ, par, 47);
                const Matrix diag = diagonal_of(48, [&](int n) {
                    return n == 0 ? 0.5 * rep.phi[1] : en[static_cast<size_t>(n)];
                });
                if (!(scaled_residual(hl, diag, 1) <= 1e-13)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 9
bool dressed_hamiltonian_hermiticity() {
    const auto rat = [](long long n, long long d) { return Rational(n, d); };
    const std::vector<EtaSpec> eta_as{
        {rat(0, 1), rat(-1, 1), rat(-2, 1)},
        {rat(0, 1), rat(1, 1), rat(-1, 1)},
        {rat(0, 1), rat(0, 1), rat(0, 1)},
        {rat(0, 1), rat(0, 1), rat(2, 3)},
    };
    for (const DeformationParams par : {DeformationParams{1.0, 2.0}, DeformationParams{1.25, 0.8}}) {
        for (const auto& eta_a : eta_as) {
            const GaugeSpec gauge = gauge_for_eta_a(eta_a);
            const auto rep = build_rep(DsfKind::NonstandardPQ, par, gauge, 48);
            const EtaPair metrics = derive_eta_closed_forms(eta_a);
            const Matrix dressed = build_H_tilde(rep, metrics.eta_x, metrics.eta_p);
            if (!(hermiticity_residual(dressed, 4) <= 1e-11)) return false;
        }
        // undressed control: plainly non-hermitian once deformed
        const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 48);
        const auto pair = build_xp(rep);
        const Matrix naive = 0.5 * (pair.X * pair.X + pair.P * pair.P);
        if (!(hermiticity_residual(naive, 4) > 1e-3)) return false;
    }
    // no deformation: the dressing is the identity, bit for bit
    const auto rep1 = build_rep(DsfKind::Undeformed, {1.0, 1.0}, GaugeSpec::symmetric(), 32);
    const auto pair1 = build_xp(rep1);
    const EtaPair metrics = derive_eta_closed_forms(eta_a_of_gauge(rep1.gauge));
    const Matrix dressed = build_H_tilde(rep1, metrics.eta_x, metrics.eta_p);
    const Matrix plain = 0.5 * (pair1.X * pair1.X + pair1.P * pair1.P);
    return scaled_residual(dressed, plain, 0) == 0.0;
}

// --------------------------------------------------------------- criterion 10
bool undeformed_end_to_end() {
    RunConfig cfg;  // plain oscillator, symmetric gauge, dim 48, margin 4
    const SuiteReport rep = run_verify_suite(cfg);
    if (!rep.all_pass()) return false;
    const auto en = spectrum_values(DsfKind::Undeformed, cfg.params, 40);
    for (int n = 0; n <= 40; ++n)
        if (en[static_cast<size_t>(n)] != n + 0.5) return false;
    for (const auto& f : rep.findings)
        if (f.name == "spectrum_monotone" && f.value != 1.0) return false;
    return true;
}

// --------------------------------------------------------------- criterion 11
int run_cli(const std::string& args) {
    const std::string cmd = std::string(PQHA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool cli_contract() {
    bool ok = true;
    ok = ok && run_cli("verify") == 0;  // defaults: undeformed oscillator
    ok = ok && run_cli("verify --kind nonstandard-pq --p 1 --q 2 --gauge case-a") == 0;
    ok = ok && run_cli("verify --kind nonstandard-pq --p 1.2 --q 0.8 --gauge symmetric") == 1;
    ok = ok && run_cli("verify --kind bogus") == 2;
    ok = ok && run_cli("verify --kind custom --table 0,1,-2,1,1 --dim 4") == 2;
    ok = ok && run_cli("dsf --kind custom --n-max 3") == 2;  // no table given
    ok = ok && run_cli("eta --gauge case-b") == 0;
    ok = ok && run_cli("sweep --kind nonstandard-pq --gauge case-a --dim 24 "
                       "--p-range 0.9:1.1:0.2 --q-range 0.9:1.1:0.2") == 0;

    // byte-identical reruns
    const std::string j1 = "acceptance_cli_1.json", j2 = "acceptance_cli_2.json";
    const std::string base =
        "verify --kind nonstandard-pq --p 1 --q 2 --gauge case-a --format json --out ";
    ok = ok && run_cli(base + j1) == 0;
    ok = ok && run_cli(base + j2) == 0;
    const std::string b1 = slurp(j1), b2 = slurp(j2);
    ok = ok && !b1.empty() && b1 == b2;
    ok = ok && b1.find("\"all_pass\":true") != std::string::npos;

    const std::string c1 = "acceptance_cli_1.csv", c2 = "acceptance_cli_2.csv";
    const std::string dsf_base = "dsf --kind nonstandard-pq --p 1 --q 2 --n-max 32 --out ";
    ok = ok && run_cli(dsf_base + c1) == 0;
    ok = ok && run_cli(dsf_base + c2) == 0;
    const std::string t1 = slurp(c1);
    ok = ok && !t1.empty() && t1 == slurp(c2);
    ok = ok && t1.rfind("n,phi\n", 0) == 0;

    const std::string s1 = "acceptance_cli_spec.csv";
    ok = ok && run_cli("spectrum --kind nonstandard-pq --p 1 --q 2 --n-max 8 --out " + s1) == 0;
    ok = ok && slurp(s1).rfind("n,E\n", 0) == 0;

    const std::string e1 = "acceptance_cli_eta.json";
    ok = ok && run_cli("eta --gauge case-b --format json --out " + e1) == 0;
    ok = ok && slurp(e1).find("\"eta_p\":\"Q^(-1/1*N^2+0/1*N+0/1)\"") != std::string::npos;

    for (const auto& f : {j1, j2, c1, c2, s1, e1}) std::remove(f.c_str());
    return ok;
}

}  // namespace

int main() {
    criterion(1, "dual-form structure function agreement", dual_form_agreement());
    criterion(2, "equal-parameter reduction", equal_parameter_reduction());
    criterion(3, "weighted commutator identity", weighted_commutator_identity());
    criterion(4, "conjugation and metric rules", conjugation_and_metric_rules());
    criterion(5, "metric recurrence closed forms", metric_recurrence_closed_forms());
    criterion(6, "polynomial ladder coefficients", polynomial_ladder_coefficients());
    criterion(7, "function permutation identities", function_permutation_identities());
    criterion(8, "Hamiltonian form equivalence", hamiltonian_form_equivalence());
    criterion(9, "similarity-transformed Hamiltonian hermiticity",
              dressed_hamiltonian_hermiticity());
    criterion(10, "undeformed end-to-end", undeformed_end_to_end());
    criterion(11, "command line contract", cli_contract());

    std::printf("acceptance: %d/%d criteria passed\n", g_passed, g_total);
    return g_passed == g_total ? 0 : 1;
}
