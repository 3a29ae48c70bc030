#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pqha/matrix.hpp"
#include "pqha/structure_functions.hpp"

namespace pqha {

// Diagonal gauge freedom of the ladder matrix elements. The raising element
// at level n is w(n) sqrt(phi(n)) and the lowering one sqrt(phi(n)) / w(n),
// with w(n) = Q^(g1 n + g0). All bilinears a+a-, a-a+ are gauge independent;
// what the gauge changes is how the two ladder operators are related under
// the plain matrix adjoint: (a+)^dag = w(N+1)^2 a-.
struct GaugeSpec {
    double g1 = 0.0;
    double g0 = 0.0;
    std::string label = "symmetric";

    static GaugeSpec symmetric() { return {0.0, 0.0, "symmetric"}; }
    // makes P hermitian: w(N+1)^2 = Q^(N-1)
    static GaugeSpec case_a() { return {0.5, -1.0, "case-a"}; }
    // makes X hermitian: w(N+1)^2 = Q^(-N-2)
    static GaugeSpec case_b() { return {-0.5, -0.5, "case-b"}; }

    double w(int n, double Q) const { return checked_qpow(Q, g1 * n + g0); }
};

// "symmetric" | "case-a" | "case-b" | "w:<g1>,<g0>"
inline std::optional<GaugeSpec> parse_gauge(const std::string& s) {
    if (s == "symmetric") return GaugeSpec::symmetric();
    if (s == "case-a") return GaugeSpec::case_a();
    if (s == "case-b") return GaugeSpec::case_b();
    if (s.rfind("w:", 0) == 0) {
        const auto comma = s.find(',', 2);
        if (comma == std::string::npos) return std::nullopt;
        try {
            size_t used1 = 0, used2 = 0;
            const std::string a = s.substr(2, comma - 2), b = s.substr(comma + 1);
            GaugeSpec g{std::stod(a, &used1), std::stod(b, &used2), s};
            if (used1 != a.size() || used2 != b.size()) return std::nullopt;
            return g;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Matrix representation on the truncated number basis |0> .. |dim-1>.
// phi holds dim+1 analytic values so checks can compare the corrupted top
// level against what the untruncated operator would give.
struct TruncatedRep {
    DsfKind kind = DsfKind::Undeformed;
    DeformationParams params;
    GaugeSpec gauge;
    int dim = 0;
    std::vector<double> phi;  // phi(0..dim)
    Matrix number_op;
    Matrix raise_op;  // entries at (n+1, n)
    Matrix lower_op;  // entries at (n-1, n)
};

// Builds N, a+, a- for the given structure function. Requires phi(n) > 0 on
// every level whose square root enters a matrix element (1..dim-1). phi(0)
// is *not* required to vanish here: families with phi(0) != 0 are still
// representable, and verify_doa will report the resulting level-0 defect
// instead of hiding it.
inline TruncatedRep build_rep(DsfKind kind, const DeformationParams& par, const GaugeSpec& gauge,
                              int dim, const std::vector<double>* table = nullptr) {
    par.validate();
    if (dim < 4 || dim > max_dim)
        throw std::invalid_argument("dim must be in [4, " + std::to_string(max_dim) + "], got " +
                                    std::to_string(dim));
    TruncatedRep rep;
    rep.kind = kind;
    rep.params = par;
    rep.gauge = gauge;
    rep.dim = dim;
    rep.phi.resize(static_cast<size_t>(dim) + 1);
    for (int n = 0; n <= dim; ++n) rep.phi[static_cast<size_t>(n)] = eval_dsf(kind, par, n, table);
    for (int n = 1; n < dim; ++n)
        if (!(rep.phi[static_cast<size_t>(n)] > 0.0))
            throw UnphysicalDSF("phi(" + std::to_string(n) + ") = " +
                                std::to_string(rep.phi[static_cast<size_t>(n)]) +
                                " is not positive; no real ladder element exists");
    const double Q = par.Q();
    rep.number_op = diagonal_of(dim, [](int n) { return static_cast<double>(n); });
    rep.raise_op = Matrix::Zero(dim, dim);
    rep.lower_op = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double root = std::sqrt(rep.phi[static_cast<size_t>(n) + 1]);
        const double wn = gauge.w(n + 1, Q);
        rep.raise_op(n + 1, n) = Complex(wn * root, 0.0);
        rep.lower_op(n, n + 1) = Complex(root / wn, 0.0);
    }
    return rep;
}

struct CheckReport {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    int margin = 0;
    bool pass = false;
};

inline CheckReport make_check(std::string name, double residual, double tolerance, int margin) {
    CheckReport c{std::move(name), residual, tolerance, margin, residual <= tolerance};
    return c;
}

// Defining identities of the deformed oscillator, evaluated as honest dense
// matrix arithmetic. Residuals are scale-normalized (see scaled_residual).
//   - [N, a+/-] = +/- a+/-
//   - a+a- = phi(N) (margin 0: truncation cannot corrupt this diagonal)
//   - a-a+ - a+a- = phi(N+1) - phi(N)
//   - for the non-standard family: H(N) a-a+ - G(N) a+a- = 1
inline std::vector<CheckReport> verify_doa(const TruncatedRep& rep, int margin) {
    check_margin(rep.dim, margin);
    const Matrix& N = rep.number_op;
    const Matrix& ap = rep.raise_op;
    const Matrix& am = rep.lower_op;
    const int D = rep.dim;

    std::vector<CheckReport> out;
    out.push_back(make_check("number_raise_commutator",
                             scaled_residual(N * ap - ap * N, ap, margin), 1e-13, margin));
    out.push_back(make_check("number_lower_commutator",
                             scaled_residual(N * am - am * N, -am, margin), 1e-13, margin));

    // a-|0> = 0 means the matrices never see phi(0); the realized diagonals
    // carry 0 at level 0. Families with phi(0) != 0 satisfy the algebra only
    // on n >= 1 and the phi0_zero finding reports the defect.
    const Matrix raise_lower = ap * am;
    const Matrix phi_diag = diagonal_of(
        D, [&](int n) { return n == 0 ? 0.0 : rep.phi[static_cast<size_t>(n)]; });
    out.push_back(make_check("raise_lower_diagonal",
                             scaled_residual(raise_lower, phi_diag, 0), 1e-13, 0));

    const Matrix lower_raise = am * ap;
    const Matrix delta_phi = diagonal_of(D, [&](int n) {
        return rep.phi[static_cast<size_t>(n) + 1] -
               (n == 0 ? 0.0 : rep.phi[static_cast<size_t>(n)]);
    });
    out.push_back(make_check("bilinear_difference",
                             scaled_residual(lower_raise - raise_lower, delta_phi, margin),
                             1e-10, margin));

    if (rep.kind == DsfKind::NonstandardPQ) {
        Matrix G = Matrix::Zero(D, D), H = Matrix::Zero(D, D);
        for (int n = 0; n < D; ++n) {
            const auto gh = gh_coefficients(rep.params, n);
            G(n, n) = gh.G;
            H(n, n) = gh.H;
        }
        out.push_back(make_check("gh_relation",
                                 scaled_residual(H * lower_raise - G * raise_lower,
                                                 Matrix::Identity(D, D), margin),
                                 1e-10, margin));
    }
    return out;
}

}  // namespace pqha
