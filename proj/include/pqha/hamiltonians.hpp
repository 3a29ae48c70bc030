#pragma once

#include <Eigen/Eigenvalues>
#include <string>
#include <vector>

#include "pqha/eta_metrics.hpp"
#include "pqha/heisenberg_ops.hpp"

namespace pqha {

// Equivalent ways of writing the oscillator hamiltonian
// H = (a-a+ + a+a-) / 2. The quadrature and normal forms are specific to the
// non-standard structure function: they use the inverse ladder map and the
// G/H bilinear identity, which close only for that family.
enum class HamiltonianForm {
    Ladder,             // (a-a+ + a+a-)/2 directly from the ladder matrices
    Quadrature,         // d_N-weighted combination of X^2, P^2, PX, XP
    QuadratureReduced,  // same with PX eliminated through the commutator
    Normal,             // 1/(2H(N)) + (1 + G(N)/H(N))/2 a+a-
};

inline const char* hamiltonian_form_name(HamiltonianForm f) {
    switch (f) {
        case HamiltonianForm::Ladder: return "ladder";
        case HamiltonianForm::Quadrature: return "quadrature";
        case HamiltonianForm::QuadratureReduced: return "quadrature-reduced";
        case HamiltonianForm::Normal: return "normal";
    }
    return "?";
}

namespace detail {

inline Matrix d_shifted(int dim, double Q, int shift) {
    return diagonal_of(dim, [&](int n) {
        return std::sqrt(2.0) / (1.0 + checked_qpow(Q, 2 * (n + shift)));
    });
}

}  // namespace detail

inline Matrix build_H(const TruncatedRep& rep, HamiltonianForm form) {
    const int D = rep.dim;
    const double Q = rep.params.Q();
    const double hbar = rep.params.hbar;

    if (form == HamiltonianForm::Ladder)
        return 0.5 * (rep.lower_op * rep.raise_op + rep.raise_op * rep.lower_op);

    if (rep.kind != DsfKind::NonstandardPQ)
        throw WrongKind(std::string(hamiltonian_form_name(form)) +
                        " form is derived from the non-standard bilinear identity and is "
                        "meaningless for kind " + dsf_kind_name(rep.kind));

    if (form == HamiltonianForm::Normal) {
        const Matrix head = diagonal_of(D, [&](int n) {
            return (1.0 / rep.params.p) * checked_qpow(Q, -2 * n - 1) /
                   (1.0 + checked_qpow(Q, 2 * n + 2));
        });
        const Matrix weight = diagonal_of(D, [&](int n) {
            return 0.5 * (1.0 + (1.0 / Q) * (1.0 + checked_qpow(Q, 2 * n - 2)) /
                                    (1.0 + checked_qpow(Q, 2 * n + 2)));
        });
        return head + weight * (rep.raise_op * rep.lower_op);
    }

    const PositionMomentumPair pair = build_xp(rep);
    const Matrix d0 = detail::d_shifted(D, Q, 0);
    const Matrix dp = detail::d_shifted(D, Q, +1);
    const Matrix dm = detail::d_shifted(D, Q, -1);
    const Matrix qn = diagonal_of(D, [&](int n) { return checked_qpow(Q, n); });
    const Matrix qmn = diagonal_of(D, [&](int n) { return checked_qpow(Q, -n); });
    const Matrix A = dp + Q * dm;
    const Matrix B = qn * dp - Q * (qmn * dm);

    if (form == HamiltonianForm::Quadrature) {
        const Matrix C = qn * dm - (1.0 / Q) * (qmn * dp);
        const Matrix body = A * (pair.X * pair.X + (1.0 / Q) * (pair.P * pair.P)) +
                            imag_unit * (B * (pair.P * pair.X)) +
                            imag_unit * (C * (pair.X * pair.P));
        return (0.5 / hbar) * (d0 * (qmn * body));
    }

    // QuadratureReduced: eliminate PX via q PX = p XP - i hbar. The constant
    // remainder (1/q) B then stands alone, outside the A(...) product.
    const Matrix body = A * (pair.X * pair.X + (1.0 / Q) * (pair.P * pair.P) +
                             imag_unit * (1.0 / Q) * ((qn - qmn) * (pair.X * pair.P)));
    return 0.5 * (d0 * (qmn * ((1.0 / hbar) * body + (1.0 / rep.params.q) * B)));
}

// E(n) = (phi(n+1) + phi(n)) / 2, evaluated analytically so no truncation
// enters. The ladder-form matrix reproduces these on its interior diagonal.
inline std::vector<double> spectrum_values(DsfKind kind, const DeformationParams& par, int n_max,
                                           const std::vector<double>* table = nullptr) {
    std::vector<double> e(static_cast<size_t>(n_max) + 1);
    double prev = eval_dsf(kind, par, 0, table);
    for (int n = 0; n <= n_max; ++n) {
        const double next = eval_dsf(kind, par, n + 1, table);
        e[static_cast<size_t>(n)] = 0.5 * (next + prev);
        prev = next;
    }
    return e;
}

// Balanced similarity transform of (X^2 + P^2)/2: conjugating each square by
// the square root of its metric makes every term hermitian whenever X and P
// are pseudo-hermitian under eta_x and eta_p. Computed entrywise, so the
// metric diagonals are never materialized.
inline Matrix build_H_tilde(const TruncatedRep& rep, const EtaSpec& eta_x,
                            const EtaSpec& eta_p) {
    const double Q = rep.params.Q();
    const PositionMomentumPair pair = build_xp(rep);
    const Rational half(1, 2);
    const Matrix sx = eta_similarity(pair.X * pair.X, eta_x, Q, half);
    const Matrix sp = eta_similarity(pair.P * pair.P, eta_p, Q, half);
    return 0.5 * (sx + sp);
}

// Eigenvalues of the hermitized interior block, ascending. The block is
// symmetrized first; for matrices that are hermitian up to rounding this
// only folds the rounding noise.
inline std::vector<double> interior_eigenvalues(const Matrix& m, int margin) {
    const int D = static_cast<int>(m.rows());
    check_margin(D, margin);
    const int d = D - margin;
    const Matrix block = 0.5 * (m.topLeftCorner(d, d) + m.topLeftCorner(d, d).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    const auto& vals = solver.eigenvalues();
    return std::vector<double>(vals.data(), vals.data() + vals.size());
}

}  // namespace pqha
