#pragma once

#include <cmath>
#include <utility>

#include "pqha/fock_rep.hpp"

namespace pqha {

// Position/momentum pair assembled from the ladder operators as
//   X = sqrt(hbar/2) (Q^2N a+ + Q^N a-)
//   P = i sqrt(hbar/2) (Q^N a+ - Q^2N a-)
// so that p XP - q PX = i hbar holds level by level whenever the structure
// function satisfies H(n) phi(n+1) - G(n) phi(n) = 1. At Q == 1 these reduce
// bit-exactly to (a+ + a-) sqrt(hbar/2) and i (a+ - a-) sqrt(hbar/2).
struct PositionMomentumPair {
    Matrix X;
    Matrix P;
};

inline Matrix build_X(const TruncatedRep& rep) {
    const double Q = rep.params.Q();
    const double s = std::sqrt(rep.params.hbar / 2.0);
    Matrix X = Matrix::Zero(rep.dim, rep.dim);
    for (int n = 0; n + 1 < rep.dim; ++n) {
        X(n + 1, n) = s * checked_qpow(Q, 2 * (n + 1)) * rep.raise_op(n + 1, n);
        X(n, n + 1) = s * checked_qpow(Q, n) * rep.lower_op(n, n + 1);
    }
    return X;
}

inline Matrix build_P(const TruncatedRep& rep) {
    const double Q = rep.params.Q();
    const double s = std::sqrt(rep.params.hbar / 2.0);
    Matrix P = Matrix::Zero(rep.dim, rep.dim);
    for (int n = 0; n + 1 < rep.dim; ++n) {
        P(n + 1, n) = imag_unit * s * checked_qpow(Q, n + 1) * rep.raise_op(n + 1, n);
        P(n, n + 1) = -imag_unit * s * checked_qpow(Q, 2 * n) * rep.lower_op(n, n + 1);
    }
    return P;
}

inline PositionMomentumPair build_xp(const TruncatedRep& rep) {
    return {build_X(rep), build_P(rep)};
}

// Inverse map: with d(N) = sqrt(2)/(1 + Q^2N),
//   a- = d(N) (Q^-N X + i P) / sqrt(hbar)
//   a+ = d(N) (X - i Q^-N P) / sqrt(hbar)
// This is pure diagonal-times-band algebra, so the recovery is exact on the
// whole matrix, not just the interior.
inline std::pair<Matrix, Matrix> recover_ladder(const PositionMomentumPair& pair,
                                                const DeformationParams& par) {
    par.validate();
    const int D = static_cast<int>(pair.X.rows());
    const double Q = par.Q();
    const double s = 1.0 / std::sqrt(par.hbar);
    const Matrix d = diagonal_of(D, [&](int n) {
        return std::sqrt(2.0) / (1.0 + checked_qpow(Q, 2 * n));
    });
    const Matrix qmn = diagonal_of(D, [&](int n) { return checked_qpow(Q, -n); });
    Matrix lower = s * (d * (qmn * pair.X + imag_unit * pair.P));
    Matrix raise = s * (d * (pair.X - imag_unit * (qmn * pair.P)));
    return {std::move(lower), std::move(raise)};
}

namespace detail {

inline Matrix weighted_commutator(const PositionMomentumPair& pair, const DeformationParams& par) {
    return par.p * (pair.X * pair.P) - par.q * (pair.P * pair.X);
}

}  // namespace detail

// Residual of p XP - q PX = i hbar (1 + mu H) on the interior block.
// H may be omitted when mu == 0; with mu != 0 it is required.
inline double pq_commutator_residual(const PositionMomentumPair& pair,
                                     const DeformationParams& par, int margin,
                                     const Matrix* hamiltonian = nullptr) {
    par.validate();
    const int D = static_cast<int>(pair.X.rows());
    const Matrix lhs = detail::weighted_commutator(pair, par);
    Matrix rhs = imag_unit * par.hbar * Matrix::Identity(D, D);
    if (par.mu != 0.0) {
        if (!hamiltonian)
            throw MissingHamiltonian("mu != 0 requires a hamiltonian for the commutator check");
        rhs += imag_unit * par.hbar * par.mu * (*hamiltonian);
    }
    return scaled_residual(lhs, rhs, margin);
}

// How far p XP - q PX is from being skew-hermitian. For any pair built by
// build_xp this vanishes identically (the bilinears it reduces to are real
// diagonal), whatever the gauge. Feeding a hermitian pair with p != q makes
// it the quantitative form of "hermitian X, P force p = q":
// the residual is then |p - q| times the anticommutator scale.
inline double skew_hermiticity_residual(const PositionMomentumPair& pair,
                                        const DeformationParams& par, int margin) {
    par.validate();
    const Matrix lhs = detail::weighted_commutator(pair, par);
    return scaled_residual(lhs, -lhs.adjoint(), margin);
}

struct MuFit {
    double mu_hat = 0.0;
    double residual_before = 0.0;  // commutator residual with mu = 0
    double residual_after = 0.0;   // after subtracting i hbar mu_hat H
};

// Least-squares scalar mu minimizing |p XP - q PX - i hbar (1 + mu H)| over
// the interior entries. Refuses H blocks that look like c * Identity: the
// fitted term would then be indistinguishable from a rescaling of hbar.
inline MuFit fit_mu(const PositionMomentumPair& pair, const DeformationParams& par,
                    const Matrix& hamiltonian, int margin) {
    par.validate();
    const int D = static_cast<int>(pair.X.rows());
    check_margin(D, margin);
    const int d = D - margin;
    const Matrix H = hamiltonian.topLeftCorner(d, d);

    const double hmax = H.cwiseAbs().maxCoeff();
    Complex trace_mean = H.trace() / static_cast<double>(d);
    const double dev = (H - trace_mean * Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev <= 1e-10 * std::max(1.0, hmax))
        throw DegenerateFit("hamiltonian block is a multiple of the identity; mu is not "
                            "identifiable against the constant term");

    const Matrix R = (detail::weighted_commutator(pair, par) -
                      imag_unit * par.hbar * Matrix::Identity(D, D))
                         .topLeftCorner(d, d);
    const Matrix basis = imag_unit * par.hbar * H;
    const double denom = basis.cwiseAbs2().sum();
    const Complex inner = (basis.conjugate().cwiseProduct(R)).sum();

    MuFit fit;
    fit.mu_hat = inner.real() / denom;
    const double scale = std::max(1.0, R.cwiseAbs().maxCoeff());
    fit.residual_before = R.cwiseAbs().maxCoeff() / scale;
    fit.residual_after = (R - fit.mu_hat * basis).cwiseAbs().maxCoeff() / scale;
    return fit;
}

}  // namespace pqha
