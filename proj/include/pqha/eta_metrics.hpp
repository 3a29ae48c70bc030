#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pqha/fock_rep.hpp"
#include "pqha/matrix.hpp"
#include "pqha/rational.hpp"

namespace pqha {

// Diagonal metric eta(N) = Q^(c2 N^2 + c1 N + c0) with exact rational
// coefficients. Every metric that appears in the conjugation analysis is of
// this shape, so the recurrences relating them can be solved exactly.
struct EtaSpec {
    Rational c2 = 0;
    Rational c1 = 0;
    Rational c0 = 0;

    Rational exponent_at(long long n) const {
        const Rational N(n);
        return c2 * N * N + c1 * N + c0;
    }

    bool is_constant() const { return c2 == 0 && c1 == 0; }

    bool operator==(const EtaSpec& o) const { return c2 == o.c2 && c1 == o.c1 && c0 == o.c0; }

    // canonical serialization, e.g. "Q^(1/2*N^2+3/2*N+0/1)"
    std::string to_string() const {
        return "Q^(" + rational_str(c2) + "*N^2+" + rational_str(c1) + "*N+" +
               rational_str(c0) + ")";
    }

    // accepts "qpow:c2,c1,c0" or the canonical "Q^(...)" form; round-trips
    // to_string bit-exactly
    static std::optional<EtaSpec> parse(const std::string& s) {
        try {
            if (s.rfind("qpow:", 0) == 0) {
                const std::string body = s.substr(5);
                const auto a = body.find(',');
                if (a == std::string::npos) return std::nullopt;
                const auto b = body.find(',', a + 1);
                if (b == std::string::npos) return std::nullopt;
                return EtaSpec{parse_rational(body.substr(0, a)),
                               parse_rational(body.substr(a + 1, b - a - 1)),
                               parse_rational(body.substr(b + 1))};
            }
            if (s.rfind("Q^(", 0) == 0 && s.back() == ')') {
                const std::string body = s.substr(3, s.size() - 4);
                const auto a = body.find("*N^2+");
                if (a == std::string::npos) return std::nullopt;
                const auto b = body.find("*N+", a + 5);
                if (b == std::string::npos) return std::nullopt;
                return EtaSpec{parse_rational(body.substr(0, a)),
                               parse_rational(body.substr(a + 5, b - a - 5)),
                               parse_rational(body.substr(b + 3))};
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return std::nullopt;
    }
};

// diag(Q^e(0), ..., Q^e(dim-1)); throws ExponentOverflow before any entry
// would leave double range.
inline Matrix build_eta(const EtaSpec& spec, double Q, int dim) {
    return diagonal_of(dim, [&](int n) {
        return checked_qpow(Q, to_double(spec.exponent_at(n)));
    });
}

// The adjoint relation the gauge imposes on the ladder pair: with
// w(n) = Q^(g1 n + g0), (a+)^dag = w(N+1)^2 a-, i.e. an eta of exponent
// 2 g1 N + 2 (g1 + g0). Doubles convert to rationals exactly, so preset
// gauges give clean coefficients.
inline EtaSpec eta_a_of_gauge(const GaugeSpec& g) {
    const Rational g1(g.g1), g0(g.g0);
    return EtaSpec{Rational(0), 2 * g1, 2 * (g1 + g0)};
}

// Inverse of the above: the gauge whose adjoint relation realizes a given
// linear eta_a.
inline GaugeSpec gauge_for_eta_a(const EtaSpec& eta_a) {
    if (eta_a.c2 != 0)
        throw NonlinearEtaA("only exponents linear in N arise from a diagonal gauge, got " +
                            eta_a.to_string());
    GaugeSpec g;
    g.g1 = to_double(eta_a.c1 / 2);
    g.g0 = to_double((eta_a.c0 - eta_a.c1) / 2);
    g.label = "w:" + std::to_string(g.g1) + "," + std::to_string(g.g0);
    return g;
}

enum class ConjugationForm { Left, Right };

// Residual of (a+)^dag == eta(N) a- (left form) or == a- eta(N) (right
// form), over the full matrix: the relation is entrywise on one band, so
// truncation cannot corrupt it. Left and right specs differ by the level
// shift eta(N) a- = a- eta(N-1).
inline double conjugation_residual(const TruncatedRep& rep, const EtaSpec& eta_a,
                                   ConjugationForm form) {
    const double Q = rep.params.Q();
    const Matrix eta = build_eta(eta_a, Q, rep.dim);
    const Matrix lhs = rep.raise_op.adjoint();
    const Matrix rhs = form == ConjugationForm::Left ? Matrix(eta * rep.lower_op)
                                                     : Matrix(rep.lower_op * eta);
    return scaled_residual(lhs, rhs, 0);
}

// eta^-power M eta^power computed entrywise as M[i,j] * Q^((e(j)-e(i)) * power),
// which never forms the huge diagonal entries themselves. power 1 gives the
// similarity transform, 1/2 the balanced one used for hamiltonians.
inline Matrix eta_similarity(const Matrix& m, const EtaSpec& spec, double Q,
                             const Rational& power) {
    const int dim = static_cast<int>(m.rows());
    std::vector<Rational> e(static_cast<size_t>(dim));
    for (int n = 0; n < dim; ++n) e[static_cast<size_t>(n)] = spec.exponent_at(n) * power;
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (m(i, j) == Complex(0.0, 0.0)) continue;
            out(i, j) = m(i, j) * checked_qpow(Q, to_double(e[static_cast<size_t>(j)] -
                                                            e[static_cast<size_t>(i)]));
        }
    return out;
}

// Residual of M^dag == eta^-1 M eta on the interior block.
inline double pseudo_hermiticity_residual(const Matrix& m, const EtaSpec& spec, double Q,
                                          int margin) {
    return scaled_residual(m.adjoint(), eta_similarity(m, spec, Q, Rational(1)), margin);
}

struct EtaPair {
    EtaSpec eta_x;
    EtaSpec eta_p;
};

// Given the adjoint relation (a+)^dag = Q^(c1 N + c0) a-, the metrics making
// X and P pseudo-hermitian satisfy first-order recurrences in the exponent:
//   e_X(N+1) - e_X(N) = (N + 2) + e_a(N)
//   e_P(N+1) - e_P(N) = -(N - 1) + e_a(N)
// Telescoping an increment a N + b from e(0) = 0 gives
// a N(N-1)/2 + b N, i.e. quadratic exponents with exact rational
// coefficients. Their difference telescopes to 2N + 1 independently of
// eta_a, which derive_consistency checks symbolically.
inline EtaPair derive_eta_closed_forms(const EtaSpec& eta_a) {
    if (eta_a.c2 != 0)
        throw NonlinearEtaA("metric recurrences are solved for eta_a linear in N, got " +
                            eta_a.to_string());
    const auto telescoped = [](const Rational& a, const Rational& b) {
        return EtaSpec{a / 2, b - a / 2, Rational(0)};
    };
    EtaPair pair;
    pair.eta_x = telescoped(eta_a.c1 + 1, eta_a.c0 + 2);
    pair.eta_p = telescoped(eta_a.c1 - 1, eta_a.c0 + 1);
    return pair;
}

// Exact check that e_X(N+1) - e_X(N) - e_P(N+1) + e_P(N) == 2N + 1 as a
// polynomial identity in N.
inline bool derive_consistency(const EtaPair& pair) {
    const Rational dc2 = pair.eta_x.c2 - pair.eta_p.c2;
    const Rational dc1 = pair.eta_x.c1 - pair.eta_p.c1;
    // increment of Q^(c2 N^2 + c1 N + c0) exponent: c2 (2N + 1) + c1
    return 2 * dc2 == 2 && dc2 + dc1 == 1;
}

}  // namespace pqha
