#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pqha/eta_metrics.hpp"
#include "pqha/heisenberg_ops.hpp"

namespace pqha {

// Ladder coefficients A_k(N) = ((N+1)^k - (N-1)^k) / 2, computed in exact
// integer arithmetic. They satisfy A_1 = 1, A_2 = 2N and
// A_{k+1} = 2N A_k - (N-1)(N+1) A_{k-1}; both routes are exposed so one can
// be checked against the other with zero tolerance.
inline BigInt a_k_closed(int k, long long N) {
    if (k < 1) throw std::invalid_argument("A_k is defined for k >= 1");
    const BigInt up = boost::multiprecision::pow(BigInt(N + 1), static_cast<unsigned>(k));
    const BigInt down = boost::multiprecision::pow(BigInt(N - 1), static_cast<unsigned>(k));
    return (up - down) / 2;
}

inline BigInt a_k_recurrence(int k, long long N) {
    if (k < 1) throw std::invalid_argument("A_k is defined for k >= 1");
    BigInt prev = 1;            // A_1
    if (k == 1) return prev;
    BigInt cur = 2 * BigInt(N); // A_2
    for (int j = 2; j < k; ++j) {
        BigInt next = 2 * BigInt(N) * cur - BigInt(N - 1) * BigInt(N + 1) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// A function of the number operator, specified analytically (so it can be
// evaluated at the shifted levels n-1 .. n+2 the identities need) or as a
// raw table of per-level values.
struct FnSpec {
    enum class Type { Poly, QPow, Table };
    Type type = Type::Poly;
    std::vector<double> coeffs;  // Poly: highest degree first
    EtaSpec qpow;                // QPow: F(n) = Q^(c2 n^2 + c1 n + c0)
    std::vector<double> table;   // Table: F(0..size-1)
    std::string label = "poly:1,0";

    static FnSpec poly(std::vector<double> c) {
        FnSpec f;
        f.type = Type::Poly;
        f.coeffs = std::move(c);
        std::ostringstream os;
        os << "poly:";
        for (size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? "," : "") << f.coeffs[i];
        f.label = os.str();
        return f;
    }

    static FnSpec q_power(EtaSpec e) {
        FnSpec f;
        f.type = Type::QPow;
        f.qpow = e;
        f.label = "qpow:" + rational_str(e.c2) + "," + rational_str(e.c1) + "," +
                  rational_str(e.c0);
        return f;
    }

    static FnSpec from_table(std::vector<double> values) {
        FnSpec f;
        f.type = Type::Table;
        f.table = std::move(values);
        f.label = "table[" + std::to_string(f.table.size()) + "]";
        return f;
    }

    // "poly:c_k,...,c_0" or "qpow:c2,c1,c0"
    static std::optional<FnSpec> parse(const std::string& s) {
        if (s.rfind("poly:", 0) == 0) {
            std::vector<double> c;
            std::string body = s.substr(5);
            std::istringstream is(body);
            std::string item;
            while (std::getline(is, item, ',')) {
                try {
                    size_t used = 0;
                    c.push_back(std::stod(item, &used));
                    if (used != item.size()) return std::nullopt;
                } catch (const std::exception&) {
                    return std::nullopt;
                }
            }
            if (c.empty() || body.empty()) return std::nullopt;
            return poly(std::move(c));
        }
        if (s.rfind("qpow:", 0) == 0) {
            auto e = EtaSpec::parse(s);
            if (!e) return std::nullopt;
            return q_power(*e);
        }
        return std::nullopt;
    }

    double eval(long long n, double Q) const {
        switch (type) {
            case Type::Poly: {
                double v = 0.0;
                for (double c : coeffs) v = v * static_cast<double>(n) + c;
                return v;
            }
            case Type::QPow:
                return checked_qpow(Q, to_double(qpow.exponent_at(n)));
            case Type::Table:
                if (n < 0 || n >= static_cast<long long>(table.size()))
                    throw InsufficientFRange("F-table covers 0.." +
                                             std::to_string(table.size() ? table.size() - 1 : 0) +
                                             " but F(" + std::to_string(n) + ") is needed");
                return table[static_cast<size_t>(n)];
        }
        throw std::logic_error("unhandled FnSpec type");
    }
};

namespace detail {

inline Matrix fn_diag(const FnSpec& f, double Q, int dim, long long shift) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = Complex(f.eval(n + shift, Q), 0.0);
    return m;
}

}  // namespace detail

// The lowering parts of X and P, the remainder operators of the permutation
// identities below:  a~ = sqrt(hbar/2) Q^N a-,  a^ = i sqrt(hbar/2) Q^2N a-.
inline Matrix a_tilde(const TruncatedRep& rep) {
    const double Q = rep.params.Q();
    const double s = std::sqrt(rep.params.hbar / 2.0);
    Matrix m = Matrix::Zero(rep.dim, rep.dim);
    for (int n = 0; n + 1 < rep.dim; ++n)
        m(n, n + 1) = s * checked_qpow(Q, n) * rep.lower_op(n, n + 1);
    return m;
}

inline Matrix a_hat(const TruncatedRep& rep) {
    const double Q = rep.params.Q();
    const double s = std::sqrt(rep.params.hbar / 2.0);
    Matrix m = Matrix::Zero(rep.dim, rep.dim);
    for (int n = 0; n + 1 < rep.dim; ++n)
        m(n, n + 1) = imag_unit * s * checked_qpow(Q, 2 * n) * rep.lower_op(n, n + 1);
    return m;
}

// Permuting a function of N through X leaves a lowering remainder:
//   F(N) X = X F(N+1) - [F(N+2) - F(N)] a~
inline double fn_x_residual(const TruncatedRep& rep, const FnSpec& f, int margin) {
    const double Q = rep.params.Q();
    const Matrix X = build_X(rep);
    const Matrix F0 = detail::fn_diag(f, Q, rep.dim, 0);
    const Matrix F1 = detail::fn_diag(f, Q, rep.dim, 1);
    const Matrix F2 = detail::fn_diag(f, Q, rep.dim, 2);
    return scaled_residual(F0 * X, X * F1 - (F2 - F0) * a_tilde(rep), margin);
}

// Same through P, with the opposite sign on the remainder:
//   F(N) P = P F(N+1) + [F(N+2) - F(N)] a^
inline double fn_p_residual(const TruncatedRep& rep, const FnSpec& f, int margin) {
    const double Q = rep.params.Q();
    const Matrix P = build_P(rep);
    const Matrix F0 = detail::fn_diag(f, Q, rep.dim, 0);
    const Matrix F1 = detail::fn_diag(f, Q, rep.dim, 1);
    const Matrix F2 = detail::fn_diag(f, Q, rep.dim, 2);
    return scaled_residual(F0 * P, P * F1 + (F2 - F0) * a_hat(rep), margin);
}

// Q^+N X - iP is a pure raising band and Q^-N X + iP a pure lowering band,
// so functions of N slide through them with a unit level shift:
//   F(N) (Q^(+/-N) X -/+ i P) = (Q^(+/-N) X -/+ i P) F(N +/- 1)
inline double ladder_shift_residual(const TruncatedRep& rep, const FnSpec& f, int sign,
                                    int margin) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const double Q = rep.params.Q();
    const int D = rep.dim;
    const PositionMomentumPair pair = build_xp(rep);
    const Matrix qn = diagonal_of(D, [&](int n) { return checked_qpow(Q, sign * n); });
    const Matrix M = qn * pair.X - static_cast<double>(sign) * (imag_unit * pair.P);
    const Matrix F0 = detail::fn_diag(f, Q, D, 0);
    const Matrix Fs = detail::fn_diag(f, Q, D, sign);
    return scaled_residual(F0 * M, M * Fs, margin);
}

// The remainder operators are insensitive to where the diagonal factor is
// written: sqrt(hbar/2) Q^N a- equals sqrt(hbar/2) a- Q^(N-1) entrywise
// (and Q^2N pairs with Q^2(N-1)).
inline double a_tilde_reorder_residual(const TruncatedRep& rep) {
    const double Q = rep.params.Q();
    const int D = rep.dim;
    const double s = std::sqrt(rep.params.hbar / 2.0);
    const Matrix qn1 = diagonal_of(D, [&](int n) { return checked_qpow(Q, n - 1); });
    const Matrix q2n1 = diagonal_of(D, [&](int n) { return checked_qpow(Q, 2 * (n - 1)); });
    const double r1 = scaled_residual(a_tilde(rep), s * (rep.lower_op * qn1), 0);
    const double r2 = scaled_residual(a_hat(rep), imag_unit * s * (rep.lower_op * q2n1), 0);
    return std::max(r1, r2);
}

// a- a~ = Q a~ a- and a- a^ = Q^2 a^ a-.
inline double a_tilde_commutation_residual(const TruncatedRep& rep, int margin) {
    const double Q = rep.params.Q();
    const Matrix at = a_tilde(rep), ah = a_hat(rep);
    const Matrix& am = rep.lower_op;
    const double r1 = scaled_residual(am * at, Q * (at * am), margin);
    const double r2 = scaled_residual(am * ah, (Q * Q) * (ah * am), margin);
    return std::max(r1, r2);
}

}  // namespace pqha
