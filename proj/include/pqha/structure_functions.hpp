#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pqha/common.hpp"

namespace pqha {

// Families of structure functions phi(n). A deformed oscillator is fixed by
// its phi: the ladder matrix elements are sqrt(phi(n)) and every bilinear
// identity reduces to statements about phi.
enum class DsfKind {
    Undeformed,      // phi(n) = n
    ScaledLinear,    // phi(n) = n / q
    SymmetricPQ,     // phi(n) = [n]_{q,p}
    NonstandardPQ,   // two-sided family below; realizes p XP - q PX = i hbar
    TwoSidedEqualGH, // equal-coefficient variant; phi(0) != 0 in general
    Custom,          // caller-supplied table
};

inline const char* dsf_kind_name(DsfKind k) {
    switch (k) {
        case DsfKind::Undeformed: return "undeformed";
        case DsfKind::ScaledLinear: return "scaled-linear";
        case DsfKind::SymmetricPQ: return "symmetric-pq";
        case DsfKind::NonstandardPQ: return "nonstandard-pq";
        case DsfKind::TwoSidedEqualGH: return "two-sided-equal-gh";
        case DsfKind::Custom: return "custom";
    }
    return "?";
}

inline std::optional<DsfKind> parse_dsf_kind(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "undeformed") return DsfKind::Undeformed;
    if (s == "scaled-linear") return DsfKind::ScaledLinear;
    if (s == "symmetric-pq") return DsfKind::SymmetricPQ;
    if (s == "nonstandard-pq") return DsfKind::NonstandardPQ;
    if (s == "two-sided-equal-gh") return DsfKind::TwoSidedEqualGH;
    if (s == "custom") return DsfKind::Custom;
    return std::nullopt;
}

// Two-parameter bracket [m]_{q,p} = (q^m - p^m) / (q - p), symmetric in p,q.
// Near q == p the quotient degenerates to the derivative limit m * q^(m-1).
inline double pq_number(int m, double q, double p) {
    if (std::abs(q - p) / std::max(std::abs(p), std::abs(q)) <= tol::degenerate)
        return static_cast<double>(m) * std::pow(q, m - 1);
    return (std::pow(q, m) - std::pow(p, m)) / (q - p);
}

namespace detail {

// sum_{k=0}^{terms-1} Q^k; the cancellation-free way to evaluate
// (Q^terms - 1)/(Q - 1), valid through Q == 1.
inline double geometric_sum(double Q, int terms) {
    double sum = 0.0, pw = 1.0;
    for (int k = 0; k < terms; ++k) {
        sum += pw;
        pw *= Q;
    }
    return sum;
}

// Authoritative form of the non-standard two-sided structure function.
// The bracket 1 + (Q^n - Q^(1-n))/(Q - 1) is evaluated as
// 1 + Q^(1-n) * sum_{k=0}^{2n-2} Q^k, which is exact at Q == 1 (value 2n)
// and free of the 0/0 the quotient form has there.
inline double nonstandard_dsf(int n, const DeformationParams& par) {
    if (n == 0) return 0.0;
    const double Q = par.Q();
    const double pref = 2.0 / (par.p * checked_qpow(Q, n) *
                               (1.0 + checked_qpow(Q, 2 * n - 2)) *
                               (1.0 + checked_qpow(Q, 2 * n)));
    const double bracket = 1.0 + checked_qpow(Q, 1 - n) * geometric_sum(Q, 2 * n - 1);
    return pref * bracket;
}

// Second printed form of the same function, kept for cross-checking: a
// prefactor in raw p,q powers times 1 + [2n-1]_{q,p} / (qp)^(n-1).
inline double nonstandard_dsf_alt(int n, const DeformationParams& par) {
    // at n = 0 the bracket is identically 1 + [-1]_{q,p} qp = 0
    if (n == 0) return 0.0;
    const double p = par.p, q = par.q;
    const double num = 2.0 * std::pow(q, -n) * std::pow(p, 5 * n - 3);
    const double den = (std::pow(q, 2 * n - 2) + std::pow(p, 2 * n - 2)) *
                       (std::pow(q, 2 * n) + std::pow(p, 2 * n));
    const double bracket = 1.0 + pq_number(2 * n - 1, q, p) * std::pow(q * p, 1 - n);
    return num / den * bracket;
}

// Equal-coefficient two-sided variant. Note the ratio here is p/q, the
// reciprocal of the convention used everywhere else; the closed form was
// derived in that orientation and is kept as written.
inline double two_sided_equal_gh_dsf(int n, const DeformationParams& par) {
    const double Q = par.q > 0 ? par.p / par.q : 0.0;
    const double T = 4.0 * Q * Q / (par.p * (1.0 + Q * Q) * (1.0 + Q * Q * Q));
    // (1 - Q^(2-2n)) / (1 - Q^2) degenerates to 1 - n at Q == 1
    double head;
    const double lnq = std::log(Q);
    if (std::abs(lnq) < 1e-12) {
        head = 1.0 - static_cast<double>(n);
    } else {
        head = -std::expm1((2.0 - 2.0 * n) * lnq) / -std::expm1(2.0 * lnq);
    }
    double tail = 0.0;
    const double q5 = 1.0 + std::pow(Q, 5);
    for (int j = 1; j <= n - 1; ++j)
        tail += q5 / (Q * Q * (1.0 + Q) + checked_qpow(Q, 2 * j) * q5);
    return T - 4.0 / (par.p * (1.0 + Q)) * (head + tail);
}

}  // namespace detail

// phi(n) for the selected family. Custom tables must be supplied and long
// enough; everything else is analytic in (p, q).
inline double eval_dsf(DsfKind kind, const DeformationParams& par, int n,
                       const std::vector<double>* table = nullptr) {
    if (n < 0) throw std::invalid_argument("structure functions are defined for n >= 0");
    par.validate();
    switch (kind) {
        case DsfKind::Undeformed:
            return static_cast<double>(n);
        case DsfKind::ScaledLinear:
            return static_cast<double>(n) / par.q;
        case DsfKind::SymmetricPQ:
            return n == 0 ? 0.0 : pq_number(n, par.q, par.p);
        case DsfKind::NonstandardPQ:
            return detail::nonstandard_dsf(n, par);
        case DsfKind::TwoSidedEqualGH:
            return detail::two_sided_equal_gh_dsf(n, par);
        case DsfKind::Custom:
            if (!table) throw MissingTable("custom structure function requested without a table");
            if (n >= static_cast<int>(table->size()))
                throw LengthMismatch("custom table has " + std::to_string(table->size()) +
                                     " entries, need phi(" + std::to_string(n) + ")");
            return (*table)[static_cast<size_t>(n)];
    }
    throw std::logic_error("unhandled structure function kind");
}

// Cross-check evaluation of the non-standard family through its second
// printed algebraic form.
inline double eval_nonstandard_alt(const DeformationParams& par, int n) {
    if (n < 0) throw std::invalid_argument("structure functions are defined for n >= 0");
    par.validate();
    return detail::nonstandard_dsf_alt(n, par);
}

// phi(n)! = phi(1) phi(2) ... phi(n); empty product for n == 0.
inline double dsf_factorial(DsfKind kind, const DeformationParams& par, int n,
                            const std::vector<double>* table = nullptr) {
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) prod *= eval_dsf(kind, par, k, table);
    return prod;
}

// Whether phi can serve as a Fock-space structure function on levels
// 0..n_max: phi(0) must vanish and phi(n) must be positive above it.
// Both findings are reported; callers decide which ones block them.
struct PhysicalityReport {
    double phi0 = 0.0;
    bool zero_ok = false;
    bool positive_ok = false;
    int first_nonpositive = -1;  // smallest n >= 1 with phi(n) <= 0, or -1
    bool pass() const { return zero_ok && positive_ok; }
};

inline PhysicalityReport validate_physical(DsfKind kind, const DeformationParams& par, int n_max,
                                           const std::vector<double>* table = nullptr) {
    PhysicalityReport rep;
    rep.phi0 = eval_dsf(kind, par, 0, table);
    rep.zero_ok = std::abs(rep.phi0) <= tol::zero;
    rep.positive_ok = true;
    for (int n = 1; n <= n_max; ++n) {
        if (!(eval_dsf(kind, par, n, table) > 0.0)) {
            rep.positive_ok = false;
            rep.first_nonpositive = n;
            break;
        }
    }
    return rep;
}

// Level-dependent coefficient pair (G(n), H(n)) of the two-sided bilinear
// identity. H multiplies the lowering-raising product and G the
// raising-lowering one: H(N) a-a+ - G(N) a+a- = 1 is the pairing under which
// the non-standard structure function closes the identity,
//   H(n) phi(n+1) - G(n) phi(n) = 1.
struct GHCoefficients {
    double G;
    double H;
};

inline GHCoefficients gh_coefficients(const DeformationParams& par, int n) {
    par.validate();
    const double Q = par.Q();
    const double q2n = checked_qpow(Q, 2 * n);
    return {0.5 * par.p * q2n * (1.0 + checked_qpow(Q, 2 * n - 2)),
            0.5 * par.q * q2n * (1.0 + checked_qpow(Q, 2 * n + 2))};
}

}  // namespace pqha
